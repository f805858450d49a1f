//! Combinatorial engine for connected components of residueless strata of
//! meromorphic differentials.
//!
//! The genus-one single-zero boundary is represented by exact discrete data
//! ([`TwoLevelDatum`]). Boundary moves connect data lying in the same
//! connected component, so exhaustive enumeration plus union-find over the
//! move graph recovers the components of a stratum. The result can be
//! compared with the closed-form [`classify`].

pub mod arith;
pub mod classify;
pub mod datum;
pub mod enumerate;
pub mod graph;
pub mod hyperelliptic;
pub mod level_graph;
pub mod moves;
pub mod profile;
pub mod prong;
pub mod signature;

pub use classify::{
    break_zero_rotation, bubble_spin, classify, genus1_spin_from_rotation, normalize_bubble_param, spin_parity,
    Classification, ClassifyError, NonHyperelliptic,
};
pub use datum::{make_datum, DatumError, DatumJson, HorizontalDatum, ParallelClasses, TwoLevelDatum};
pub use enumerate::{battery_signatures, enumerate_boundary, EnumerationError, DEFAULT_MAX_RAW};
pub use graph::{
    build_move_graph, components, verify, ComponentSummary, GraphError, MoveGraph, VerifyError, VerifyReport,
    VerifyStatus, WitnessPair,
};
pub use hyperelliptic::hyperelliptic_boundary_profile;
pub use level_graph::{
    graph_of_config_i, graph_of_config_ii, to_dot, validate_level_graph, ConfigError, ConfigurationI, ConfigurationII,
    Edge, EdgeKind, EnhancedLevelGraph, LevelGraphError, MarkedPoint, Vertex, Violation,
};
pub use moves::{
    adjust_pair, apply_raw, insert_pole, recovers_source, t1_move, t2_move, trace, Direction, MoveError, MoveKind,
    MoveOutcome,
};
pub use profile::{enumerate_profiles, RamificationProfile};
pub use prong::{prong_class_count, ProngClass};
pub use signature::{SignatureError, StratumSignature};
