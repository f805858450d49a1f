//! Enhanced level graphs and the graphs of principal-boundary configurations.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::signature::StratumSignature;

/// A zero or pole attached to a vertex, by sorted label and order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MarkedPoint {
    pub label: usize,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub name: String,
    pub genus: u32,
    pub level: i32,
    pub zeros: Vec<MarkedPoint>,
    pub poles: Vec<MarkedPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum EdgeKind {
    /// Joins a higher vertex to a lower one with enhancement `kappa >= 1`.
    Vertical { enhancement: u32 },
    /// Joins two vertices on the same level; each end is a simple pole.
    Horizontal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub name: String,
    /// Vertex index of the upper end (either end for horizontal edges).
    pub upper: usize,
    /// Vertex index of the lower end.
    pub lower: usize,
    pub kind: EdgeKind,
}

/// A level graph with genus and level on vertices and enhancements on vertical edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnhancedLevelGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

/// A single failed check of [`validate_level_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    LevelAboveZero { vertex: String, level: i32 },
    MissingLevel(i32),
    DanglingEdge { edge: String },
    EdgeLevels { edge: String },
    ZeroEnhancement { edge: String },
    VertexRelation { vertex: String, lhs: i64, rhs: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::LevelAboveZero { vertex, level } => write!(f, "vertex {vertex} has level {level} > 0"),
            Violation::MissingLevel(l) => write!(f, "no vertex on level {l}"),
            Violation::DanglingEdge { edge } => write!(f, "edge {edge} refers to a missing vertex"),
            Violation::EdgeLevels { edge } => write!(f, "edge {edge} has inconsistent end levels"),
            Violation::ZeroEnhancement { edge } => write!(f, "vertical edge {edge} has enhancement 0"),
            Violation::VertexRelation { vertex, lhs, rhs } => {
                write!(f, "vertex {vertex}: 2g-2 = {lhs} but orders and enhancements give {rhs}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid level graph: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct LevelGraphError(pub Vec<Violation>);

/// Checks level surjectivity onto `{0, -1, ..., -L}` and
/// `2g_v - 2 = sum a - sum b + sum_{upper ends}(kappa - 1) - sum_{lower ends}(kappa + 1)`
/// at every vertex, counting each horizontal half-edge as a simple pole.
pub fn validate_level_graph(g: &EnhancedLevelGraph) -> Result<(), LevelGraphError> {
    let mut violations = Vec::new();
    if g.vertices.is_empty() {
        return Err(LevelGraphError(vec![Violation::NoVertices]));
    }
    for v in &g.vertices {
        if v.level > 0 {
            violations.push(Violation::LevelAboveZero { vertex: v.name.clone(), level: v.level });
        }
    }
    let levels: BTreeSet<i32> = g.vertices.iter().map(|v| v.level).collect();
    let lowest = *levels.first().expect("non-empty");
    for l in lowest..=0 {
        if !levels.contains(&l) {
            violations.push(Violation::MissingLevel(l));
        }
    }
    let mut rhs: Vec<i64> = g
        .vertices
        .iter()
        .map(|v| {
            v.zeros.iter().map(|z| i64::from(z.order)).sum::<i64>()
                - v.poles.iter().map(|p| i64::from(p.order)).sum::<i64>()
        })
        .collect();
    for e in &g.edges {
        if e.upper >= g.vertices.len() || e.lower >= g.vertices.len() {
            violations.push(Violation::DanglingEdge { edge: e.name.clone() });
            continue;
        }
        let (top, bottom) = (&g.vertices[e.upper], &g.vertices[e.lower]);
        match e.kind {
            EdgeKind::Vertical { enhancement } => {
                if top.level <= bottom.level {
                    violations.push(Violation::EdgeLevels { edge: e.name.clone() });
                }
                if enhancement == 0 {
                    violations.push(Violation::ZeroEnhancement { edge: e.name.clone() });
                }
                rhs[e.upper] += i64::from(enhancement) - 1;
                rhs[e.lower] -= i64::from(enhancement) + 1;
            }
            EdgeKind::Horizontal => {
                if top.level != bottom.level {
                    violations.push(Violation::EdgeLevels { edge: e.name.clone() });
                }
                rhs[e.upper] -= 1;
                rhs[e.lower] -= 1;
            }
        }
    }
    for (v, &r) in g.vertices.iter().zip(&rhs) {
        let lhs = 2 * i64::from(v.genus) - 2;
        if lhs != r {
            violations.push(Violation::VertexRelation { vertex: v.name.clone(), lhs, rhs: r });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(LevelGraphError(violations))
    }
}

/// Deterministic DOT text: one rank line per level, enhancements as edge labels.
pub fn to_dot(g: &EnhancedLevelGraph) -> String {
    let mut out = String::from("graph level_graph {\n  rankdir=TB;\n");
    let levels: BTreeSet<i32> = g.vertices.iter().map(|v| v.level).collect();
    for &level in levels.iter().rev() {
        let nodes: Vec<String> = g
            .vertices
            .iter()
            .filter(|v| v.level == level)
            .map(|v| {
                let mut label = format!("{} g={}", v.name, v.genus);
                for z in &v.zeros {
                    write!(label, " z{}:{}", z.label + 1, z.order).expect("String write");
                }
                for p in &v.poles {
                    write!(label, " p{}:-{}", p.label + 1, p.order).expect("String write");
                }
                format!("\"{}\" [label=\"{label}\"];", v.name)
            })
            .collect();
        writeln!(out, "  {{ rank=same; /* level {level} */ {} }}", nodes.join(" ")).expect("String write");
    }
    for e in &g.edges {
        let (a, b) = (&g.vertices[e.upper].name, &g.vertices[e.lower].name);
        match e.kind {
            EdgeKind::Vertical { enhancement } => {
                writeln!(out, "  \"{a}\" -- \"{b}\" [label=\"{} k={enhancement}\"];", e.name).expect("String write")
            }
            EdgeKind::Horizontal => {
                writeln!(out, "  \"{a}\" -- \"{b}\" [label=\"{}\", style=dashed];", e.name).expect("String write")
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Saddle connections joining two distinct zeros.
///
/// Region `i` lies between the `i`-th and `(i+1)`-th saddle connection and
/// holds the zeros `zero_parts[i]` and poles `pole_parts[i]` (sorted labels).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationI {
    /// Labels of the two joined zeros.
    pub joined: (usize, usize),
    pub c: Vec<u32>,
    pub d: Vec<u32>,
    pub zero_parts: Vec<Vec<usize>>,
    pub pole_parts: Vec<Vec<usize>>,
}

/// Saddle connections joining the single zero to itself.
///
/// `c`, `d` and `pole_parts[1..]` describe the regions with a figure-eight
/// boundary; `pole_parts[0]` holds the poles of the region bounded by the
/// first and last saddle connection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationII {
    pub c: Vec<u32>,
    pub d: Vec<u32>,
    pub q1: u32,
    pub q2: u32,
    pub pole_parts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("configuration does not match the signature: {0}")]
    Mismatch(String),
    #[error("region {region} has genus {twice}/2, which is not a non-negative integer")]
    BadGenus { region: usize, twice: i64 },
    #[error("Q1 = {q1} and Q2 = {q2}: one vanishes without the other")]
    MixedQ { q1: u32, q2: u32 },
    #[error(transparent)]
    Invalid(#[from] LevelGraphError),
}

fn points(labels: &[usize], orders: &[u32]) -> Vec<MarkedPoint> {
    labels.iter().map(|&label| MarkedPoint { label, order: orders[label] }).collect()
}

fn check_partition(parts: &[Vec<usize>], expected: impl Iterator<Item = usize>, what: &str) -> Result<(), ConfigError> {
    let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
    all.sort_unstable();
    let expected: Vec<usize> = expected.collect();
    if all == expected {
        Ok(())
    } else {
        Err(ConfigError::Mismatch(format!("{what} parts {all:?} do not partition {expected:?}")))
    }
}

fn half_genus(region: usize, twice: i64) -> Result<u32, ConfigError> {
    if twice < 0 || twice % 2 != 0 {
        Err(ConfigError::BadGenus { region, twice })
    } else {
        Ok((twice / 2) as u32)
    }
}

fn sum_orders(labels: &[usize], orders: &[u32]) -> i64 {
    labels.iter().map(|&l| i64::from(orders[l])).sum()
}

/// The two-level graph of a type I configuration.
///
/// A region with no zeros, genus 0 and a single pole is a polar domain; its
/// pole moves to the bottom vertex and the region gets no vertex.
pub fn graph_of_config_i(f: &ConfigurationI, sig: &StratumSignature) -> Result<EnhancedLevelGraph, ConfigError> {
    let a = sig.zero_orders();
    let b = sig.pole_orders();
    let k = f.c.len();
    let (z1, z2) = f.joined;
    if z1 == z2 || z1 >= a.len() || z2 >= a.len() {
        return Err(ConfigError::Mismatch("joined zeros must be two distinct zeros".into()));
    }
    if k == 0 || f.d.len() != k || f.zero_parts.len() != k || f.pole_parts.len() != k {
        return Err(ConfigError::Mismatch("C, D and the parts need one entry per region".into()));
    }
    if f.c.iter().chain(&f.d).any(|&x| x == 0) {
        return Err(ConfigError::Mismatch("angles must be positive".into()));
    }
    if f.c.iter().sum::<u32>() != a[z1] + 1 || f.d.iter().sum::<u32>() != a[z2] + 1 {
        return Err(ConfigError::Mismatch("sum C = a1 + 1 and sum D = a2 + 1 must hold".into()));
    }
    check_partition(&f.zero_parts, (0..a.len()).filter(|&z| z != z1 && z != z2), "zero")?;
    check_partition(&f.pole_parts, 0..b.len(), "pole")?;

    let mut bottom = Vertex {
        name: "v-1".into(),
        genus: 0,
        level: -1,
        zeros: points(&[z1.min(z2), z1.max(z2)], a),
        poles: Vec::new(),
    };
    let mut top = Vec::new();
    for i in 0..k {
        let twice = sum_orders(&f.zero_parts[i], a) - sum_orders(&f.pole_parts[i], b) + i64::from(f.c[i] + f.d[i]);
        let genus = half_genus(i + 1, twice)?;
        if f.zero_parts[i].is_empty() && genus == 0 && f.pole_parts[i].len() == 1 {
            bottom.poles.extend(points(&f.pole_parts[i], b));
        } else {
            top.push((i, genus));
        }
    }
    bottom.poles.sort_by_key(|p| p.label);
    let mut vertices = vec![bottom];
    let mut edges = Vec::new();
    for (i, genus) in top {
        vertices.push(Vertex {
            name: format!("v{}", i + 1),
            genus,
            level: 0,
            zeros: points(&f.zero_parts[i], a),
            poles: points(&f.pole_parts[i], b),
        });
        edges.push(Edge {
            name: format!("e{}", i + 1),
            upper: vertices.len() - 1,
            lower: 0,
            kind: EdgeKind::Vertical { enhancement: f.c[i] + f.d[i] - 1 },
        });
    }
    finish(vertices, edges)
}

/// The graph of a type II configuration on a single-zero stratum.
///
/// With `Q1 = Q2 = 0` the bottom vertex carries a horizontal self-edge; with
/// both positive a top vertex `v0` is joined to it by two edges of
/// enhancements `Q1` and `Q2`.
pub fn graph_of_config_ii(f: &ConfigurationII, sig: &StratumSignature) -> Result<EnhancedLevelGraph, ConfigError> {
    let a = sig.zero_orders();
    let b = sig.pole_orders();
    if a.len() != 1 {
        return Err(ConfigError::Mismatch("type II needs a single-zero stratum".into()));
    }
    if (f.q1 == 0) != (f.q2 == 0) {
        return Err(ConfigError::MixedQ { q1: f.q1, q2: f.q2 });
    }
    let regions = f.c.len();
    if f.d.len() != regions || f.pole_parts.len() != regions + 1 {
        return Err(ConfigError::Mismatch("C and D need one entry per region, parts one more".into()));
    }
    if f.c.iter().chain(&f.d).any(|&x| x == 0) {
        return Err(ConfigError::Mismatch("angles must be positive".into()));
    }
    let angle_sum: u32 = f.c.iter().zip(&f.d).map(|(c, d)| c + d).sum::<u32>() + f.q1 + f.q2;
    if angle_sum != a[0] {
        return Err(ConfigError::Mismatch(format!("angles sum to {angle_sum}, zero order is {}", a[0])));
    }
    check_partition(&f.pole_parts, 0..b.len(), "pole")?;
    if f.q1 == 0 && !f.pole_parts[0].is_empty() {
        return Err(ConfigError::Mismatch("with Q1 = Q2 = 0 the outer region is a cylinder and holds no poles".into()));
    }

    let mut bottom = Vertex { name: "v-1".into(), genus: 0, level: -1, zeros: points(&[0], a), poles: Vec::new() };
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut top = Vec::new();
    for i in 0..regions {
        let parts = &f.pole_parts[i + 1];
        let genus = half_genus(i + 1, i64::from(f.c[i] + f.d[i]) - sum_orders(parts, b))?;
        if genus == 0 && parts.len() == 1 {
            bottom.poles.extend(points(parts, b));
        } else {
            top.push((i, genus));
        }
    }
    bottom.poles.sort_by_key(|p| p.label);
    vertices.push(bottom);
    if f.q1 == 0 {
        edges.push(Edge { name: "f".into(), upper: 0, lower: 0, kind: EdgeKind::Horizontal });
    } else {
        let genus = half_genus(0, i64::from(f.q1 + f.q2) - sum_orders(&f.pole_parts[0], b))?;
        vertices.push(Vertex {
            name: "v0".into(),
            genus,
            level: 0,
            zeros: Vec::new(),
            poles: points(&f.pole_parts[0], b),
        });
        for (name, q) in [("f1", f.q1), ("f2", f.q2)] {
            edges.push(Edge { name: name.into(), upper: 1, lower: 0, kind: EdgeKind::Vertical { enhancement: q } });
        }
    }
    for (i, genus) in top {
        vertices.push(Vertex {
            name: format!("v{}", i + 1),
            genus,
            level: 0,
            zeros: Vec::new(),
            poles: points(&f.pole_parts[i + 1], b),
        });
        edges.push(Edge {
            name: format!("e{}", i + 1),
            upper: vertices.len() - 1,
            lower: 0,
            kind: EdgeKind::Vertical { enhancement: f.c[i] + f.d[i] - 1 },
        });
    }
    finish(vertices, edges)
}

/// Normalizes levels so the highest is 0 and validates.
///
/// When every region is a polar domain only the bottom vertex remains and
/// the graph has a single level.
fn finish(mut vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<EnhancedLevelGraph, ConfigError> {
    let top = vertices.iter().map(|v| v.level).max().unwrap_or(0);
    for v in &mut vertices {
        v.level -= top;
    }
    let graph = EnhancedLevelGraph { vertices, edges };
    validate_level_graph(&graph)?;
    Ok(graph)
}
