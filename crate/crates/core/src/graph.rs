//! The move graph on canonical boundary data, its connected components, and
//! verification against the closed-form classification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, Classification, ClassifyError};
use crate::datum::{DatumJson, DatumKey, TwoLevelDatum};
use crate::enumerate::{enumerate_boundary, EnumerationError};
use crate::hyperelliptic::hyperelliptic_boundary_profile;
use crate::moves::{apply_raw, MoveError, MoveKind};
use crate::profile::RamificationProfile;
use crate::signature::StratumSignature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{kind} at {element:?} from {from} reached {to}, which is not in the enumerated set")]
    MissingTarget { kind: MoveKind, element: (u32, u32), from: String, to: String },
    #[error("{kind} at {element:?} changed the rotation number from {before} to {after} on {from}")]
    RotationChanged { kind: MoveKind, element: (u32, u32), from: String, before: u32, after: u32 },
    #[error("component {id} mixes rotation numbers {rotations:?}")]
    RotationNotConstant { id: usize, rotations: Vec<u32> },
    #[error("component {id} matches several ramification profiles: {profiles}")]
    ProfileConflict { id: usize, profiles: String },
}

/// Undirected graph whose nodes are canonical data and whose edges are moves.
#[derive(Debug, Clone)]
pub struct MoveGraph {
    pub data: Vec<TwoLevelDatum>,
    /// Sorted, deduplicated pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

/// Connects every datum to the results of `T1` and `T2` at every member of its
/// prong class.
pub fn build_move_graph(data: Vec<TwoLevelDatum>) -> Result<MoveGraph, GraphError> {
    let index: HashMap<DatumKey, usize> = data.iter().enumerate().map(|(i, x)| (x.key(), i)).collect();
    let per_node: Vec<Vec<(usize, usize)>> = data
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let rotation = x.rotation_number();
            let mut edges = Vec::new();
            for element in x.class_orbit() {
                for kind in [MoveKind::T1, MoveKind::T2] {
                    let raw = (i64::from(element.0), i64::from(element.1));
                    let target = match apply_raw(kind, x, raw) {
                        Ok(outcome) => outcome.datum.canonical_form(),
                        Err(MoveError::Horizontal { .. }) => continue,
                        Err(e) => unreachable!("moves at class members are defined: {e}"),
                    };
                    let Some(&j) = index.get(&target.key()) else {
                        return Err(GraphError::MissingTarget {
                            kind,
                            element,
                            from: x.to_string(),
                            to: target.to_string(),
                        });
                    };
                    let after = target.rotation_number();
                    if after != rotation {
                        return Err(GraphError::RotationChanged {
                            kind,
                            element,
                            from: x.to_string(),
                            before: rotation,
                            after,
                        });
                    }
                    if i != j {
                        edges.push((i.min(j), i.max(j)));
                    }
                }
            }
            Ok(edges)
        })
        .collect::<Result<_, _>>()?;
    let mut edges: Vec<(usize, usize)> = per_node.into_iter().flatten().collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(MoveGraph { data, edges })
}

impl MoveGraph {
    /// Component index of every node, numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut sets = DisjointSets::new(self.data.len());
        for &(i, j) in &self.edges {
            sets.union(i, j);
        }
        let mut label_of_root = HashMap::new();
        (0..self.data.len())
            .map(|i| {
                let root = sets.find(i);
                let next = label_of_root.len();
                *label_of_root.entry(root).or_insert(next)
            })
            .collect()
    }

    /// DOT rendering: one node per datum labeled by `label`, filled by rotation number.
    pub fn to_dot(&self, label: impl Fn(&TwoLevelDatum) -> String) -> String {
        const PALETTE: [&str; 8] =
            ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"];
        let rotations: BTreeSet<u32> = self.data.iter().map(TwoLevelDatum::rotation_number).collect();
        let color = |r: u32| PALETTE[rotations.iter().position(|&x| x == r).unwrap_or(0) % PALETTE.len()];
        let mut out = String::from("graph moves {\n  node [style=filled];\n");
        for (i, x) in self.data.iter().enumerate() {
            let r = x.rotation_number();
            writeln!(out, "  n{i} [label=\"{}\", tooltip=\"{x} r={r}\", fillcolor=\"{}\"];", label(x), color(r))
                .expect("writing to a String cannot fail");
        }
        for &(i, j) in &self.edges {
            writeln!(out, "  n{i} -- n{j};").expect("writing to a String cannot fail");
        }
        out.push_str("}\n");
        out
    }
}

/// Union-find with path halving and union by size.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// One connected component of the move graph.
#[derive(Debug, Clone)]
pub struct ComponentSummary {
    pub id: usize,
    pub data_count: usize,
    pub rotation: u32,
    pub hyperelliptic: bool,
    pub profile: Option<RamificationProfile>,
    /// Every member satisfies the prong condition yet no member matches a
    /// normal form; signals a matcher gap rather than a non-hyperelliptic component.
    pub profile_unresolved: bool,
    /// The smallest member in canonical order.
    pub sample: TwoLevelDatum,
    /// Node indices of the members in the graph.
    pub members: Vec<usize>,
}

#[derive(Serialize)]
struct ComponentJson<'a> {
    id: usize,
    kind: &'static str,
    rotation: u32,
    profile: Option<&'a RamificationProfile>,
    profile_unresolved: bool,
    data_count: usize,
    sample: DatumJson,
}

impl Serialize for ComponentSummary {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComponentJson {
            id: self.id,
            kind: self.kind(),
            rotation: self.rotation,
            profile: self.profile.as_ref(),
            profile_unresolved: self.profile_unresolved,
            data_count: self.data_count,
            sample: self.sample.to_json(),
        }
        .serialize(serializer)
    }
}

impl ComponentSummary {
    pub fn kind(&self) -> &'static str {
        if self.hyperelliptic {
            "hyperelliptic"
        } else {
            "non-hyperelliptic"
        }
    }
}

/// Summaries of the connected components, sorted by
/// `(hyperelliptic, rotation, profile)` and numbered in that order.
pub fn components(graph: &MoveGraph) -> Result<Vec<ComponentSummary>, GraphError> {
    let labels = graph.component_labels();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &label) in labels.iter().enumerate() {
        groups.entry(label).or_default().push(i);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (label, members) in groups {
        let data: Vec<&TwoLevelDatum> = members.iter().map(|&i| &graph.data[i]).collect();
        let rotations: BTreeSet<u32> = data.iter().map(|x| x.rotation_number()).collect();
        if rotations.len() != 1 {
            return Err(GraphError::RotationNotConstant { id: label, rotations: rotations.into_iter().collect() });
        }
        let hyperelliptic = data.iter().all(|x| x.pr_condition());
        let profiles: BTreeSet<RamificationProfile> =
            data.iter().filter_map(|x| hyperelliptic_boundary_profile(x)).collect();
        if profiles.len() > 1 {
            let listed: Vec<String> = profiles.iter().map(ToString::to_string).collect();
            return Err(GraphError::ProfileConflict { id: label, profiles: listed.join(", ") });
        }
        let profile = if hyperelliptic { profiles.into_iter().next() } else { None };
        let sample = data.iter().min_by_key(|x| x.key()).expect("components are non-empty");
        out.push(ComponentSummary {
            id: 0,
            data_count: members.len(),
            rotation: *rotations.first().expect("one rotation"),
            hyperelliptic,
            profile_unresolved: hyperelliptic && profile.is_none(),
            profile,
            sample: (*sample).clone(),
            members,
        });
    }
    out.sort_by(|a, b| {
        (a.hyperelliptic, a.rotation, &a.profile, a.sample.key()).cmp(&(
            b.hyperelliptic,
            b.rotation,
            &b.profile,
            b.sample.key(),
        ))
    });
    for (id, c) in out.iter_mut().enumerate() {
        c.id = id;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum VerifyStatus {
    Ok,
    Mismatch,
}

/// Two components the classification expects to be one, each given by its sample.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessPair {
    pub rotation: u32,
    pub first_component: usize,
    pub second_component: usize,
    pub first: DatumJson,
    pub second: DatumJson,
}

/// Observed components compared with the closed-form prediction.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub signature: StratumSignature,
    pub status: VerifyStatus,
    pub expected: Classification,
    pub observed: Vec<ComponentSummary>,
    pub differences: Vec<String>,
    pub witnesses: Vec<WitnessPair>,
}

impl VerifyReport {
    /// One-line summary such as `OK: 2 components (1 hyp r=3, 1 non-hyp r=1)`.
    pub fn summary_line(&self) -> String {
        let observed = describe_groups(self.observed.iter().map(|c| (c.hyperelliptic, Some(c.rotation))));
        match self.status {
            VerifyStatus::Ok => format!("OK: {} components ({observed})", self.observed.len()),
            VerifyStatus::Mismatch => {
                let expected = describe_groups(
                    self.expected.hyperelliptic.iter().map(|_| (true, None)).chain(
                        self.expected
                            .non_hyperelliptic
                            .iter()
                            .flat_map(|e| std::iter::repeat_n((false, e.rotation), e.count as usize)),
                    ),
                );
                format!(
                    "MISMATCH: {} components ({observed}); expected {} ({expected})",
                    self.observed.len(),
                    self.expected.total()
                )
            }
        }
    }
}

fn describe_groups(items: impl Iterator<Item = (bool, Option<u32>)>) -> String {
    let mut groups: BTreeMap<(bool, Option<u32>), usize> = BTreeMap::new();
    for item in items {
        *groups.entry((!item.0, item.1)).or_default() += 1;
    }
    let parts: Vec<String> = groups
        .into_iter()
        .map(|((non_hyp, r), k)| {
            let kind = if non_hyp { "non-hyp" } else { "hyp" };
            match r {
                Some(r) => format!("{k} {kind} r={r}"),
                None => format!("{k} {kind}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

/// Enumerates, connects and compares one genus-one single-zero stratum.
pub fn verify(sig: &StratumSignature, max_raw: u64) -> Result<VerifyReport, VerifyError> {
    let expected = classify(sig)?;
    let data = enumerate_boundary(sig, max_raw)?;
    let graph = build_move_graph(data)?;
    let observed = components(&graph)?;
    Ok(compare(expected, observed))
}

/// Compares observed components with a classification.
pub fn compare(expected: Classification, observed: Vec<ComponentSummary>) -> VerifyReport {
    let mut differences = Vec::new();
    let mut witnesses = Vec::new();

    let expected_profiles: BTreeSet<&RamificationProfile> = expected.hyperelliptic.iter().collect();
    let mut seen_profiles: BTreeMap<&RamificationProfile, &ComponentSummary> = BTreeMap::new();
    for c in observed.iter().filter(|c| c.hyperelliptic) {
        match &c.profile {
            None => differences.push(format!("component {} is hyperelliptic but its profile is unresolved", c.id)),
            Some(p) if !expected_profiles.contains(p) => {
                differences.push(format!("component {} has profile {p}, which the classification does not list", c.id))
            }
            Some(p) => {
                if let Some(first) = seen_profiles.get(p) {
                    differences.push(format!("profile {p} is shared by components {} and {}", first.id, c.id));
                    witnesses.push(witness(first, c));
                } else {
                    seen_profiles.insert(p, c);
                }
            }
        }
    }
    for p in &expected.hyperelliptic {
        if !seen_profiles.contains_key(p) {
            differences.push(format!("no hyperelliptic component has profile {p}"));
        }
    }

    let mut by_rotation: BTreeMap<u32, Vec<&ComponentSummary>> = BTreeMap::new();
    for c in observed.iter().filter(|c| !c.hyperelliptic) {
        by_rotation.entry(c.rotation).or_default().push(c);
    }
    let rotations: BTreeSet<u32> =
        by_rotation.keys().copied().chain(expected.non_hyperelliptic.iter().filter_map(|e| e.rotation)).collect();
    for r in rotations {
        let found = by_rotation.get(&r).map_or(&[][..], Vec::as_slice);
        let want = expected.count_at_rotation(r) as usize;
        if found.len() != want {
            differences
                .push(format!("rotation {r}: observed {} non-hyperelliptic components, expected {want}", found.len()));
        }
        if found.len() > want.max(1) {
            for extra in &found[want.max(1)..] {
                witnesses.push(witness(found[0], extra));
            }
        }
    }

    let status = if differences.is_empty() { VerifyStatus::Ok } else { VerifyStatus::Mismatch };
    VerifyReport { signature: expected.signature.clone(), status, expected, observed, differences, witnesses }
}

fn witness(a: &ComponentSummary, b: &ComponentSummary) -> WitnessPair {
    WitnessPair {
        rotation: a.rotation,
        first_component: a.id,
        second_component: b.id,
        first: a.sample.to_json(),
        second: b.sample.to_json(),
    }
}
