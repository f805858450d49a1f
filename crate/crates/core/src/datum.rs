//! Two-level and horizontal boundary data of genus-one single-zero strata.
//!
//! A two-level datum is stored in "position form": `tau[i]` is the pole
//! sitting in region `i + 1`, the first `t` regions form the top level, and
//! the angle vector `C` is indexed by pole label. Partial sums `c_i`, `d_i`
//! run over regions in order.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd_all, reduce};
use crate::prong::{ProngClass, ProngJson};
use crate::signature::StratumSignature;

/// Reasons a datum cannot be built.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatumError {
    #[error("boundary data exist only for genus-one single-zero strata, got {0}")]
    UnsupportedStratum(String),
    #[error("top pole count t={t} must lie in 1..={n}")]
    TopCount { t: usize, n: usize },
    #[error("tau is not a permutation of the {n} pole labels")]
    NotPermutation { n: usize },
    #[error("angle vector has {got} entries, expected {n}")]
    AngleLength { got: usize, n: usize },
    #[error("C for pole {label} is {value}, outside 1..={max}")]
    AngleOutOfRange { label: usize, value: u32, max: u32 },
    #[error("malformed datum JSON: {0}")]
    Json(String),
}

/// The boundary point `X(t, tau, C, Pr)`.
#[derive(Clone)]
pub struct TwoLevelDatum {
    sig: StratumSignature,
    t: usize,
    tau: Vec<usize>,
    c: Vec<u32>,
    pr: ProngClass,
    cs: Vec<u32>,
    ds: Vec<u32>,
}

/// Total-order key identifying a datum representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DatumKey {
    pub t: usize,
    pub tau: Vec<usize>,
    pub c: Vec<u32>,
    pub v: u32,
}

fn check_stratum(sig: &StratumSignature) -> Result<(), DatumError> {
    if sig.is_genus_one_single_zero() && sig.zero_orders()[0] > 0 {
        Ok(())
    } else {
        Err(DatumError::UnsupportedStratum(sig.to_string()))
    }
}

fn check_permutation(tau: &[usize], n: usize) -> Result<(), DatumError> {
    let mut seen = vec![false; n];
    if tau.len() != n {
        return Err(DatumError::NotPermutation { n });
    }
    for &p in tau {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(DatumError::NotPermutation { n });
        }
    }
    Ok(())
}

fn check_angles(sig: &StratumSignature, c: &[u32]) -> Result<(), DatumError> {
    let b = sig.pole_orders();
    if c.len() != b.len() {
        return Err(DatumError::AngleLength { got: c.len(), n: b.len() });
    }
    for (label, (&ci, &bi)) in c.iter().zip(b).enumerate() {
        if ci < 1 || ci > bi - 1 {
            return Err(DatumError::AngleOutOfRange { label, value: ci, max: bi - 1 });
        }
    }
    Ok(())
}

/// Validates and builds a datum; `raw_pr` may be any member of the class,
/// including negative or unreduced coordinates.
///
/// `tau` lists the pole (sorted 0-based label) in each region; `c_vec` is
/// indexed by pole label.
pub fn make_datum(
    sig: &StratumSignature,
    t: usize,
    tau: &[usize],
    c_vec: &[u32],
    raw_pr: (i64, i64),
) -> Result<TwoLevelDatum, DatumError> {
    check_stratum(sig)?;
    let n = sig.n();
    if t < 1 || t > n {
        return Err(DatumError::TopCount { t, n });
    }
    check_permutation(tau, n)?;
    check_angles(sig, c_vec)?;
    Ok(TwoLevelDatum::assemble(sig.clone(), t, tau.to_vec(), c_vec.to_vec(), raw_pr))
}

impl TwoLevelDatum {
    /// Builds a datum from fields already known to be valid.
    pub(crate) fn assemble(sig: StratumSignature, t: usize, tau: Vec<usize>, c: Vec<u32>, raw_pr: (i64, i64)) -> Self {
        let b = sig.pole_orders();
        let mut cs = Vec::with_capacity(tau.len() + 1);
        let mut ds = Vec::with_capacity(tau.len() + 1);
        cs.push(0);
        ds.push(0);
        for &p in &tau {
            cs.push(cs.last().unwrap() + c[p]);
            ds.push(ds.last().unwrap() + b[p] - c[p]);
        }
        let pr = ProngClass::new(cs[t], ds[t], raw_pr.0, raw_pr.1);
        TwoLevelDatum { sig, t, tau, c, pr, cs, ds }
    }

    pub fn sig(&self) -> &StratumSignature {
        &self.sig
    }

    /// Number of poles on the top level.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    /// Pole label in each region, top regions first.
    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Angle `C_i` for each pole label.
    pub fn c_vec(&self) -> &[u32] {
        &self.c
    }

    /// Complementary angle `D_i = b_i - C_i` of a pole label.
    pub fn d_of(&self, label: usize) -> u32 {
        self.sig.pole_orders()[label] - self.c[label]
    }

    pub fn pr(&self) -> ProngClass {
        self.pr
    }

    /// Partial sums `c_0..c_n` over regions.
    pub fn c_prefix(&self) -> &[u32] {
        &self.cs
    }

    /// Partial sums `d_0..d_n` over regions.
    pub fn d_prefix(&self) -> &[u32] {
        &self.ds
    }

    pub fn q1(&self) -> u32 {
        self.cs[self.t]
    }

    pub fn q2(&self) -> u32 {
        self.ds[self.t]
    }

    /// Members of the prong class, starting at `(0, v)`.
    pub fn class_orbit(&self) -> Vec<(u32, u32)> {
        self.pr.orbit()
    }

    pub fn key(&self) -> DatumKey {
        DatumKey { t: self.t, tau: self.tau.clone(), c: self.c.clone(), v: self.pr.rep().1 }
    }

    /// Relabels the top saddle connections so region `k + 1` becomes the first.
    pub fn shifted(&self, k: usize) -> TwoLevelDatum {
        let (u, v) = self.shift_element(k, (0, i64::from(self.pr.rep().1)));
        let mut tau = Vec::with_capacity(self.n());
        tau.extend_from_slice(&self.tau[k..self.t]);
        tau.extend_from_slice(&self.tau[..k]);
        tau.extend_from_slice(&self.tau[self.t..]);
        TwoLevelDatum::assemble(self.sig.clone(), self.t, tau, self.c.clone(), (u, v))
    }

    /// Where a prong-matching of this representation lands after `shifted(k)`.
    pub fn shift_element(&self, k: usize, (u, v): (i64, i64)) -> (i64, i64) {
        (u - i64::from(self.cs[k]), v - i64::from(self.ds[k]))
    }

    /// Exchanges the two nodes: both blocks reverse, `C` and `D` trade roles
    /// and `(u, v)` becomes `(-v, -u)`.
    pub fn node_swapped(&self) -> TwoLevelDatum {
        let mut tau: Vec<usize> = self.tau[..self.t].iter().rev().copied().collect();
        tau.extend(self.tau[self.t..].iter().rev());
        let c: Vec<u32> = (0..self.n()).map(|p| self.d_of(p)).collect();
        let v = i64::from(self.pr.rep().1);
        TwoLevelDatum::assemble(self.sig.clone(), self.t, tau, c, (-v, 0))
    }

    /// All `2t` representations of the same boundary point.
    pub fn symmetry_images(&self) -> Vec<TwoLevelDatum> {
        let swapped = self.node_swapped();
        (0..self.t).map(|k| self.shifted(k)).chain((0..self.t).map(|k| swapped.shifted(k))).collect()
    }

    /// The representation with the smallest key among all symmetry images.
    pub fn canonical_form(&self) -> TwoLevelDatum {
        self.symmetry_images().into_iter().min_by(|a, b| a.key().cmp(&b.key())).expect("t >= 1")
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form().key() == self.key()
    }

    /// `gcd(d, Q1, c_n + v)` with `(0, v)` the class representative and `c_n`
    /// the sum of all angles.
    pub fn rotation_number(&self) -> u32 {
        let all_c: u32 = self.c.iter().sum();
        gcd_all([self.sig.gcd_d(), self.q1(), all_c + self.pr.rep().1])
    }

    /// True iff, in both node labelings, every class member `(u, v)` with `u`
    /// among `c_0..c_{t-1}` has `v` among `d_0..d_{t-1}`.
    ///
    /// Cyclic relabeling preserves the condition but exchanging the nodes
    /// turns it into its converse, so both directions are checked.
    pub fn pr_condition(&self) -> bool {
        let top_c = &self.cs[..self.t];
        let top_d = &self.ds[..self.t];
        self.class_orbit().into_iter().all(|(u, v)| top_c.contains(&u) == top_d.contains(&v))
    }

    /// Indices `(Q1 + d_n - v, Q1)` of the two plumbed saddle connections,
    /// where `(0, v)` is the class representative.
    pub fn plumbed_indices(&self) -> (u32, u32) {
        let v = self.pr.rep().1;
        (self.q1() + self.ds[self.n()] - v, self.q1())
    }

    /// A class member `(u, v)` and region index `i` with
    /// `c_{i-1} < u <= c_i`, `d_i <= v < d_{i+1}`, or the node-swapped
    /// condition `c_i < u <= c_{i+1}`, `d_{i-1} <= v < d_i`.
    ///
    /// `u` is read in `1..=Q1` so that the last block is reachable.
    pub fn multiplicity_one_witness(&self) -> Option<(u32, u32, usize)> {
        let (cs, ds) = (&self.cs, &self.ds);
        for (u, v) in self.class_orbit() {
            let u = if u == 0 { self.q1() } else { u };
            for i in 1..self.t {
                if cs[i - 1] < u && u <= cs[i] && ds[i] <= v && v < ds[i + 1] {
                    return Some((u % self.q1(), v, i));
                }
                if cs[i] < u && u <= cs[i + 1] && ds[i - 1] <= v && v < ds[i] {
                    return Some((u % self.q1(), v, i));
                }
            }
        }
        None
    }

    /// Relabels so a class member lies in the last top block.
    ///
    /// Returns the relabeled datum, the member with `u` in `c_{t-1} < u <= Q1`,
    /// and the block index `j` with `d_{j-1} <= v < d_j`.
    pub fn normalize_at(&self, (u, v): (i64, i64)) -> (TwoLevelDatum, (u32, u32), usize) {
        let q1 = self.q1();
        let ur = match reduce(u, q1) {
            0 => q1,
            r => r,
        };
        let k = (1..=self.t).find(|&k| self.cs[k - 1] < ur && ur <= self.cs[k]).expect("u lies in some block");
        let (y, (u2, v2)) = if k < self.t {
            (self.shifted(k), self.shift_element(k, (i64::from(ur), v)))
        } else {
            (self.clone(), (i64::from(ur), v))
        };
        let u2 = match reduce(u2, q1) {
            0 => q1,
            r => r,
        };
        let v2 = reduce(v2, y.q2());
        let j = (1..=y.t).find(|&j| y.ds[j - 1] <= v2 && v2 < y.ds[j]).expect("v lies in some block");
        (y, (u2, v2), j)
    }

    /// The three families of parallel plumbed saddle connections at a class member.
    pub fn parallel_classes(&self, element: (i64, i64)) -> Result<ParallelClasses, NotInClass> {
        if !self.pr.contains(element.0, element.1) {
            return Err(NotInClass { u: element.0, v: element.1 });
        }
        let (y, (u, v), j) = self.normalize_at(element);
        let n = self.n();
        Ok(ParallelClasses {
            normalized: (u, v),
            tau: y.tau.clone(),
            j,
            bottom: (self.t..=n).collect(),
            lower_top: (0..j).collect(),
            upper_top: (j..self.t).collect(),
        })
    }

    /// JSON value `{"t","tau","C","pr"}` with 1-based labels.
    pub fn to_json(&self) -> DatumJson {
        DatumJson { t: self.t, tau: self.tau.iter().map(|p| p + 1).collect(), c: self.c.clone(), pr: self.pr.into() }
    }

    /// Parses the JSON value produced by [`TwoLevelDatum::to_json`].
    pub fn from_json(sig: &StratumSignature, json: &DatumJson) -> Result<TwoLevelDatum, DatumError> {
        let tau = json
            .tau
            .iter()
            .map(|&p| p.checked_sub(1).ok_or(DatumError::NotPermutation { n: sig.n() }))
            .collect::<Result<Vec<_>, _>>()?;
        make_datum(sig, json.t, &tau, &json.c, (json.pr.u, json.pr.v))
    }
}

/// A prong-matching that is not a member of the datum's class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("({u},{v}) is not in the prong-matching class")]
pub struct NotInClass {
    pub u: i64,
    pub v: i64,
}

/// Families of parallel saddle connections on the plumbed surface at one class member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClasses {
    /// The member after relabeling, with `u` in the last top block.
    pub normalized: (u32, u32),
    /// Region order of the relabeled datum.
    pub tau: Vec<usize>,
    /// Block index with `d_{j-1} <= v < d_j`.
    pub j: usize,
    /// Indices `t..=n` of the bottom-level saddle connections.
    pub bottom: Vec<usize>,
    /// Top-level saddle connections `0..j`.
    pub lower_top: Vec<usize>,
    /// Top-level saddle connections `j..t`.
    pub upper_top: Vec<usize>,
}

/// Serialized datum with 1-based pole labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub t: usize,
    pub tau: Vec<usize>,
    #[serde(rename = "C")]
    pub c: Vec<u32>,
    pub pr: ProngJson,
}

impl PartialEq for TwoLevelDatum {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.key() == other.key()
    }
}

impl Eq for TwoLevelDatum {}

impl fmt::Debug for TwoLevelDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TwoLevelDatum {
    /// `X(t,[tau],(C by label),[(0,v)])` with 1-based labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tau: Vec<String> = self.tau.iter().map(|p| (p + 1).to_string()).collect();
        let c: Vec<String> = self.c.iter().map(u32::to_string).collect();
        write!(f, "X({},[{}],({}),[(0,{})])", self.t, tau.join(","), c.join(","), self.pr.rep().1)
    }
}

/// A horizontal boundary point `X(0, tau, C)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HorizontalDatum {
    sig: StratumSignature,
    tau: Vec<usize>,
    c: Vec<u32>,
}

impl HorizontalDatum {
    pub fn new(sig: &StratumSignature, tau: &[usize], c_vec: &[u32]) -> Result<Self, DatumError> {
        check_stratum(sig)?;
        check_permutation(tau, sig.n())?;
        check_angles(sig, c_vec)?;
        Ok(HorizontalDatum { sig: sig.clone(), tau: tau.to_vec(), c: c_vec.to_vec() })
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn c_vec(&self) -> &[u32] {
        &self.c
    }

    /// Exchanging the two simple poles reverses the order and swaps `C` with `D`.
    pub fn swapped(&self) -> HorizontalDatum {
        let b = self.sig.pole_orders();
        HorizontalDatum {
            sig: self.sig.clone(),
            tau: self.tau.iter().rev().copied().collect(),
            c: self.c.iter().zip(b).map(|(&c, &b)| b - c).collect(),
        }
    }

    /// The smaller of the two equivalent representations.
    pub fn canonical_form(&self) -> HorizontalDatum {
        let other = self.swapped();
        if (&other.tau, &other.c) < (&self.tau, &self.c) {
            other
        } else {
            self.clone()
        }
    }
}

/// Number of prong classes is `gcd(Q1, Q2)`; exposed for enumeration.
pub(crate) fn class_count(q1: u32, q2: u32) -> u32 {
    q1.gcd(&q2)
}
