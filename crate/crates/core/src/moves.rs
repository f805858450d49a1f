//! The T1/T2 boundary moves and the helpers built from them.
//!
//! A move starts from a datum and a member `(u, v)` of its prong class. The
//! datum is relabeled so that `c_{t-1} < u <= Q1`, the block `j` with
//! `d_{j-1} <= v < d_j` is located, and one of the two families of parallel
//! saddle connections on the plumbed surface is shrunk instead. Positions in
//! the formulas are region positions of the relabeled datum; the new angles
//! are written back to the poles occupying those positions, so pole labels
//! never change.

use std::fmt;

use thiserror::Error;

use crate::datum::{NotInClass, TwoLevelDatum};

/// Which family of parallel saddle connections the move shrinks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    T1,
    T2,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::T1 => "T1",
            MoveKind::T2 => "T2",
        })
    }
}

/// Reasons a move is not defined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    NotInClass(#[from] NotInClass),
    /// With `j = t` the upper top family is empty; shrinking the remaining
    /// family reaches the horizontal boundary, which carries no two-level datum.
    #[error("T2 at j = t = {t} shrinks onto the horizontal boundary")]
    Horizontal { t: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A move result in the representation produced by the formulas.
#[derive(Debug, Clone)]
pub struct MoveOutcome {
    /// The new datum, not canonicalized.
    pub datum: TwoLevelDatum,
    /// The prong-matching the formulas assign to the new datum.
    pub marked: (u32, u32),
    /// The relabeled input datum the formulas were evaluated on.
    pub source: TwoLevelDatum,
    /// The input member after relabeling, `u` read in `1..=Q1`.
    pub normalized: (u32, u32),
    /// Block index with `d_{j-1} <= v < d_j`.
    pub j: usize,
}

/// Applies a move and keeps the raw representation.
pub fn apply_raw(kind: MoveKind, x: &TwoLevelDatum, element: (i64, i64)) -> Result<MoveOutcome, MoveError> {
    if !x.pr().contains(element.0, element.1) {
        return Err(NotInClass { u: element.0, v: element.1 }.into());
    }
    let (y, (u, v), j) = x.normalize_at(element);
    let (t, n) = (y.t(), y.n());
    if kind == MoveKind::T2 && j == t {
        return Err(MoveError::Horizontal { t });
    }
    let b = y.sig().pole_orders();
    let tau = y.tau().to_vec();
    let pole = |i: usize| tau[i - 1];
    let c_at = |i: usize| i64::from(y.c_vec()[pole(i)]);
    let d_at = |i: usize| i64::from(y.d_of(pole(i)));
    let cs: Vec<i64> = y.c_prefix().iter().map(|&x| i64::from(x)).collect();
    let ds: Vec<i64> = y.d_prefix().iter().map(|&x| i64::from(x)).collect();
    let (u, v) = (i64::from(u), i64::from(v));

    let mut new_c: Vec<(usize, i64)> = Vec::new();
    let (t_new, order, marked, expected_q1) = match kind {
        MoveKind::T1 => {
            let t_new = n - (j - 1);
            let order: Vec<usize> =
                (1..=t_new).map(|i| i + j - 1).chain((t_new + 1..=n).map(|i| j - (i - t_new))).collect();
            new_c.extend((1..j).map(|i| (i, d_at(i))));
            if j == t {
                new_c.push((t, u - cs[t - 1] + v - ds[j - 1]));
            } else {
                new_c.push((j, c_at(j) + v - ds[j - 1]));
                new_c.push((t, u - cs[t - 1]));
            }
            let marked = (v - ds[j - 1], ds[t] - v);
            (t_new, order, marked, u + v + cs[n] - cs[t] - cs[j - 1] - ds[j - 1])
        }
        MoveKind::T2 => {
            let t_new = n - (t - 1 - j);
            let order: Vec<usize> = (1..=n)
                .map(|i| {
                    if i <= j {
                        i
                    } else if i <= j + (n - t + 1) {
                        n + j + 1 - i
                    } else {
                        i - (n - t + 1)
                    }
                })
                .collect();
            new_c.extend((t + 1..=n).map(|i| (i, d_at(i))));
            new_c.push((j, c_at(j) + ds[j] - v - 1));
            new_c.push((t, cs[t] - u + 1));
            let marked = (cs[j] - 1, 1 - d_at(t));
            (t_new, order, marked, cs[j] + ds[j] + ds[n] + cs[t] - ds[t] - u - v)
        }
    };

    let mut c = y.c_vec().to_vec();
    for (i, value) in new_c {
        let p = pole(i);
        assert!(
            1 <= value && value < i64::from(b[p]),
            "{kind} produced C = {value} for pole {p} outside 1..{}; input {x}, element {element:?}",
            b[p]
        );
        c[p] = value as u32;
    }
    let new_tau: Vec<usize> = order.iter().map(|&i| pole(i)).collect();
    let datum = TwoLevelDatum::assemble(y.sig().clone(), t_new, new_tau, c, marked);
    assert_eq!(i64::from(datum.q1()), expected_q1, "{kind} broke the Q1 identity on {x} at {element:?}");
    let marked = (crate::arith::reduce(marked.0, datum.q1()), crate::arith::reduce(marked.1, datum.q2()));
    Ok(MoveOutcome { datum, marked, source: y, normalized: (u as u32, v as u32), j })
}

/// `T1^{(u,v)}` in canonical form.
pub fn t1_move(x: &TwoLevelDatum, element: (i64, i64)) -> Result<TwoLevelDatum, MoveError> {
    apply_raw(MoveKind::T1, x, element).map(|o| o.datum.canonical_form())
}

/// `T2^{(u,v)}` in canonical form.
pub fn t2_move(x: &TwoLevelDatum, element: (i64, i64)) -> Result<TwoLevelDatum, MoveError> {
    apply_raw(MoveKind::T2, x, element).map(|o| o.datum.canonical_form())
}

/// Direction of [`adjust_pair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Increase `C_t` and decrease `C_j`.
    Up,
    /// Decrease `C_t` and increase `C_j`.
    Down,
}

/// Moves one unit of angle between the last top pole and block `j`.
///
/// The result keeps the relabeled representation and the same prong-matching
/// `(u, v)`, reported in `marked`; it lies in the same component as `x`.
pub fn adjust_pair(x: &TwoLevelDatum, element: (i64, i64), direction: Direction) -> Result<MoveOutcome, MoveError> {
    if !x.pr().contains(element.0, element.1) {
        return Err(NotInClass { u: element.0, v: element.1 }.into());
    }
    let (y, (u, v), j) = x.normalize_at(element);
    let t = y.t();
    if j >= t {
        return Err(MoveError::Precondition(format!("needs j < t, got j = {j}, t = {t}")));
    }
    let (last, block) = (y.tau()[t - 1], y.tau()[j - 1]);
    let mut c = y.c_vec().to_vec();
    match direction {
        Direction::Up if y.d_of(last) >= 2 && c[block] >= 2 => {
            c[last] += 1;
            c[block] -= 1;
        }
        Direction::Down if c[last] >= 2 && y.d_of(block) >= 2 => {
            c[last] -= 1;
            c[block] += 1;
        }
        _ => {
            return Err(MoveError::Precondition(format!(
                "{direction:?} needs room at poles {} and {}",
                last + 1,
                block + 1
            )))
        }
    }
    let datum = TwoLevelDatum::assemble(y.sig().clone(), t, y.tau().to_vec(), c, (i64::from(u), i64::from(v)));
    Ok(MoveOutcome { datum, marked: (u % y.q1(), v), source: y, normalized: (u, v), j })
}

/// Promotes the pole in region `t + 1` to the top level.
///
/// Requires `t < n` and `d_{j-1} < v < d_j` for the member `(0, v)`. Applies
/// `T1^{(0,v)}` and then `T2` at the prong-matching `T1` assigns to its
/// output; the result has `t + 1` top poles, `Q1` grows by the promoted
/// pole's order and `Q2` is unchanged.
pub fn insert_pole(x: &TwoLevelDatum, v: i64) -> Result<TwoLevelDatum, MoveError> {
    if x.t() >= x.n() {
        return Err(MoveError::Precondition("every pole is already on the top level".into()));
    }
    if !x.pr().contains(0, v) {
        return Err(NotInClass { u: 0, v }.into());
    }
    let vr = crate::arith::reduce(v, x.q2());
    let ds = x.d_prefix();
    if !(1..=x.t()).any(|j| ds[j - 1] < vr && vr < ds[j]) {
        return Err(MoveError::Precondition(format!("v = {vr} coincides with a partial sum d_j")));
    }
    let first = apply_raw(MoveKind::T1, x, (0, v))?;
    let (mu, mv) = first.marked;
    let second = apply_raw(MoveKind::T2, &first.datum, (i64::from(mu), i64::from(mv)))?;
    Ok(second.datum.canonical_form())
}

/// Whether a move can be undone from the prong-matching it assigns.
///
/// Applies `kind` at `element`, then both moves at the assigned member
/// shifted by `(offset, -offset)`, and reports whether either lands on the
/// canonical form of `x`. A result on the horizontal boundary never recovers.
pub fn recovers_source(kind: MoveKind, x: &TwoLevelDatum, element: (i64, i64), offset: i64) -> Result<bool, MoveError> {
    let out = apply_raw(kind, x, element)?;
    let back = (i64::from(out.marked.0) + offset, i64::from(out.marked.1) - offset);
    let target = x.canonical_form();
    for second in [MoveKind::T1, MoveKind::T2] {
        match apply_raw(second, &out.datum, back) {
            Ok(r) if r.datum.canonical_form() == target => return Ok(true),
            Ok(_) | Err(MoveError::Horizontal { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(false)
}

/// Applies a sequence of moves, each to the raw output of the previous one,
/// and renders one line `T1 (u,v): <datum-json> -> <datum-json>` per move.
pub fn trace(x: &TwoLevelDatum, steps: &[(MoveKind, (i64, i64))]) -> Result<(TwoLevelDatum, Vec<String>), MoveError> {
    let mut current = x.clone();
    let mut lines = Vec::with_capacity(steps.len());
    for &(kind, (u, v)) in steps {
        let out = apply_raw(kind, &current, (u, v))?;
        lines.push(format!(
            "{kind} ({u},{v}): {} -> {}",
            serde_json::to_string(&current.to_json()).expect("datum serializes"),
            serde_json::to_string(&out.datum.to_json()).expect("datum serializes"),
        ));
        current = out.datum;
    }
    Ok((current, lines))
}
