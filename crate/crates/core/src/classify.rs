//! Closed-form component classification and the spin/rotation algebra.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd_all};
use crate::profile::{enumerate_profiles, RamificationProfile};
use crate::signature::StratumSignature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("genus 0 strata are not classified here")]
    GenusZero,
    #[error("signature {0} has zero-order marked points, which the classification does not treat")]
    MarkedPoints(String),
}

/// A group of non-hyperelliptic components sharing one invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonHyperelliptic {
    /// Rotation number; genus one only.
    pub rotation: Option<u32>,
    /// Number of components with this invariant.
    pub count: u32,
    /// Spin parity; even-type strata of genus at least two only.
    pub spin: Option<u8>,
}

/// Predicted connected components of a stratum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub signature: StratumSignature,
    pub hyperelliptic: Vec<RamificationProfile>,
    pub non_hyperelliptic: Vec<NonHyperelliptic>,
}

impl Classification {
    /// Total number of predicted components.
    pub fn total(&self) -> usize {
        self.hyperelliptic.len() + self.non_hyperelliptic.iter().map(|e| e.count as usize).sum::<usize>()
    }

    /// Predicted non-hyperelliptic count at a rotation number (genus one).
    pub fn count_at_rotation(&self, r: u32) -> u32 {
        self.non_hyperelliptic.iter().filter(|e| e.rotation == Some(r)).map(|e| e.count).sum()
    }
}

/// Lists the components of `sig` in closed form.
///
/// Hyperelliptic components correspond to ramification profiles. In genus one
/// the non-hyperelliptic components are indexed by the divisors `r` of `d`,
/// with a short list of exceptional shapes; in higher genus they are split by
/// spin parity when the stratum is of even type.
pub fn classify(sig: &StratumSignature) -> Result<Classification, ClassifyError> {
    if sig.genus() == 0 {
        return Err(ClassifyError::GenusZero);
    }
    if sig.zero_orders().contains(&0) {
        return Err(ClassifyError::MarkedPoints(sig.to_string()));
    }
    let hyperelliptic = enumerate_profiles(sig);
    let non_hyperelliptic = if sig.genus() == 1 {
        genus_one_rotations(sig)
            .into_iter()
            .filter(|&(_, count)| count > 0)
            .map(|(r, count)| NonHyperelliptic { rotation: Some(r), count, spin: None })
            .collect()
    } else if sig.is_even_type() {
        (0..2).map(|s| NonHyperelliptic { rotation: None, count: 1, spin: Some(s) }).collect()
    } else {
        vec![NonHyperelliptic { rotation: None, count: 1, spin: None }]
    };
    Ok(Classification { signature: sig.clone(), hyperelliptic, non_hyperelliptic })
}

/// Non-hyperelliptic component count for every divisor of `d`, exceptions applied.
fn genus_one_rotations(sig: &StratumSignature) -> Vec<(u32, u32)> {
    let zeros = sig.zero_orders();
    let poles = sig.pole_orders();
    let mut counts: Vec<(u32, u32)> = divisors(sig.gcd_d()).into_iter().map(|r| (r, 1)).collect();
    let mut set = |r: u32, count: u32| {
        if let Some(entry) = counts.iter_mut().find(|e| e.0 == r) {
            entry.1 = count;
        }
    };
    let all_poles_two = poles.iter().all(|&b| b == 2);
    match (zeros, poles) {
        (_, _) if all_poles_two && (zeros.len() == 1 || (zeros.len() == 2 && zeros[0] == zeros[1])) => {
            return Vec::new();
        }
        ([a], [b]) => {
            set(*b, 0);
            if a.is_even() {
                set(a / 2, 0);
            }
        }
        ([a], [b1, b2]) if b1 == b2 && *a == 2 * b1 => set(*b1, 0),
        ([a1, a2], [b]) if a1 == a2 && *b == 2 * a1 => set(*a1, 0),
        ([a1, a2], [b1, b2]) if a1 == a2 && b1 == b2 && a1 == b1 => set(*a1, 0),
        ([12], [3, 3, 3, 3]) => set(3, 2),
        _ => {}
    }
    counts
}

/// `sum (Ind alpha_i + 1)(Ind beta_i + 1) mod 2` over a symplectic basis.
pub fn spin_parity(index_pairs: &[(i64, i64)]) -> u8 {
    let sum: i64 = index_pairs.iter().map(|&(a, b)| (a + 1) * (b + 1)).sum();
    sum.rem_euclid(2) as u8
}

/// Spin parity of an even-type genus-one surface with rotation number `r`.
pub fn genus1_spin_from_rotation(r: u32) -> u8 {
    ((1 + r) % 2) as u8
}

/// Spin parity after bubbling a handle with parameter `s`.
pub fn bubble_spin(spin: u8, s: i64) -> u8 {
    (i64::from(spin) + s + 1).rem_euclid(2) as u8
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bubbling parameter {s} must lie in 1..={max}")]
pub struct BubbleRangeError {
    pub s: u32,
    pub max: u32,
}

/// Reduces a bubbling parameter: the result only depends on `gcd(a + 2, s)`.
pub fn normalize_bubble_param(a: u32, s: u32) -> Result<u32, BubbleRangeError> {
    if s < 1 || s > a + 1 {
        return Err(BubbleRangeError { s, max: a + 1 });
    }
    Ok((a + 2).gcd(&s))
}

/// Rotation number after breaking a zero of a rotation-`r` component into
/// zeros of the given orders.
pub fn break_zero_rotation(r: u32, zero_orders: &[u32]) -> u32 {
    gcd_all(zero_orders.iter().copied().chain([r]))
}
