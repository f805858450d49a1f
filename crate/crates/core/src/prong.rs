//! Prong-matching classes: orbits of `Z/q1 x Z/q2` under `k.(u, v) = (u + k, v - k)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm, reduce};

/// An equivalence class of prong-matchings, stored by its representative `(0, v)`
/// with `v` minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProngClass {
    q1: u32,
    q2: u32,
    v: u32,
}

impl ProngClass {
    /// The class of the raw pair `(u, v)`; coordinates may be negative or out of range.
    ///
    /// # Panics
    /// If `q1` or `q2` is zero.
    pub fn new(q1: u32, q2: u32, u: i64, v: i64) -> Self {
        assert!(q1 > 0 && q2 > 0, "prong moduli must be positive");
        let g = q1.gcd(&q2);
        ProngClass { q1, q2, v: reduce(u + v, g) }
    }

    pub fn q1(&self) -> u32 {
        self.q1
    }

    pub fn q2(&self) -> u32 {
        self.q2
    }

    /// The canonical representative `(0, v)`.
    pub fn rep(&self) -> (u32, u32) {
        (0, self.v)
    }

    /// Number of prong-matchings in the class, `lcm(q1, q2)`.
    pub fn orbit_len(&self) -> u32 {
        lcm(self.q1, self.q2)
    }

    /// All members in orbit order, starting at the canonical representative.
    pub fn orbit(&self) -> Vec<(u32, u32)> {
        (0..self.orbit_len()).map(|k| (k % self.q1, reduce(i64::from(self.v) - i64::from(k), self.q2))).collect()
    }

    /// True iff the raw pair `(u, v)` belongs to this class.
    pub fn contains(&self, u: i64, v: i64) -> bool {
        *self == ProngClass::new(self.q1, self.q2, u, v)
    }
}

/// Number of prong-matching classes for fixed `(q1, q2)`, which is `gcd(q1, q2)`.
pub fn prong_class_count(q1: u32, q2: u32) -> u32 {
    q1.gcd(&q2)
}

/// JSON form `{"u":0,"v":v}` of a class representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProngJson {
    pub u: i64,
    pub v: i64,
}

impl From<ProngClass> for ProngJson {
    fn from(p: ProngClass) -> Self {
        ProngJson { u: 0, v: i64::from(p.v) }
    }
}
