//! Ramification profiles: involutions on the marked points that a
//! hyperelliptic involution can induce.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::signature::StratumSignature;

/// An involution of the pole labels satisfying the ramification constraints.
///
/// The action on zeros is forced by the signature: a single zero is fixed and
/// two zeros are swapped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RamificationProfile {
    pole_involution: Vec<usize>,
}

impl RamificationProfile {
    /// Wraps an involution given as its image sequence over sorted pole indices.
    ///
    /// Returns `None` unless the sequence is an involution satisfying every
    /// constraint relative to `sig`.
    pub fn new(sig: &StratumSignature, pole_involution: Vec<usize>) -> Option<Self> {
        let profile = RamificationProfile { pole_involution };
        profile.is_valid_for(sig).then_some(profile)
    }

    /// Image of each pole under the involution (sorted pole indices).
    pub fn pole_involution(&self) -> &[usize] {
        &self.pole_involution
    }

    /// Poles mapped to themselves.
    pub fn fixed_poles(&self) -> Vec<usize> {
        (0..self.pole_involution.len()).filter(|&i| self.pole_involution[i] == i).collect()
    }

    /// Checks the involution against every constraint for `sig`.
    pub fn is_valid_for(&self, sig: &StratumSignature) -> bool {
        let b = sig.pole_orders();
        let img = &self.pole_involution;
        if img.len() != b.len() || !zeros_admit_involution(sig) {
            return false;
        }
        let is_involution = (0..img.len()).all(|i| img[i] < img.len() && img[img[i]] == i);
        if !is_involution || (0..img.len()).any(|i| b[img[i]] != b[i]) {
            return false;
        }
        let fixed = self.fixed_poles();
        let fixed_zero = usize::from(sig.m() == 1);
        fixed.iter().all(|&i| b[i].is_multiple_of(2)) && fixed.len() + fixed_zero <= 2 * sig.genus() as usize + 2
    }
}

/// True when the zeros of `sig` can carry a hyperelliptic involution at all.
fn zeros_admit_involution(sig: &StratumSignature) -> bool {
    match sig.zero_orders() {
        [a] => a % 2 == 0,
        [a1, a2] => a1 == a2,
        _ => false,
    }
}

/// Every ramification profile of `sig`, ordered lexicographically by image sequence.
pub fn enumerate_profiles(sig: &StratumSignature) -> Vec<RamificationProfile> {
    if !zeros_admit_involution(sig) {
        return Vec::new();
    }
    let n = sig.n();
    let mut out = Vec::new();
    let mut images = vec![usize::MAX; n];
    extend_involutions(&mut images, 0, &mut |img| {
        let profile = RamificationProfile { pole_involution: img.to_vec() };
        if profile.is_valid_for(sig) {
            out.push(profile);
        }
    });
    out.sort();
    out
}

fn extend_involutions(images: &mut [usize], start: usize, emit: &mut impl FnMut(&[usize])) {
    let Some(i) = (start..images.len()).find(|&i| images[i] == usize::MAX) else {
        emit(images);
        return;
    };
    images[i] = i;
    extend_involutions(images, i + 1, emit);
    for j in i + 1..images.len() {
        if images[j] == usize::MAX {
            images[i] = j;
            images[j] = i;
            extend_involutions(images, i + 1, emit);
            images[j] = usize::MAX;
        }
    }
    images[i] = usize::MAX;
}

impl fmt::Display for RamificationProfile {
    /// Cycle notation on 1-based pole labels, e.g. `(1 2)(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &j) in self.pole_involution.iter().enumerate() {
            if i == j {
                write!(f, "({})", i + 1)?;
            } else if i < j {
                write!(f, "({} {})", i + 1, j + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RamificationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RamificationProfile{self}")
    }
}

impl Serialize for RamificationProfile {
    /// `{"poles":[images, 1-based],"cycles":"(1 2)(3)"}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RamificationProfile", 2)?;
        let images: Vec<usize> = self.pole_involution.iter().map(|i| i + 1).collect();
        s.serialize_field("poles", &images)?;
        s.serialize_field("cycles", &self.to_string())?;
        s.end()
    }
}
