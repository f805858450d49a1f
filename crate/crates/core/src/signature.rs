//! Stratum signatures: genus plus the orders of zeros and poles.
//!
//! Orders are stored sorted ascending. Throughout the crate a zero or pole
//! is identified by its index in the sorted sequence; the position it had in
//! the parsed text is kept separately as its source label.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::gcd_all;

/// Reasons a signature can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("syntax error in signature {text:?}: {reason}")]
    Syntax { text: String, reason: String },
    #[error("signature needs at least one zero and one pole")]
    Empty,
    #[error("pole order {0} is below 2; residueless poles cannot be simple")]
    PoleTooSmall(u32),
    #[error("orders do not match the genus: sum of zeros {zeros} minus sum of poles {poles} != 2*{genus}-2")]
    GenusRelation { genus: u32, zeros: u64, poles: u64 },
}

#[derive(Debug)]
struct Inner {
    genus: u32,
    zeros: Vec<u32>,
    poles: Vec<u32>,
    zero_sources: Vec<usize>,
    pole_sources: Vec<usize>,
}

/// A validated stratum signature `(a_1, ..., a_m, -b_1, ..., -b_n)` of a given genus.
///
/// Cloning is cheap; the orders are shared.
#[derive(Clone)]
pub struct StratumSignature(Arc<Inner>);

/// Signatures are equal when genus and sorted orders agree; the recorded
/// input positions are presentation only.
impl PartialEq for StratumSignature {
    fn eq(&self, other: &Self) -> bool {
        (self.0.genus, &self.0.zeros, &self.0.poles) == (other.0.genus, &other.0.zeros, &other.0.poles)
    }
}

impl Eq for StratumSignature {}

impl std::hash::Hash for StratumSignature {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.0.genus, &self.0.zeros, &self.0.poles).hash(state);
    }
}

impl StratumSignature {
    /// Builds a signature from unsorted orders, validating every invariant.
    pub fn new(genus: u32, zeros: &[u32], poles: &[u32]) -> Result<Self, SignatureError> {
        if zeros.is_empty() || poles.is_empty() {
            return Err(SignatureError::Empty);
        }
        if let Some(&b) = poles.iter().find(|&&b| b < 2) {
            return Err(SignatureError::PoleTooSmall(b));
        }
        let zero_sum: u64 = zeros.iter().map(|&a| u64::from(a)).sum();
        let pole_sum: u64 = poles.iter().map(|&b| u64::from(b)).sum();
        if zero_sum as i64 - pole_sum as i64 != 2 * i64::from(genus) - 2 {
            return Err(SignatureError::GenusRelation { genus, zeros: zero_sum, poles: pole_sum });
        }
        let (zeros, zero_sources) = sorted_with_sources(zeros);
        let (poles, pole_sources) = sorted_with_sources(poles);
        Ok(StratumSignature(Arc::new(Inner { genus, zeros, poles, zero_sources, pole_sources })))
    }

    /// Parses the text form `genus:zeros;poles`, e.g. `1:12;3^4`.
    pub fn parse(text: &str) -> Result<Self, SignatureError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let syntax = |reason: &str| SignatureError::Syntax { text: text.to_string(), reason: reason.to_string() };
        let (genus, rest) = compact.split_once(':').ok_or_else(|| syntax("missing ':' after genus"))?;
        let (zeros, poles) = rest.split_once(';').ok_or_else(|| syntax("missing ';' between zeros and poles"))?;
        let genus: u32 = genus.parse().map_err(|_| syntax("genus is not a non-negative integer"))?;
        let zeros = zeros
            .split(',')
            .map(|z| z.parse::<u32>().map_err(|_| syntax("zero order is not a non-negative integer")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut pole_orders = Vec::new();
        for term in poles.split(',') {
            let (order, count) = match term.split_once('^') {
                Some((b, k)) => {
                    (b, k.parse::<u32>().map_err(|_| syntax("pole multiplicity is not a positive integer"))?)
                }
                None => (term, 1),
            };
            let order: u32 = order.parse().map_err(|_| syntax("pole order is not a positive integer"))?;
            if order == 0 || count == 0 {
                return Err(syntax("pole orders and multiplicities must be positive"));
            }
            pole_orders.extend(std::iter::repeat_n(order, count as usize));
        }
        Self::new(genus, &zeros, &pole_orders)
    }

    pub fn genus(&self) -> u32 {
        self.0.genus
    }

    /// Zero orders, sorted ascending.
    pub fn zero_orders(&self) -> &[u32] {
        &self.0.zeros
    }

    /// Pole orders as positive magnitudes, sorted ascending.
    pub fn pole_orders(&self) -> &[u32] {
        &self.0.poles
    }

    /// Position (1-based) in the parsed text of each sorted zero.
    pub fn zero_sources(&self) -> &[usize] {
        &self.0.zero_sources
    }

    /// Position (1-based) in the parsed text of each sorted pole.
    pub fn pole_sources(&self) -> &[usize] {
        &self.0.pole_sources
    }

    /// Number of zeros.
    pub fn m(&self) -> usize {
        self.0.zeros.len()
    }

    /// Number of poles.
    pub fn n(&self) -> usize {
        self.0.poles.len()
    }

    /// Sum of all zero orders.
    pub fn total_zero_order(&self) -> u32 {
        self.0.zeros.iter().sum()
    }

    /// True iff every zero and pole order is even.
    pub fn is_even_type(&self) -> bool {
        self.0.zeros.iter().chain(&self.0.poles).all(|x| x % 2 == 0)
    }

    /// Gcd of every zero and pole order; zero orders equal to 0 are ignored.
    pub fn gcd_d(&self) -> u32 {
        gcd_all(self.0.zeros.iter().chain(&self.0.poles).copied())
    }

    /// True for a genus-one stratum with a single zero, the setting of boundary data.
    pub fn is_genus_one_single_zero(&self) -> bool {
        self.0.genus == 1 && self.0.zeros.len() == 1
    }
}

fn sorted_with_sources(orders: &[u32]) -> (Vec<u32>, Vec<usize>) {
    let mut indexed: Vec<(u32, usize)> = orders.iter().enumerate().map(|(i, &x)| (x, i + 1)).collect();
    indexed.sort();
    indexed.into_iter().unzip()
}

impl FromStr for StratumSignature {
    type Err = SignatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for StratumSignature {
    /// Writes the canonical text form, grouping equal poles as `b^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zeros: Vec<String> = self.0.zeros.iter().map(u32::to_string).collect();
        let mut poles = Vec::new();
        let mut i = 0;
        while i < self.0.poles.len() {
            let b = self.0.poles[i];
            let k = self.0.poles[i..].iter().take_while(|&&x| x == b).count();
            poles.push(if k == 1 { b.to_string() } else { format!("{b}^{k}") });
            i += k;
        }
        write!(f, "{}:{};{}", self.0.genus, zeros.join(","), poles.join(","))
    }
}

impl fmt::Debug for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StratumSignature({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    genus: u32,
    zeros: Vec<u32>,
    poles: Vec<u32>,
}

impl Serialize for StratumSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SignatureJson { genus: self.0.genus, zeros: self.0.zeros.clone(), poles: self.0.poles.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StratumSignature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SignatureJson::deserialize(deserializer)?;
        StratumSignature::new(raw.genus, &raw.zeros, &raw.poles).map_err(serde::de::Error::custom)
    }
}
