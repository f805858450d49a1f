//! Exhaustive enumeration of canonical two-level boundary data.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::datum::{class_count, make_datum, DatumError, DatumKey, TwoLevelDatum};
use crate::signature::StratumSignature;

/// Default cap on raw `(t, tau, C, class)` tuples visited before canonicalization.
pub const DEFAULT_MAX_RAW: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error(transparent)]
    Unsupported(#[from] DatumError),
    #[error("enumeration exceeds the cap of {limit} raw tuples")]
    ResourceLimit { limit: u64 },
}

/// Every canonical two-level datum of `sig` exactly once, sorted by key.
///
/// Runs on the current rayon pool; the output does not depend on the number
/// of threads.
pub fn enumerate_boundary(sig: &StratumSignature, max_raw: u64) -> Result<Vec<TwoLevelDatum>, EnumerationError> {
    let n = sig.n();
    let b = sig.pole_orders().to_vec();
    make_datum(sig, 1, &(0..n).collect::<Vec<_>>(), &vec![1; n], (0, 0))?;

    let angle_vectors: Vec<Vec<u32>> =
        b.iter().map(|&bi| (1..bi).collect::<Vec<u32>>()).multi_cartesian_product().collect();
    let layouts: Vec<(usize, Vec<usize>)> =
        (1..=n).flat_map(|t| (0..n).permutations(n).map(move |tau| (t, tau))).collect();

    let visited = AtomicU64::new(0);
    let partial: Vec<HashMap<DatumKey, TwoLevelDatum>> = layouts
        .par_iter()
        .map(|(t, tau)| {
            let mut found = HashMap::new();
            for c in &angle_vectors {
                let base = TwoLevelDatum::assemble(sig.clone(), *t, tau.clone(), c.clone(), (0, 0));
                let classes = class_count(base.q1(), base.q2());
                if visited.fetch_add(u64::from(classes), Ordering::Relaxed) + u64::from(classes) > max_raw {
                    return Err(EnumerationError::ResourceLimit { limit: max_raw });
                }
                for v in 0..classes {
                    let x = TwoLevelDatum::assemble(sig.clone(), *t, tau.clone(), c.clone(), (0, i64::from(v)));
                    let canonical = x.canonical_form();
                    found.entry(canonical.key()).or_insert(canonical);
                }
            }
            Ok(found)
        })
        .collect::<Result<_, _>>()?;

    let mut merged: HashMap<DatumKey, TwoLevelDatum> = HashMap::new();
    for part in partial {
        merged.extend(part);
    }
    let mut data: Vec<TwoLevelDatum> = merged.into_values().collect();
    data.sort_by_key(|x| x.key());
    Ok(data)
}

/// Genus-one single-zero strata with at most four poles, each of order at
/// most six, and total pole order at most fourteen.
pub fn battery_signatures() -> Vec<StratumSignature> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let mut poles = vec![2u32; n];
        loop {
            let total: u32 = poles.iter().sum();
            if total <= 14 {
                out.push(StratumSignature::new(1, &[total], &poles).expect("battery signatures are valid"));
            }
            let Some(i) = (0..n).rev().find(|&i| poles[i] < 6) else { break };
            let next = poles[i] + 1;
            for p in &mut poles[i..] {
                *p = next;
            }
        }
    }
    out
}
