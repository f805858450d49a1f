#![allow(dead_code)]

pub mod configs;

use proptest::prelude::*;
use strata_core::{battery_signatures, make_datum, StratumSignature, TwoLevelDatum};

pub fn sig(text: &str) -> StratumSignature {
    StratumSignature::parse(text).unwrap()
}

/// Datum with `C` given in region order, as in `X_tau` notation.
pub fn datum_by_regions(
    sig: &StratumSignature,
    t: usize,
    order: &[usize],
    region_c: &[u32],
    pr: (i64, i64),
) -> TwoLevelDatum {
    let mut c = vec![0; order.len()];
    for (&p, &ci) in order.iter().zip(region_c) {
        c[p] = ci;
    }
    make_datum(sig, t, order, &c, pr).unwrap()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An arbitrary valid datum of a battery stratum, with any class representative.
pub fn arb_datum() -> impl Strategy<Value = TwoLevelDatum> {
    let sigs = battery_signatures();
    (0..sigs.len(), any::<u64>(), prop::collection::vec(any::<u32>(), 4), any::<u32>(), any::<u32>()).prop_map(
        move |(i, perm_seed, angle_seeds, t_seed, v_seed)| {
            let s = sigs[i].clone();
            let n = s.n();
            let b = s.pole_orders();
            let mut order: Vec<usize> = (0..n).collect();
            let mut seed = perm_seed;
            for k in (1..n).rev() {
                order.swap(k, (seed % (k as u64 + 1)) as usize);
                seed /= k as u64 + 1;
            }
            let t = 1 + t_seed as usize % n;
            let c: Vec<u32> = (0..n).map(|p| 1 + angle_seeds[p] % (b[p] - 1)).collect();
            let q1: u32 = order[..t].iter().map(|&p| c[p]).sum();
            let q2: u32 = order[..t].iter().map(|&p| b[p] - c[p]).sum();
            let v = v_seed % gcd(q1, q2);
            make_datum(&s, t, &order, &c, (0, i64::from(v))).unwrap()
        },
    )
}
