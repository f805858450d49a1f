//! Random valid principal-boundary configurations together with their strata.
//!
//! Each region is drawn first (its vertex genus and marked points), then the
//! angles are chosen to satisfy the region's genus relation, and the stratum
//! is read off from the result. Labels are translated to the sorted order of
//! the signature through its recorded input positions.

use rand::rngs::StdRng;
use rand::Rng;
use strata_core::{ConfigurationI, ConfigurationII, StratumSignature};

/// Maps input positions (0-based) to sorted labels.
fn labels_by_input(sources: &[usize]) -> Vec<usize> {
    let mut label = vec![0; sources.len()];
    for (sorted, &source) in sources.iter().enumerate() {
        label[source - 1] = sorted;
    }
    label
}

fn split_angle(rng: &mut StdRng, total: u32) -> (u32, u32) {
    let c = rng.random_range(1..total);
    (c, total - c)
}

/// Smallest `2g + base` reaching `floor`, starting from a random genus.
fn region_total(rng: &mut StdRng, base: i64, floor: i64) -> (u32, u32) {
    let mut genus = rng.random_range(0..2u32);
    while 2 * i64::from(genus) + base < floor {
        genus += 1;
    }
    (genus, (2 * i64::from(genus) + base) as u32)
}

pub fn random_config_i(rng: &mut StdRng) -> (StratumSignature, ConfigurationI) {
    loop {
        let k = rng.random_range(1..=3);
        let mut extra_zeros: Vec<Vec<u32>> = Vec::new();
        let mut poles: Vec<Vec<u32>> = Vec::new();
        for _ in 0..k {
            extra_zeros.push((0..rng.random_range(0..=1)).map(|_| rng.random_range(1..=3)).collect());
            poles.push((0..rng.random_range(0..=2)).map(|_| rng.random_range(2..=5)).collect());
        }
        if poles.iter().all(Vec::is_empty) {
            continue;
        }
        let (mut c, mut d) = (Vec::new(), Vec::new());
        let mut genus = 0;
        for i in 0..k {
            let base = poles[i].iter().map(|&b| i64::from(b)).sum::<i64>()
                - extra_zeros[i].iter().map(|&a| i64::from(a)).sum::<i64>();
            let (g, total) = region_total(rng, base, 2);
            let (ci, di) = split_angle(rng, total);
            genus += g;
            c.push(ci);
            d.push(di);
        }
        let (a1, a2) = (c.iter().sum::<u32>() - 1, d.iter().sum::<u32>() - 1);
        if a1 == 0 || a2 == 0 {
            continue;
        }
        let mut zeros = vec![a1, a2];
        zeros.extend(extra_zeros.iter().flatten());
        let all_poles: Vec<u32> = poles.iter().flatten().copied().collect();
        let sig = StratumSignature::new(genus, &zeros, &all_poles).expect("generated signature is valid");
        let zero_label = labels_by_input(sig.zero_sources());
        let pole_label = labels_by_input(sig.pole_sources());
        let (mut next_zero, mut next_pole) = (2, 0);
        let mut zero_parts = Vec::new();
        let mut pole_parts = Vec::new();
        for i in 0..k {
            let mut zs: Vec<usize> = (next_zero..next_zero + extra_zeros[i].len()).map(|z| zero_label[z]).collect();
            let mut ps: Vec<usize> = (next_pole..next_pole + poles[i].len()).map(|p| pole_label[p]).collect();
            next_zero += extra_zeros[i].len();
            next_pole += poles[i].len();
            zs.sort_unstable();
            ps.sort_unstable();
            zero_parts.push(zs);
            pole_parts.push(ps);
        }
        let config = ConfigurationI { joined: (zero_label[0], zero_label[1]), c, d, zero_parts, pole_parts };
        return (sig, config);
    }
}

pub fn random_config_ii(rng: &mut StdRng) -> (StratumSignature, ConfigurationII) {
    loop {
        let regions = rng.random_range(0..=3);
        let cylinder = rng.random_bool(0.3);
        let outer: Vec<u32> =
            if cylinder { Vec::new() } else { (0..rng.random_range(0..=2)).map(|_| rng.random_range(2..=5)).collect() };
        let inner: Vec<Vec<u32>> =
            (0..regions).map(|_| (0..rng.random_range(0..=2)).map(|_| rng.random_range(2..=5)).collect()).collect();
        if outer.is_empty() && inner.iter().all(Vec::is_empty) {
            continue;
        }
        let mut genus = 1;
        let (q1, q2) = if cylinder {
            (0, 0)
        } else {
            let (g, total) = region_total(rng, outer.iter().map(|&b| i64::from(b)).sum(), 2);
            genus += g;
            split_angle(rng, total)
        };
        let (mut c, mut d) = (Vec::new(), Vec::new());
        for part in &inner {
            let (g, total) = region_total(rng, part.iter().map(|&b| i64::from(b)).sum(), 2);
            let (ci, di) = split_angle(rng, total);
            genus += g;
            c.push(ci);
            d.push(di);
        }
        let a = c.iter().chain(&d).sum::<u32>() + q1 + q2;
        let mut all_poles = outer.clone();
        all_poles.extend(inner.iter().flatten());
        let sig = StratumSignature::new(genus, &[a], &all_poles).expect("generated signature is valid");
        let pole_label = labels_by_input(sig.pole_sources());
        let mut next = 0;
        let mut pole_parts = Vec::new();
        for part in std::iter::once(&outer).chain(&inner) {
            let mut ps: Vec<usize> = (next..next + part.len()).map(|p| pole_label[p]).collect();
            next += part.len();
            ps.sort_unstable();
            pole_parts.push(ps);
        }
        return (sig, ConfigurationII { c, d, q1, q2, pole_parts });
    }
}
