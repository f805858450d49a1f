mod support;

use itertools::Itertools;
use proptest::prelude::*;
use strata_core::{
    break_zero_rotation, bubble_spin, classify, enumerate_profiles, genus1_spin_from_rotation, normalize_bubble_param,
    spin_parity, ClassifyError, RamificationProfile, SignatureError, StratumSignature,
};
use support::sig;

/// Profile count by scanning every permutation of the poles and keeping the
/// admissible involutions.
fn oracle_profile_count(s: &StratumSignature) -> usize {
    let a = s.zero_orders();
    let b = s.pole_orders();
    let zeros_ok = match a {
        [a1] => a1 % 2 == 0,
        [a1, a2] => a1 == a2,
        _ => false,
    };
    if !zeros_ok {
        return 0;
    }
    let fixed_zero = usize::from(a.len() == 1);
    (0..b.len())
        .permutations(b.len())
        .filter(|p| (0..p.len()).all(|i| p[p[i]] == i && b[p[i]] == b[i]))
        .filter(|p| {
            let fixed: Vec<usize> = (0..p.len()).filter(|&i| p[i] == i).collect();
            fixed.iter().all(|&i| b[i].is_multiple_of(2)) && fixed.len() + fixed_zero <= 2 * s.genus() as usize + 2
        })
        .count()
}

#[test]
fn parse_examples() {
    let s = sig("1:12;3^4");
    assert_eq!((s.genus(), s.zero_orders(), s.pole_orders()), (1, &[12][..], &[3, 3, 3, 3][..]));
    let t = sig("1:2;2");
    assert_eq!((t.genus(), t.zero_orders(), t.pole_orders()), (1, &[2][..], &[2][..]));
    assert!(matches!(StratumSignature::parse("1:5;2,4"), Err(SignatureError::GenusRelation { .. })));
    assert!(matches!(StratumSignature::parse("1:5"), Err(SignatureError::Syntax { .. })));
    assert!(matches!(StratumSignature::parse("1:3;1,2"), Err(SignatureError::PoleTooSmall(1))));
    assert_eq!(sig(" 1 : 12 ; 3 ^ 4 "), s);
}

#[test]
fn parse_sorts_and_records_positions() {
    let s = sig("1:10;5,2,3");
    assert_eq!(s.pole_orders(), &[2, 3, 5]);
    assert_eq!(s.pole_sources(), &[2, 3, 1]);
    assert_eq!(s.to_string(), "1:10;2,3,5");
    assert_eq!(sig("1:12;3,3,3,3").to_string(), "1:12;3^4");
    let json = serde_json::to_string(&s).unwrap();
    assert_eq!(json, r#"{"genus":1,"zeros":[10],"poles":[2,3,5]}"#);
    assert_eq!(serde_json::from_str::<StratumSignature>(&json).unwrap(), s);
}

#[test]
fn even_type_and_gcd_examples() {
    assert!(sig("2:6;2,2").is_even_type());
    assert!(!sig("1:12;3^4").is_even_type());
    assert!(!sig("1:5,3;2^4").is_even_type());
    assert_eq!(sig("1:12;3^4").gcd_d(), 3);
    assert_eq!(sig("1:4;2,2").gcd_d(), 2);
    assert_eq!(sig("1:8;3,5").gcd_d(), 1);
    assert_eq!(sig("1:0,4;4").gcd_d(), 4);
}

#[test]
fn profile_examples() {
    assert_eq!(enumerate_profiles(&sig("1:2;2")).len(), 1);
    let exceptional = enumerate_profiles(&sig("1:12;3^4"));
    assert_eq!(exceptional.len(), 3);
    assert!(exceptional.iter().all(|p| p.fixed_poles().is_empty()));
    let three = enumerate_profiles(&sig("1:6;2^3"));
    assert_eq!(three.len(), 4);
    let fixed: Vec<usize> = three.iter().map(|p| p.fixed_poles().len()).sorted().collect();
    assert_eq!(fixed, vec![1, 1, 1, 3]);
    assert!(enumerate_profiles(&sig("1:2,2,2;2^3")).is_empty());
    assert!(enumerate_profiles(&sig("1:3,1;2,2")).is_empty());
    assert!(enumerate_profiles(&sig("1:9;3^3")).is_empty());
}

#[test]
fn profiles_match_brute_force() {
    let texts = [
        "1:2;2",
        "1:4;2,2",
        "1:6;2^3",
        "1:8;2^4",
        "1:12;3^4",
        "1:8;4,4",
        "1:6;3,3",
        "1:14;2,4,4,4",
        "1:3,3;3,3",
        "1:4,4;2,2,2,2",
        "2:6;2,2",
        "2:10;2^4",
        "2:12;2^5",
        "3:4,4;2,2",
        "1:16;2^8",
    ];
    for text in texts {
        let s = sig(text);
        assert_eq!(enumerate_profiles(&s).len(), oracle_profile_count(&s), "{text}");
    }
}

#[test]
fn all_two_profile_counts() {
    // For (2n, -2^n) the admissible involutions are those with at most three
    // fixed poles, which the closed formula n!/2^((n-r)/2) does not count.
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_profiles(&sig(&format!("1:{};2^{n}", 2 * n))).len()).collect();
    assert_eq!(counts, vec![1, 2, 4, 9, 25]);
}

#[test]
fn classify_examples() {
    let c = classify(&sig("1:12;3^4")).unwrap();
    assert_eq!(c.hyperelliptic.len(), 3);
    assert_eq!((c.count_at_rotation(1), c.count_at_rotation(3)), (1, 2));
    assert_eq!(c.total(), 6);

    let d = classify(&sig("1:8;4,4")).unwrap();
    assert_eq!(d.hyperelliptic.len(), 2);
    let rotations: Vec<u32> = d.non_hyperelliptic.iter().filter_map(|e| e.rotation).collect();
    assert_eq!(rotations, vec![1, 2]);

    let g2 = classify(&sig("2:6;2,2")).unwrap();
    assert_eq!(g2.hyperelliptic.len(), 2);
    let spins: Vec<Option<u8>> = g2.non_hyperelliptic.iter().map(|e| e.spin).collect();
    assert_eq!(spins, vec![Some(0), Some(1)]);

    let odd = classify(&sig("2:7;2,3")).unwrap();
    assert!(odd.hyperelliptic.is_empty());
    assert_eq!(odd.non_hyperelliptic.len(), 1);
    assert_eq!((odd.non_hyperelliptic[0].rotation, odd.non_hyperelliptic[0].spin), (None, None));
}

#[test]
fn classify_exception_table() {
    let shape = |text: &str| {
        let c = classify(&sig(text)).unwrap();
        let rotations: Vec<(u32, u32)> = c.non_hyperelliptic.iter().map(|e| (e.rotation.unwrap(), e.count)).collect();
        (c.hyperelliptic.len(), rotations)
    };
    assert_eq!(shape("1:2;2"), (1, vec![]));
    assert_eq!(shape("1:4;2,2"), (2, vec![]));
    assert_eq!(shape("1:2,2;2,2"), (2, vec![]));
    assert_eq!(shape("1:6;6"), (1, vec![(1, 1), (2, 1)]));
    assert_eq!(shape("1:6;3,3"), (1, vec![(1, 1)]));
    assert_eq!(shape("1:8;3,5"), (0, vec![(1, 1)]));
    assert_eq!(shape("1:3,3;6"), (1, vec![(1, 1)]));
    assert_eq!(shape("1:3,3;3,3"), (1, vec![(1, 1)]));
}

#[test]
fn classify_errors() {
    assert_eq!(classify(&sig("0:2;2,2")), Err(ClassifyError::GenusZero));
    assert!(matches!(classify(&sig("1:0,4;4")), Err(ClassifyError::MarkedPoints(_))));
}

#[test]
fn classification_json_is_stable() {
    let c = classify(&sig("1:6;3,3")).unwrap();
    let json = serde_json::to_string(&c).unwrap();
    assert_eq!(
        json,
        r#"{"signature":{"genus":1,"zeros":[6],"poles":[3,3]},"hyperelliptic":[{"poles":[2,1],"cycles":"(1 2)"}],"non_hyperelliptic":[{"rotation":1,"count":1,"spin":null}]}"#
    );
}

#[test]
fn spin_examples() {
    assert_eq!(spin_parity(&[]), 0);
    assert_eq!(spin_parity(&[(9, 6)]), 0);
    assert_eq!(spin_parity(&[(0, 1), (0, 1)]), 0);
    assert_eq!(genus1_spin_from_rotation(1), 0);
    assert_eq!(genus1_spin_from_rotation(2), 1);
    assert_eq!(genus1_spin_from_rotation(4), 1);
    assert_eq!(bubble_spin(0, 1), 0);
    assert_eq!(bubble_spin(0, 2), 1);
    assert_eq!(bubble_spin(1, 1), 1);
}

#[test]
fn bubble_and_break_examples() {
    assert_eq!(normalize_bubble_param(10, 5), Ok(1));
    assert_eq!(normalize_bubble_param(10, 4), Ok(4));
    assert!(normalize_bubble_param(10, 12).is_err());
    assert_eq!(break_zero_rotation(3, &[3, 9]), 3);
    assert_eq!(break_zero_rotation(2, &[1, 5]), 1);
    assert_eq!(break_zero_rotation(6, &[4, 8]), 2);
}

proptest! {
    #[test]
    fn profiles_are_involutions_on_equal_orders(poles in prop::collection::vec(2u32..6, 1..6), genus in 1u32..3) {
        let zero = poles.iter().sum::<u32>() + 2 * genus - 2;
        let s = StratumSignature::new(genus, &[zero], &poles).unwrap();
        let b = s.pole_orders();
        for p in enumerate_profiles(&s) {
            let img = p.pole_involution();
            for i in 0..img.len() {
                prop_assert_eq!(img[img[i]], i);
                prop_assert_eq!(b[img[i]], b[i]);
            }
            prop_assert!(p.is_valid_for(&s));
            prop_assert_eq!(RamificationProfile::new(&s, img.to_vec()), Some(p.clone()));
        }
        prop_assert_eq!(enumerate_profiles(&s).len(), oracle_profile_count(&s));
    }

    #[test]
    fn profile_count_ignores_input_order(mut poles in prop::collection::vec(2u32..6, 1..6), seed in any::<u64>()) {
        let zero: u32 = poles.iter().sum();
        let before = enumerate_profiles(&StratumSignature::new(1, &[zero], &poles).unwrap()).len();
        let mut state = seed;
        for k in (1..poles.len()).rev() {
            poles.swap(k, (state % (k as u64 + 1)) as usize);
            state /= k as u64 + 1;
        }
        prop_assert_eq!(enumerate_profiles(&StratumSignature::new(1, &[zero], &poles).unwrap()).len(), before);
    }

    #[test]
    fn no_profiles_with_three_zeros(a in 1u32..5, b in 1u32..5, c in 1u32..5) {
        let total = a + b + c;
        prop_assume!(total % 2 == 0 && total >= 2);
        let s = StratumSignature::new(1, &[a, b, c], &[total]).unwrap();
        prop_assert!(enumerate_profiles(&s).is_empty());
    }

    #[test]
    fn bubbling_twice_restores_spin(spin in 0u8..2, s in -50i64..50) {
        prop_assert_eq!(bubble_spin(bubble_spin(spin, s), s), spin);
    }

    #[test]
    fn bubble_parameter_normalization_is_idempotent(a in 1u32..40, s in 1u32..41) {
        prop_assume!(s <= a + 1);
        let once = normalize_bubble_param(a, s).unwrap();
        prop_assert_eq!(normalize_bubble_param(a, once), Ok(once));
    }

    #[test]
    fn higher_genus_classification_is_stable(genus in 2u32..5, poles in prop::collection::vec(2u32..7, 1..4)) {
        let zero = poles.iter().sum::<u32>() + 2 * genus - 2;
        let s = StratumSignature::new(genus, &[zero], &poles).unwrap();
        let first = serde_json::to_string(&classify(&s).unwrap()).unwrap();
        let second = serde_json::to_string(&classify(&s).unwrap()).unwrap();
        prop_assert_eq!(&first, &second);
        let c = classify(&s).unwrap();
        let expected = if s.is_even_type() { 2 } else { 1 };
        prop_assert_eq!(c.non_hyperelliptic.len(), expected);
        prop_assert!(c.non_hyperelliptic.iter().all(|e| e.rotation.is_none() && e.count == 1));
    }
}
