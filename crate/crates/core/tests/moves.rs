mod support;

use strata_core::{
    adjust_pair, apply_raw, battery_signatures, build_move_graph, enumerate_boundary, insert_pole, recovers_source,
    t1_move, t2_move, trace, Direction, MoveError, MoveKind, StratumSignature, TwoLevelDatum, DEFAULT_MAX_RAW,
};
use support::{datum_by_regions, identity, sig};

fn every_datum(texts: &[&str]) -> Vec<TwoLevelDatum> {
    texts.iter().flat_map(|t| enumerate_boundary(&sig(t), DEFAULT_MAX_RAW).unwrap()).collect()
}

fn members(x: &TwoLevelDatum) -> Vec<(i64, i64)> {
    x.class_orbit().into_iter().map(|(u, v)| (i64::from(u), i64::from(v))).collect()
}

/// Every pole on top in the given region order, on `(2n+2, -2^(n-1), -4)`, with `C = (1, ..., 1, 2)` and class `(0, v)`.
fn all_top_datum(n: usize, order: &[usize], v: i64) -> TwoLevelDatum {
    let mut poles = vec![2; n - 1];
    poles.push(4);
    let s = StratumSignature::new(1, &[2 * n as u32 + 2], &poles).unwrap();
    let mut region_c = vec![1; n - 1];
    region_c.push(2);
    datum_by_regions(&s, n, order, &region_c, (0, v))
}

#[test]
fn exceptional_composite_reaches_the_cycle() {
    let e = sig("1:12;3^4");
    let x_id = datum_by_regions(&e, 4, &identity(4), &[1, 1, 2, 2], (0, 3));
    let first = apply_raw(MoveKind::T1, &x_id, (3, 0)).unwrap();
    let second = t2_move(&first.datum, (0, 2)).unwrap();
    let x_cycle = datum_by_regions(&e, 4, &[2, 0, 1, 3], &[1, 1, 2, 2], (0, 3));
    assert_eq!(x_cycle.c_vec(), &[1, 2, 1, 2]);
    assert_eq!(second, x_cycle.canonical_form());
}

#[test]
fn all_top_composite_leaves_the_class_at_its_second_step() {
    for n in [3, 5] {
        for v in (0..n as i64 - 1).step_by(2) {
            let x = all_top_datum(n, &identity(n), v);
            let first = apply_raw(MoveKind::T2, &x, (-1, v + 1)).unwrap();
            let second = apply_raw(MoveKind::T1, &first.datum, (v, 1));
            assert!(matches!(second, Err(MoveError::NotInClass(_))), "n={n} v={v}");
        }
    }
}

#[test]
fn all_top_composite_endpoints_share_a_component() {
    for n in [3, 5] {
        let data = enumerate_boundary(&all_top_datum(n, &identity(n), 0).sig().clone(), DEFAULT_MAX_RAW).unwrap();
        let graph = build_move_graph(data).unwrap();
        let labels = graph.component_labels();
        let label = |x: &TwoLevelDatum| {
            let key = x.canonical_form().key();
            labels[graph.data.iter().position(|y| y.key() == key).unwrap()]
        };
        for v in (0..n - 1).step_by(2) {
            let mut cycle: Vec<usize> = (1..=v).collect();
            cycle.push(0);
            cycle.extend(v + 1..n);
            let source = all_top_datum(n, &identity(n), v as i64);
            let target = all_top_datum(n, &cycle, 0);
            assert_eq!(label(&source), label(&target), "n={n} v={v}");
        }
    }
}

#[test]
fn moves_stay_in_the_stratum_and_keep_rotation() {
    for x in every_datum(&["1:6;2^3", "1:12;3^4", "1:10;2,3,5", "1:14;2,4,4,4"]) {
        for element in members(&x) {
            for kind in [MoveKind::T1, MoveKind::T2] {
                match apply_raw(kind, &x, element) {
                    Ok(out) => {
                        assert_eq!(out.datum.sig(), x.sig());
                        assert_eq!(out.datum.rotation_number(), x.rotation_number(), "{kind} {x} {element:?}");
                        let rebuilt = strata_core::make_datum(
                            x.sig(),
                            out.datum.t(),
                            out.datum.tau(),
                            out.datum.c_vec(),
                            (i64::from(out.marked.0), i64::from(out.marked.1)),
                        );
                        assert_eq!(rebuilt.unwrap(), out.datum);
                    }
                    Err(MoveError::Horizontal { t }) => assert_eq!((kind, t), (MoveKind::T2, out_t(&x, element))),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

fn out_t(x: &TwoLevelDatum, element: (i64, i64)) -> usize {
    let (_, _, j) = x.normalize_at(element);
    assert_eq!(j, x.t());
    j
}

#[test]
fn t1_total_angle_identity() {
    let mut checked = 0;
    for x in every_datum(&["1:6;3,3", "1:12;3^4", "1:10;2,3,5"]).into_iter().filter(|x| x.t() == x.n()) {
        for element in members(&x) {
            let (y, (u, v), j) = x.normalize_at(element);
            let Ok(out) = apply_raw(MoveKind::T1, &x, element) else { continue };
            let (cs, ds, t) = (y.c_prefix(), y.d_prefix(), y.t());
            let expected = i64::from(u) + i64::from(v) + i64::from(cs[x.n()])
                - i64::from(cs[t])
                - i64::from(cs[j - 1])
                - i64::from(ds[j - 1]);
            assert!(
                [out.datum.q1(), out.datum.q2()].contains(&(expected as u32)),
                "{x} at {element:?}: {expected} vs {}",
                out.datum
            );
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn t2_outputs_balance_against_top_orders() {
    for x in every_datum(&["1:6;3,3"]) {
        for element in members(&x) {
            let Ok(out) = apply_raw(MoveKind::T2, &x, element) else { continue };
            let b = x.sig().pole_orders();
            let top: u32 = out.datum.tau()[..out.datum.t()].iter().map(|&p| b[p]).sum();
            assert_eq!(out.datum.q1() + out.datum.q2(), top);
        }
    }
}

#[test]
fn horizontal_target_is_reported() {
    let x = datum_by_regions(&sig("1:8;3,5"), 2, &identity(2), &[1, 2], (0, 0));
    let element = (i64::from(x.q1()), 3);
    assert_eq!(apply_raw(MoveKind::T2, &x, element).unwrap_err(), MoveError::Horizontal { t: 2 });
    assert!(t1_move(&x, element).is_ok());
}

#[test]
fn all_two_strata_admit_no_angle_adjustment() {
    for x in every_datum(&["1:6;2^3"]) {
        for element in members(&x) {
            for direction in [Direction::Up, Direction::Down] {
                assert!(matches!(adjust_pair(&x, element, direction), Err(MoveError::Precondition(_))));
            }
            let y = t1_move(&x, element).unwrap();
            assert!([1, 2].contains(&y.rotation_number()));
            assert_eq!(y.rotation_number(), x.rotation_number());
        }
    }
}

#[test]
fn adjusted_pairs_share_their_first_move() {
    let e = sig("1:12;3^4");
    let x = datum_by_regions(&e, 4, &identity(4), &[1, 2, 2, 1], (0, 0));
    let mut applied = 0;
    for element in members(&x) {
        for direction in [Direction::Up, Direction::Down] {
            let Ok(out) = adjust_pair(&x, element, direction) else { continue };
            let changed: Vec<i64> = (0..4)
                .map(|p| i64::from(out.datum.c_vec()[p]) - i64::from(x.c_vec()[p]))
                .filter(|&delta| delta != 0)
                .collect();
            assert_eq!(changed.len(), 2);
            assert_eq!(changed.iter().sum::<i64>(), 0);
            applied += 1;
        }
    }
    assert!(applied > 0);
    let mut checked = 0;
    for s in battery_signatures() {
        for x in enumerate_boundary(&s, DEFAULT_MAX_RAW).unwrap() {
            for element in members(&x) {
                let Ok(up) = adjust_pair(&x, element, Direction::Up) else { continue };
                let (u, v) = (i64::from(up.normalized.0), i64::from(up.normalized.1));
                assert_eq!(t1_move(&up.datum, (u - 1, v + 1)).unwrap(), t1_move(&up.source, (u, v)).unwrap());
                let back = adjust_pair(&up.datum, (u, v), Direction::Down).unwrap();
                assert_eq!(back.datum.canonical_form(), x.canonical_form());
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "only {checked} cases");
}

#[test]
fn insertion_promotes_one_pole() {
    let five = sig("1:8;3,5");
    let x = datum_by_regions(&five, 1, &identity(2), &[1, 3], (0, 0));
    assert!(matches!(insert_pole(&x, 0), Err(MoveError::Precondition(_))));
    let y = datum_by_regions(&five, 1, &identity(2), &[1, 1], (0, 1));
    let z = insert_pole(&y, 1).unwrap();
    assert_eq!(z.t(), 2);
    assert_eq!(unordered(&z), sorted_pair(y.q1() + 5, y.q2()));

    let mut inserted = 0;
    for s in battery_signatures() {
        for x in enumerate_boundary(&s, DEFAULT_MAX_RAW).unwrap().into_iter().filter(|x| x.t() < x.n()) {
            let promoted = x.sig().pole_orders()[x.tau()[x.t()]];
            for (u, v) in members(&x).into_iter().filter(|&(u, _)| u == 0) {
                match insert_pole(&x, v) {
                    Ok(z) => {
                        assert_eq!(z.t(), x.t() + 1);
                        assert_eq!(unordered(&z), sorted_pair(x.q1() + promoted, x.q2()), "{x} at ({u},{v})");
                        assert_eq!(z.rotation_number(), x.rotation_number());
                        inserted += 1;
                    }
                    Err(MoveError::Precondition(_)) => {
                        assert!(x.d_prefix()[..=x.t()].contains(&(v as u32)));
                    }
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert!(inserted > 100, "only {inserted} insertions");
}

/// Canonical forms may exchange the nodes, which swaps the two prong counts.
fn unordered(x: &TwoLevelDatum) -> (u32, u32) {
    sorted_pair(x.q1(), x.q2())
}

fn sorted_pair(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

#[test]
fn round_trip_from_the_assigned_prong() {
    let mut literal = [0usize; 2];
    let mut shifted = [0usize; 2];
    let mut total = [0usize; 2];
    for x in every_datum(&["1:6;2^3", "1:6;3,3", "1:12;3^4", "1:10;2,3,5"]) {
        for element in members(&x) {
            for (k, kind) in [MoveKind::T1, MoveKind::T2].into_iter().enumerate() {
                match recovers_source(kind, &x, element, 0) {
                    Ok(ok) => {
                        total[k] += 1;
                        literal[k] += usize::from(ok);
                        shifted[k] += usize::from(recovers_source(kind, &x, element, 1).unwrap());
                    }
                    Err(MoveError::Horizontal { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert_eq!(shifted, total);
    assert!(literal[0] < total[0] && literal[1] < total[1]);
}

#[test]
fn trace_renders_one_line_per_move() {
    let e = sig("1:12;3^4");
    let x_id = datum_by_regions(&e, 4, &identity(4), &[1, 1, 2, 2], (0, 3));
    let (end, lines) = trace(&x_id, &[(MoveKind::T1, (3, 0)), (MoveKind::T2, (0, 2))]).unwrap();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with(r#"T1 (3,0): {"t":4,"tau":[1,2,3,4],"C":[1,1,2,2],"pr":{"u":0,"v":3}} -> "#));
    assert!(lines[1].starts_with("T2 (0,2): "));
    assert_eq!(end.canonical_form(), datum_by_regions(&e, 4, &[2, 0, 1, 3], &[1, 1, 2, 2], (0, 3)).canonical_form());
}
