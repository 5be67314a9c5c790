//! Acceptance gate: one test per shipped guarantee. Each test is a
//! single pass/fail line in the runner output, and every timing bound
//! and expected count is pinned here as a constant.

use gyrotab::catalog::{fixture, golden_normals};
use gyrotab::doubling::{
    check_corollary, classify_normal, classify_subgyrogroup, double, generate_normal_candidates,
    DoubledGyrogroup,
};
use gyrotab::format::{parse_gyrations, parse_table, serialize_table};
use gyrotab::subalgebra::{
    enumerate_normals, enumerate_normals_generated, enumerate_subgyrogroups,
    enumerate_subgyrogroups_generated, induced_subgyrogroup, is_normal, try_quotient,
    FULL_ENUMERATION_MAX,
};
use gyrotab::{verify_axioms, ElementSubset, FiniteGyrogroup};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const FAST: Duration = Duration::from_secs(1);
const FULL_SCAN: Duration = Duration::from_secs(10);
const SCALE: Duration = Duration::from_secs(30);

/// Generator budget for orders past the full-scan limit.
const GENERATOR_BUDGET: usize = 3;

/// Swap of the two halves of each non-fixed block: (4,5)(6,7) on the
/// order-8 table, extended by (12,13)(14,15) on the doubled one.
const ORDER_8_SWAP: [usize; 8] = [0, 1, 2, 3, 5, 4, 7, 6];
const ORDER_16_SWAP: [usize; 16] = [0, 1, 2, 3, 5, 4, 7, 6, 8, 9, 10, 11, 13, 12, 15, 14];

const K1_SUBGYROGROUP_COUNT: usize = 10;
const K2_SUBGYROGROUP_COUNT: usize = 35;
const K1_NORMAL_COUNT: usize = 6;
const K2_NORMAL_COUNT: usize = 19;
const K3_GENERATED_SUB_COUNT: usize = 155;
const K3_GENERATED_NORMAL_COUNT: usize = 75;
const K3_CANDIDATE_COUNT: usize = 78;

fn data(name: &str) -> String {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn k(i: usize) -> FiniteGyrogroup {
    fixture(&format!("K{i}")).unwrap().into_gyrogroup()
}

/// Every derived gyration must match the golden listing entrywise and
/// be either the identity or the expected swap.
fn check_gyrations(g: &FiniteGyrogroup, golden_file: &str, swap: &[usize]) {
    let expected = parse_gyrations(&data(golden_file)).unwrap();
    assert_eq!(expected.len(), g.order());
    let identity: Vec<usize> = (0..g.order()).collect();
    for (a, row) in expected.iter().enumerate() {
        for (b, want) in row.iter().enumerate() {
            let derived = g.gyration(a, b).unwrap().images();
            assert_eq!(derived, want.as_slice(), "gyr[{a},{b}]");
            assert!(
                derived == identity.as_slice() || derived == swap,
                "gyr[{a},{b}] is neither the identity nor the expected swap"
            );
        }
    }
}

/// The classification parts must reassemble the classified subject.
fn check_reassembly(
    d: &DoubledGyrogroup,
    subject: &ElementSubset,
    plus_part: &ElementSubset,
    minus_part: &ElementSubset,
    pulled_back: &ElementSubset,
) {
    let rebuilt = d.embed_plus(plus_part).union(minus_part);
    assert_eq!(&rebuilt, subject, "parts do not reassemble {subject}");
    assert_eq!(
        d.phi_image_set(pulled_back),
        *minus_part,
        "pulled-back part does not map onto the minus part of {subject}"
    );
}

#[test]
fn criterion_01_axiom_verification_and_gyration_table() {
    let start = Instant::now();
    let g = k(1);
    let report = verify_axioms(g.table());
    assert!(report.valid, "{report}");
    check_gyrations(&g, "k1.gyr", &ORDER_8_SWAP);
    assert!(start.elapsed() < FAST, "took {:?}", start.elapsed());
}

#[test]
fn criterion_02_doubling_reproduces_the_golden_order_16_tables() {
    let start = Instant::now();
    let d = double(&k(1), None).unwrap();
    let golden = parse_table(&data("k2.gyro")).unwrap();
    assert_eq!(d.whole().table(), &golden.table, "operation entries differ");
    check_gyrations(d.whole(), "k2.gyr", &ORDER_16_SWAP);
    assert!(start.elapsed() < FAST, "took {:?}", start.elapsed());
}

#[test]
fn criterion_03_normal_enumeration_matches_golden_data_exactly() {
    let start = Instant::now();
    let golden1 = golden_normals("K1").unwrap();
    let found1 = enumerate_normals(&k(1)).unwrap();
    assert_eq!(found1, golden1.sets);
    assert_eq!(found1.len(), K1_NORMAL_COUNT);

    let golden2 = golden_normals("K2").unwrap();
    let found2 = enumerate_normals(&k(2)).unwrap();
    assert_eq!(found2, golden2.sets);
    assert_eq!(found2.len(), K2_NORMAL_COUNT);
    assert!(start.elapsed() < FULL_SCAN, "took {:?}", start.elapsed());
}

#[test]
fn criterion_04_normal_candidates_round_trip_on_the_order_16_double() {
    let d = double(&k(1), None).unwrap();
    let enumerated = enumerate_normals(d.whole()).unwrap();
    let mut candidates = generate_normal_candidates(&d);
    candidates.sort();
    assert_eq!(candidates, enumerated, "candidate forms miss or overshoot");
    for n in &enumerated {
        let c = classify_normal(&d, n).unwrap();
        assert!(!c.clauses.is_empty(), "{n} received no clause");
        check_reassembly(&d, n, &c.plus_part, &c.minus_part, &c.pulled_back);
    }
}

#[test]
fn criterion_05_every_subgyrogroup_of_the_double_is_classified() {
    let d = double(&k(1), None).unwrap();
    let subs = enumerate_subgyrogroups(d.whole()).unwrap();
    assert_eq!(subs.len(), K2_SUBGYROGROUP_COUNT);
    for h in &subs {
        let c = classify_subgyrogroup(&d, h).unwrap();
        assert!(!c.clauses.is_empty(), "{h} received no clause");
        check_reassembly(&d, h, &c.plus_part, &c.minus_part, &c.pulled_back);
    }
}

#[test]
fn criterion_06_plus_copy_and_embedded_normals_are_normal_in_doubles() {
    for base in [k(1), k(2)] {
        let d = double(&base, None).unwrap();
        let report = check_corollary(&d);
        assert!(report.passed(), "order {}: {report:?}", base.order());
    }
}

#[test]
fn criterion_07_triple_equality_normality_agrees_with_kernel_normality() {
    for (g, count) in [(k(1), K1_SUBGYROGROUP_COUNT), (k(2), K2_SUBGYROGROUP_COUNT)] {
        let subs = enumerate_subgyrogroups(&g).unwrap();
        assert_eq!(subs.len(), count);
        for h in subs {
            let by_triple = is_normal(&g, &h).unwrap();
            let by_kernel = try_quotient(&g, &h).is_ok();
            assert_eq!(
                by_triple,
                by_kernel,
                "disagreement on {h} (order {})",
                g.order()
            );
        }
    }
}

#[test]
fn criterion_08_degeneracy_flags_match_the_transcribed_bolding() {
    for i in 1..=3 {
        assert!(!k(i).is_degenerate(), "K{i} must not be a group");
    }
    for name in ["K1", "K2"] {
        let golden = golden_normals(name).unwrap();
        let g = fixture(name).unwrap().into_gyrogroup();
        for (set, &expected) in golden.sets.iter().zip(&golden.nondegenerate) {
            let induced = induced_subgyrogroup(&g, set).unwrap();
            assert_eq!(!induced.is_degenerate(), expected, "{name} flag for {set}");
        }
    }
}

#[test]
fn criterion_09_order_32_scale_check_with_generator_closure_enumeration() {
    let start = Instant::now();
    let g3 = k(3);
    assert_eq!(g3.order(), 32);
    assert!(
        g3.order() > FULL_ENUMERATION_MAX,
        "scale check must exercise generator mode"
    );
    assert!(verify_axioms(g3.table()).valid);

    let d = double(&k(2), None).unwrap();
    assert_eq!(d.whole(), &g3);
    assert!(check_corollary(&d).passed());

    let gen_subs = enumerate_subgyrogroups_generated(&g3, GENERATOR_BUDGET).unwrap();
    assert!(gen_subs.possibly_incomplete);
    assert_eq!(gen_subs.sets.len(), K3_GENERATED_SUB_COUNT);
    let discovered: BTreeSet<ElementSubset> = enumerate_normals_generated(&g3, GENERATOR_BUDGET)
        .unwrap()
        .sets
        .into_iter()
        .collect();
    assert_eq!(discovered.len(), K3_GENERATED_NORMAL_COUNT);

    let candidates: BTreeSet<ElementSubset> = generate_normal_candidates(&d).into_iter().collect();
    assert_eq!(candidates.len(), K3_CANDIDATE_COUNT);
    for c in &candidates {
        assert!(is_normal(&g3, c).unwrap(), "candidate {c} is not normal");
    }
    assert!(
        discovered.is_subset(&candidates),
        "a discovered normal is not a candidate"
    );
    let generated_family: BTreeSet<ElementSubset> = gen_subs.sets.into_iter().collect();
    let restricted: BTreeSet<ElementSubset> = candidates
        .intersection(&generated_family)
        .cloned()
        .collect();
    assert_eq!(
        restricted, discovered,
        "candidates restricted to generated sets differ"
    );
    assert!(start.elapsed() < SCALE, "took {:?}", start.elapsed());
}

#[test]
fn criterion_10_parse_serialize_round_trip_and_golden_bytes() {
    for name in ["k1.gyro", "k2.gyro"] {
        let text = data(name);
        let doc = parse_table(&text).unwrap();
        assert_eq!(serialize_table(&doc), text, "{name} round trip");
    }
    let d = double(&k(1), None).unwrap();
    let doc = gyrotab::format::TableDocument {
        table: d.whole().table().clone(),
        labels: None,
    };
    assert_eq!(
        serialize_table(&doc),
        data("k2.gyro"),
        "doubled table bytes differ"
    );
}
