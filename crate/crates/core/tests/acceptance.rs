//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`; failures also panic).

use num::bigint::BigInt;
use num::rational::BigRational;

use csf_core::analysis::{
    internal_component_orders, leading_partition, predicted_leading,
};
use csf_core::dnc::{star_expand, star_expand_with_cache, DncCache};
use csf_core::forest::enumerate_trees;
use csf_core::oracle::power_csf;
use csf_core::reconstruct::{reconstruct, DiameterClass};
use csf_core::suite::{conjecture_census, run_suite};
use csf_core::{Forest, Partition, SymFunc};

fn check(name: &str, ok: bool) {
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}");
}

fn fixture(n: usize, edges: &[(usize, usize)]) -> Forest {
    Forest::new(n, edges.iter().copied()).unwrap()
}

fn expansion_matches(t: &Forest, expected: &[(&[usize], i64)]) -> bool {
    let x = star_expand(t);
    x.term_count() == expected.len()
        && expected.iter().all(|&(parts, c)| {
            x.coefficient(&Partition::new(parts))
                == BigRational::from_integer(BigInt::from(c))
        })
}

fn example_tree() -> Forest {
    fixture(7, &[(1, 2), (2, 3), (2, 4), (2, 5), (5, 6), (6, 7)])
}

fn spider() -> Forest {
    fixture(7, &[(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 7)])
}

fn ten_vertex_tree() -> Forest {
    fixture(
        10,
        &[(1, 2), (1, 3), (4, 5), (4, 6), (7, 8), (9, 10), (1, 4), (1, 7), (1, 9)],
    )
}

fn seventeen_vertex_tree() -> Forest {
    fixture(
        17,
        &[
            (1, 2), (1, 3), (1, 4), (1, 5),
            (6, 7), (6, 8), (6, 9),
            (10, 11), (10, 12),
            (13, 14), (13, 15),
            (16, 17),
            (6, 1), (6, 10), (6, 13), (6, 16),
        ],
    )
}

/// Stars of orders 9,7,6,5,4,3,2; center adjacencies 9-7, 9-6, 6-5, 6-4,
/// 4-3, 4-2. All leaf-component orders distinct, no deep vertices.
fn thirty_six_vertex_tree() -> Forest {
    let orders = [9usize, 7, 6, 5, 4, 3, 2];
    let mut centers = Vec::new();
    let mut edges = Vec::new();
    let mut next = 1;
    for &k in &orders {
        centers.push(next);
        for leaf in next + 1..next + k {
            edges.push((next, leaf));
        }
        next += k;
    }
    for (a, b) in [(0usize, 1usize), (0, 2), (2, 3), (2, 4), (4, 5), (4, 6)] {
        edges.push((centers[a], centers[b]));
    }
    fixture(36, &edges)
}

#[test]
fn fixture_expansions_exact() {
    let ok = expansion_matches(
        &example_tree(),
        &[
            (&[4, 2, 1], -1),
            (&[4, 3], 1),
            (&[5, 1, 1], 1),
            (&[5, 2], 1),
            (&[6, 1], -2),
            (&[7], 1),
        ],
    ) && expansion_matches(
        &spider(),
        &[
            (&[2, 2, 2, 1], -2),
            (&[3, 2, 1, 1], 3),
            (&[3, 2, 2], 3),
            (&[4, 1, 1, 1], -1),
            (&[4, 2, 1], -6),
            (&[5, 1, 1], 3),
            (&[5, 2], 3),
            (&[6, 1], -3),
            (&[7], 1),
        ],
    ) && expansion_matches(
        &ten_vertex_tree(),
        &[
            (&[3, 3, 2, 2], 1),
            (&[4, 3, 2, 1], -2),
            (&[5, 2, 2, 1], -1),
            (&[5, 3, 1, 1], 1),
            (&[5, 3, 2], 2),
            (&[6, 2, 1, 1], 2),
            (&[6, 2, 2], 1),
            (&[6, 3, 1], -2),
            (&[7, 1, 1, 1], -1),
            (&[7, 2, 1], -4),
            (&[7, 3], 1),
            (&[8, 1, 1], 3),
            (&[8, 2], 2),
            (&[9, 1], -3),
            (&[10], 1),
        ],
    ) && expansion_matches(
        &seventeen_vertex_tree(),
        &[
            (&[5, 4, 3, 3, 2], 1),
            (&[5, 5, 3, 3, 1], -1),
            (&[6, 5, 3, 2, 1], -2),
            (&[6, 5, 3, 3], 1),
            (&[7, 5, 3, 1, 1], 2),
            (&[7, 5, 3, 2], 2),
            (&[8, 3, 3, 2, 1], -1),
            (&[8, 5, 2, 1, 1], 1),
            (&[8, 5, 3, 1], -4),
            (&[9, 3, 3, 1, 1], 1),
            (&[9, 3, 3, 2], 1),
            (&[9, 5, 1, 1, 1], -1),
            (&[9, 5, 2, 1], -2),
            (&[9, 5, 3], 2),
            (&[10, 3, 2, 1, 1], 2),
            (&[10, 3, 3, 1], -2),
            (&[10, 5, 1, 1], 3),
            (&[10, 5, 2], 1),
            (&[11, 3, 1, 1, 1], -2),
            (&[11, 3, 2, 1], -4),
            (&[11, 3, 3], 1),
            (&[11, 5, 1], -3),
            (&[12, 2, 1, 1, 1], -1),
            (&[12, 3, 1, 1], 6),
            (&[12, 3, 2], 2),
            (&[12, 5], 1),
            (&[13, 1, 1, 1, 1], 1),
            (&[13, 2, 1, 1], 3),
            (&[13, 3, 1], -6),
            (&[14, 1, 1, 1], -4),
            (&[14, 2, 1], -3),
            (&[14, 3], 2),
            (&[15, 1, 1], 6),
            (&[15, 2], 1),
            (&[16, 1], -4),
            (&[17], 1),
        ],
    );
    check("fixture expansions exact (4 pinned star expansions)", ok);
}

#[test]
fn oracle_equivalence_all_trees_n9() {
    let mut cache = DncCache::new();
    let mut trees = 0usize;
    let mut ok = true;
    for n in 1..=9 {
        for t in enumerate_trees(n) {
            trees += 1;
            let via_star = star_expand_with_cache(&t, &mut cache).to_power().unwrap();
            ok &= via_star.equals(&power_csf(&t));
        }
    }
    // cumulative free-tree count for n <= 9
    ok &= trees == 95;
    check("oracle equivalence on all 95 trees with n <= 9", ok);
}

#[test]
fn leading_term_theorem_n10() {
    let report = run_suite("lead", 10, 0).unwrap();
    check("leading partition and coefficient on all trees n <= 10", report.passed());
}

#[test]
fn hook_coefficients_n10() {
    let report = run_suite("hooks", 10, 0).unwrap();
    check("hook coefficients c_(n-m,1^m) on all trees n <= 10", report.passed());
}

#[test]
fn adjacency_and_membership_n12() {
    let adj = run_suite("adjacency", 12, 0).unwrap();
    let int = run_suite("internal", 12, 0).unwrap();
    check(
        "adjacency multisets and internal-component membership, diameter-4/5 trees n <= 12",
        adj.passed() && int.passed(),
    );
}

#[test]
fn reconstruction_roundtrip_n13_and_large_fixtures() {
    let report = run_suite("reconstruct", 13, 0).unwrap();
    let mut ok = report.passed();

    let t17 = seventeen_vertex_tree();
    let r17 = reconstruct(&star_expand(&t17)).unwrap();
    ok &= r17.verified && r17.tree.is_isomorphic(&t17);
    ok &= r17.diameter_class == DiameterClass::Diam4;

    let t36 = thirty_six_vertex_tree();
    let f36 = star_expand(&t36);
    // pinned leading data of the 36-vertex example
    let (lead, coeff) = leading_partition(&f36).unwrap();
    ok &= lead == Partition::new(&[9, 7, 6, 5, 4, 3, 2]) && coeff == BigInt::from(1);
    ok &= predicted_leading(&t36) == (lead, BigInt::from(1));
    let r36 = reconstruct(&f36).unwrap();
    ok &= r36.verified && r36.tree.is_isomorphic(&t36);
    ok &= r36.diameter_class == DiameterClass::DistinctParts;

    check(
        "reconstruction round trip, diameter <= 5 trees n <= 13 plus 17- and 36-vertex fixtures",
        ok,
    );
}

#[test]
fn census_no_collisions_n12() {
    let report = conjecture_census(12).unwrap();
    check(
        "census: no CSF collisions among the 987 trees with n <= 12",
        report.passed() && report.classes_checked == 987,
    );
}

#[test]
fn edge_order_invariance_and_step_identity() {
    let report = run_suite("edge-order", 10, 0xC5F).unwrap();
    check(
        "edge-order invariance and three-term identity, exhaustive n <= 8 plus 500 seeded samples",
        report.passed(),
    );
}

#[test]
fn trace_consistency_n8() {
    let report = run_suite("trace", 8, 0).unwrap();
    check("trace path/dot-count consistency on all trees n <= 8", report.passed());
}

#[test]
fn membership_example_values() {
    // Spot values used throughout: N(p) on the 10-vertex fixture.
    let f = star_expand(&ten_vertex_tree());
    let n3 = csf_core::analysis::n_of_p(&f, 3).unwrap();
    let n2 = csf_core::analysis::n_of_p(&f, 2).unwrap();
    let orders = internal_component_orders(&f).unwrap();
    check(
        "membership statistics on the 10-vertex fixture (N(3)=4, N(2)=2, inside orders [3])",
        n3 == BigInt::from(4) && n2 == BigInt::from(2) && orders == vec![3],
    );
}

#[test]
fn wire_format_roundtrip() {
    let f = star_expand(&example_tree());
    let ok = SymFunc::from_json_str(&f.to_json_string()).unwrap().equals(&f)
        && f.to_string() == "-st(4,2,1) + st(4,3) + st(5,1,1) + st(5,2) - 2 st(6,1) + st(7)";
    check("wire format and display round trip", ok);
}
