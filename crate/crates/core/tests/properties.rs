//! Randomized invariants over Prüfer-sampled trees and random coefficient
//! vectors.

use num::bigint::BigInt;
use num::rational::BigRational;
use proptest::prelude::*;

use csf_core::dnc::star_expand;
use csf_core::forest::tree_from_pruefer;
use csf_core::oracle::power_csf;
use csf_core::{Basis, Partition, SymFunc};

fn arb_tree(max_n: usize) -> impl Strategy<Value = csf_core::Forest> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(1..=n, n - 2).prop_map(move |seq| tree_from_pruefer(n, &seq))
    })
}

fn arb_star_func(n: usize) -> impl Strategy<Value = SymFunc> {
    let shapes = Partition::all_of(n);
    proptest::collection::vec(-5i64..=5, shapes.len()).prop_map(move |coeffs| {
        SymFunc::from_terms(
            Basis::Star,
            n,
            shapes
                .iter()
                .cloned()
                .zip(coeffs.into_iter().map(|c| BigRational::from_integer(BigInt::from(c)))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn star_expansion_matches_oracle(t in arb_tree(8)) {
        let via_star = star_expand(&t).to_power().unwrap();
        prop_assert!(via_star.equals(&power_csf(&t)));
    }

    #[test]
    fn expansion_is_relabeling_invariant(t in arb_tree(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = t.vertex_count();
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let mut lookup = vec![0usize; n + 1];
        for (i, &p) in perm.iter().enumerate() {
            lookup[i + 1] = p;
        }
        let relabeled = t.relabel(&lookup).unwrap();
        prop_assert_eq!(t.canonical_form(), relabeled.canonical_form());
        prop_assert!(star_expand(&t).equals(&star_expand(&relabeled)));
    }

    #[test]
    fn basis_conversion_roundtrips(f in arb_star_func(7)) {
        let back = f.to_power().unwrap().to_star().unwrap();
        prop_assert!(back.equals(&f));
    }

    #[test]
    fn wire_format_roundtrips(f in arb_star_func(6)) {
        let parsed = SymFunc::from_json_str(&f.to_json_string()).unwrap();
        prop_assert!(parsed.equals(&f));
    }

    #[test]
    fn specialization_counts_colorings(t in arb_tree(7), k in 2usize..=4) {
        let x = star_expand(&t).to_power().unwrap();
        prop_assert_eq!(
            x.evaluate_at_ones(k).unwrap(),
            BigRational::from_integer(csf_core::oracle::chromatic_count(&t, k))
        );
    }
}
