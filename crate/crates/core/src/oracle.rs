//! Independent ground-truth CSF computation, used to validate the DNC
//! engine and the basis conversion. The power-basis expansion enumerates all
//! edge subsets directly and is kept deliberately naive: `2^{|E|}` terms is
//! trivial at desk scale and shares nothing with the star-expansion path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

use crate::forest::Forest;
use crate::partition::Partition;
use crate::symfunc::{Basis, SymFunc};

/// The power-basis CSF by subset expansion:
/// `X_G = sum_{S subseteq E} (-1)^{|S|} p_{lambda(S)}`, where `lambda(S)` is
/// the component-order partition of the spanning subgraph `(V, S)`.
pub fn power_csf(f: &Forest) -> SymFunc {
    let edges: Vec<(usize, usize)> = f.edges().collect();
    let n = f.vertex_count();
    assert!(edges.len() < 26, "subset expansion oracle is for small graphs");
    let mut terms: Vec<(Partition, BigRational)> = Vec::new();
    for mask in 0u32..(1u32 << edges.len()) {
        let lam = component_partition(n, &edges, mask);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        terms.push((lam, BigRational::from_integer(BigInt::from(sign))));
    }
    SymFunc::from_terms(Basis::Power, n, terms).expect("subsets span degree n")
}

fn component_partition(n: usize, edges: &[(usize, usize)], mask: u32) -> Partition {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        if mask & (1 << i) != 0 {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
    }
    let mut size = vec![0usize; n + 1];
    for v in 1..=n {
        size[find(&mut parent, v)] += 1;
    }
    Partition::from_multiset(size.into_iter().filter(|&s| s > 0)).unwrap()
}

/// Number of proper colorings of `f` with colors `{1..k}`, by rooted tree DP
/// per component: the root takes any of `k` colors and every further vertex
/// any color different from its parent's.
pub fn chromatic_count(f: &Forest, k: usize) -> BigInt {
    let mut total = BigInt::one();
    for comp in f.components() {
        let mut count = BigInt::from(k);
        for _ in 1..comp.len() {
            count *= BigInt::from(k.saturating_sub(1));
        }
        total *= count;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dnc::star_expand;
    use crate::forest::enumerate_trees;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn p3_by_hand() {
        let p3 = Forest::path(3);
        let x = power_csf(&p3);
        assert_eq!(x.coefficient(&Partition::new(&[1, 1, 1])), int(1));
        assert_eq!(x.coefficient(&Partition::new(&[2, 1])), int(-2));
        assert_eq!(x.coefficient(&Partition::new(&[3])), int(1));
        assert_eq!(x.term_count(), 3);
    }

    #[test]
    fn single_vertex() {
        let f = Forest::new(1, []).unwrap();
        assert_eq!(power_csf(&f), SymFunc::monomial(Basis::Power, Partition::new(&[1])));
    }

    #[test]
    fn matches_dnc_on_example_tree() {
        let t = Forest::new(7, [(1, 2), (2, 3), (2, 4), (2, 5), (5, 6), (6, 7)]).unwrap();
        assert_eq!(star_expand(&t).to_power().unwrap(), power_csf(&t));
    }

    #[test]
    fn chromatic_count_examples() {
        let st3 = Forest::star(3);
        assert_eq!(chromatic_count(&st3, 2), BigInt::from(2));
        for t in enumerate_trees(6) {
            for k in 1..=4usize {
                let expected = if k == 1 {
                    BigInt::from(0)
                } else {
                    BigInt::from(k) * BigInt::from(k - 1).pow(5)
                };
                assert_eq!(chromatic_count(&t, k), expected);
            }
        }
    }

    #[test]
    fn specialization_matches_coloring_count() {
        for n in 1..=7 {
            for t in enumerate_trees(n) {
                let x = power_csf(&t);
                for k in 2..=4usize {
                    assert_eq!(
                        x.evaluate_at_ones(k).unwrap(),
                        BigRational::from_integer(chromatic_count(&t, k)),
                    );
                }
            }
        }
    }

    #[test]
    fn multiplicative_over_disjoint_union() {
        let two_p3 = Forest::new(6, [(1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        let p3 = Forest::path(3);
        assert_eq!(power_csf(&two_p3), power_csf(&p3).multiply(&power_csf(&p3)).unwrap());
    }
}
