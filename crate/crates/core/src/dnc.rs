//! The star-expansion engine: recursively apply the deletion /
//! dot-contraction / leaf-contraction relation on internal edges until every
//! leaf of the expansion is a star forest. Star forests are the base case and
//! contribute their component-order partition.
//!
//! Expansion is memoized on the canonical form of the forest, so identical
//! subproblems across branches collapse; the traced variant bypasses the
//! cache to expose the full ternary recursion tree.

use std::collections::{BTreeMap, HashMap};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;
use rand::Rng;

use crate::forest::{Edge, Forest};
use crate::partition::Partition;
use crate::symfunc::{Basis, SymFunc};

/// Memo cache mapping forest canonical forms to their star expansions.
/// Shareable across calls (e.g. across all candidates of a reconstruction,
/// or a whole census run).
#[derive(Default)]
pub struct DncCache {
    map: HashMap<String, SymFunc>,
}

impl DncCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

fn star_partition(f: &Forest) -> Partition {
    Partition::from_multiset(f.components().iter().map(|c| c.len()))
        .expect("component orders are positive")
}

/// The star-basis expansion of `X_F` for a forest `F`.
pub fn star_expand(f: &Forest) -> SymFunc {
    let mut cache = DncCache::new();
    star_expand_with_cache(f, &mut cache)
}

/// As [`star_expand`], memoizing into (and reusing) the supplied cache.
pub fn star_expand_with_cache(f: &Forest, cache: &mut DncCache) -> SymFunc {
    let canon = f.canonical_form();
    if let Some(hit) = cache.map.get(&canon) {
        return hit.clone();
    }
    let internal = f.internal_edges();
    let result = match internal.iter().next() {
        None => SymFunc::monomial(Basis::Star, star_partition(f)),
        // Deterministic choice: the lexicographically smallest internal edge.
        Some(&(u, v)) => {
            let del = star_expand_with_cache(&f.delete_edge(u, v).unwrap(), cache);
            let dot = star_expand_with_cache(&f.dot_contract(u, v).unwrap(), cache);
            let lc = star_expand_with_cache(&f.leaf_contract(u, v).unwrap().0, cache);
            del.sub(&dot).and_then(|x| x.add(&lc)).expect("degrees preserved")
        }
    };
    cache.map.insert(canon, result.clone());
    result
}

/// Expansion with the internal edge chosen at random each step (no memo).
/// The result must coincide with [`star_expand`]; the property suites use
/// this to exercise edge-order invariance.
pub fn star_expand_random_order<R: Rng>(f: &Forest, rng: &mut R) -> SymFunc {
    let internal: Vec<Edge> = f.internal_edges().into_iter().collect();
    if internal.is_empty() {
        return SymFunc::monomial(Basis::Star, star_partition(f));
    }
    let (u, v) = internal[rng.gen_range(0..internal.len())];
    let del = star_expand_random_order(&f.delete_edge(u, v).unwrap(), rng);
    let dot = star_expand_random_order(&f.dot_contract(u, v).unwrap(), rng);
    let lc = star_expand_random_order(&f.leaf_contract(u, v).unwrap().0, rng);
    del.sub(&dot).and_then(|x| x.add(&lc)).expect("degrees preserved")
}

/// Operation labels on the edges of a DNC tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DncOp {
    Delete,
    Dot,
    LeafContract,
}

impl DncOp {
    pub fn sign(self) -> i8 {
        match self {
            DncOp::Dot => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceNode {
    pub forest: Forest,
    pub canonical: String,
}

#[derive(Clone, Debug)]
pub struct TraceEdge {
    pub parent: usize,
    pub child: usize,
    pub op: DncOp,
    pub chosen_edge: Edge,
}

/// The full ternary expansion tree of the star-expansion algorithm.
#[derive(Clone, Debug)]
pub struct DncTrace {
    pub nodes: Vec<TraceNode>,
    pub edges: Vec<TraceEdge>,
    pub root: usize,
}

impl DncTrace {
    /// Leaf paths as (star partition of the leaf, number of dot-contractions
    /// along the path from the root).
    pub fn leaf_paths(&self) -> Vec<(Partition, usize)> {
        let mut children: Vec<Vec<&TraceEdge>> = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            children[e.parent].push(e);
        }
        let mut out = Vec::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, dots)) = stack.pop() {
            if children[v].is_empty() {
                out.push((star_partition(&self.nodes[v].forest), dots));
            } else {
                for e in &children[v] {
                    let d = dots + usize::from(e.op == DncOp::Dot);
                    stack.push((e.child, d));
                }
            }
        }
        out
    }

    /// Reconstructs coefficients from path counts: `c_lambda =
    /// (-1)^{m(lambda)} |S_lambda|`. Returns `Err` with the offending shape
    /// if two leaf paths of the same shape disagree on their dot count.
    pub fn path_coefficients(&self) -> Result<BTreeMap<Partition, BigInt>, Partition> {
        let mut per_shape: BTreeMap<Partition, (usize, usize)> = BTreeMap::new();
        for (shape, dots) in self.leaf_paths() {
            match per_shape.get_mut(&shape) {
                None => {
                    per_shape.insert(shape, (dots, 1));
                }
                Some((m, count)) => {
                    if *m != dots {
                        return Err(shape);
                    }
                    *count += 1;
                }
            }
        }
        Ok(per_shape
            .into_iter()
            .map(|(shape, (m, count))| {
                let mut c = BigInt::from(count);
                if m % 2 == 1 {
                    c = -c;
                }
                (shape, c)
            })
            .collect())
    }

    /// DOT rendering: nodes labeled by component-order multisets, edge
    /// labels showing the operation and its sign.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dnc {\n  node [shape=box];\n");
        for (i, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, star_partition(&node.forest)));
        }
        for e in &self.edges {
            let (u, v) = e.chosen_edge;
            let label = match e.op {
                DncOp::Delete => format!("\\\\ {u}-{v} (+)"),
                DncOp::Dot => format!("(.) {u}-{v} \\\\ l (-)"),
                DncOp::LeafContract => format!("(.) {u}-{v} (+)"),
            };
            out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", e.parent, e.child, label));
        }
        out.push_str("}\n");
        out
    }
}

/// Expansion that also returns the full (unmemoized) DNC tree.
pub fn star_expand_traced(f: &Forest) -> (SymFunc, DncTrace) {
    let mut trace = DncTrace {
        nodes: vec![TraceNode { forest: f.clone(), canonical: f.canonical_form() }],
        edges: Vec::new(),
        root: 0,
    };
    let result = expand_traced(0, &mut trace);
    (result, trace)
}

fn expand_traced(node: usize, trace: &mut DncTrace) -> SymFunc {
    let f = trace.nodes[node].forest.clone();
    let internal = f.internal_edges();
    let Some(&(u, v)) = internal.iter().next() else {
        return SymFunc::monomial(Basis::Star, star_partition(&f));
    };
    let mut attach = |child: Forest, op: DncOp| -> usize {
        let idx = trace.nodes.len();
        trace.nodes.push(TraceNode { canonical: child.canonical_form(), forest: child });
        trace.edges.push(TraceEdge { parent: node, child: idx, op, chosen_edge: (u, v) });
        idx
    };
    let del = attach(f.delete_edge(u, v).unwrap(), DncOp::Delete);
    let dot = attach(f.dot_contract(u, v).unwrap(), DncOp::Dot);
    let lc = attach(f.leaf_contract(u, v).unwrap().0, DncOp::LeafContract);
    let del = expand_traced(del, trace);
    let dot = expand_traced(dot, trace);
    let lc = expand_traced(lc, trace);
    del.sub(&dot).and_then(|x| x.add(&lc)).expect("degrees preserved")
}

/// The predicted hook coefficient `c_{(n-m, 1^m)} = (-1)^m C(#I(T), m)` for
/// a tree `T`.
pub fn hook_coefficient_predicted(t: &Forest, m: usize) -> BigInt {
    let k = t.internal_edges().len();
    let mut c = binomial_big(k, m);
    if m % 2 == 1 {
        c = -c;
    }
    c
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Convenience: the star expansion's coefficient as an exact integer
/// (star expansions of forests are integral).
pub fn integer_coefficient(f: &SymFunc, p: &Partition) -> BigInt {
    let c = f.coefficient(p);
    debug_assert!(c.is_integer());
    c.to_integer()
}

pub fn int_rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
