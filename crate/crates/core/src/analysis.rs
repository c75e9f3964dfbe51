//! Extraction of reconstruction evidence from a star-basis CSF: leading
//! partition and coefficient, adjacency multisets `E_mu`, the `N(p)`
//! statistics, and membership of leaf components in the internal subgraph.
//! Each quantity can also be predicted structurally from a tree, which the
//! verification suites cross-check against the extracted values.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::dnc::{hook_coefficient_predicted, integer_coefficient};
use crate::forest::Forest;
use crate::partition::Partition;
use crate::symfunc::{Basis, SymFunc};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("expected a star-basis function")]
    NotStarBasis,
    #[error("the zero function has no leading partition")]
    ZeroFunction,
    #[error("{0} is not a part of the leading partition {1}")]
    NotALeadingPart(usize, Partition),
}

/// The leading partition (lexicographically smallest with nonzero
/// coefficient) and its coefficient.
pub fn leading_partition(f: &SymFunc) -> Result<(Partition, BigInt), AnalysisError> {
    if f.basis() != Basis::Star {
        return Err(AnalysisError::NotStarBasis);
    }
    // Terms iterate in increasing lexicographic order.
    let (p, c) = f.terms().next().ok_or(AnalysisError::ZeroFunction)?;
    debug_assert!(c.is_integer());
    Ok((p.clone(), c.to_integer()))
}

/// The structurally predicted leading data of a forest: `lambda_LC` and
/// `(-1)^m prod (deg(u_i) - 1)` over the deep vertices `u_i`.
pub fn predicted_leading(f: &Forest) -> (Partition, BigInt) {
    let deep = f.deep_vertices();
    let mut coeff = BigInt::one();
    for &u in &deep {
        coeff *= BigInt::from(f.degree(u).unwrap() - 1);
    }
    if deep.len() % 2 == 1 {
        coeff = -coeff;
    }
    (f.leaf_component_partition(), coeff)
}

/// One adjacency entry: a qualifying term `c_mu st_mu` together with the
/// multiset difference `E_mu = lambda_lead - mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyEntry {
    pub mu: Partition,
    pub coeff: BigInt,
    pub pair: Vec<usize>,
}

/// All adjacency multisets of a star-basis CSF: for every `mu` of length
/// `l(lambda_lead) - 1` with no part 1 and nonzero coefficient, the multiset
/// `lambda_lead - mu` together with `c_mu`.
pub fn adjacency_multisets(f: &SymFunc) -> Result<Vec<AdjacencyEntry>, AnalysisError> {
    let (lead, _) = leading_partition(f)?;
    let want_len = lead.len().saturating_sub(1);
    let mut out = Vec::new();
    for (mu, c) in f.terms() {
        if mu.len() != want_len || mu.multiplicity(1) != 0 || c.is_zero() {
            continue;
        }
        out.push(AdjacencyEntry {
            mu: mu.clone(),
            coeff: integer_coefficient(f, mu),
            pair: lead.multiset_difference(mu),
        });
    }
    Ok(out)
}

/// `N(p) = sum m_p(E_mu) * c_mu` over the qualifying `mu`.
pub fn n_of_p(f: &SymFunc, p: usize) -> Result<BigInt, AnalysisError> {
    let (lead, _) = leading_partition(f)?;
    if !lead.contains(p) {
        return Err(AnalysisError::NotALeadingPart(p, lead));
    }
    let mut total = BigInt::zero();
    for entry in adjacency_multisets(f)? {
        let mult = entry.pair.iter().filter(|&&x| x == p).count();
        total += BigInt::from(mult) * entry.coeff;
    }
    Ok(total)
}

/// The orders of the leaf components contained in the internal subgraph, as
/// read off the CSF: each part `p > 1` with `N(p) > m_p` is reported once,
/// and leaf components of order 1 (one per 1 in the leading partition) are
/// always inside.
pub fn internal_component_orders(f: &SymFunc) -> Result<Vec<usize>, AnalysisError> {
    let (lead, _) = leading_partition(f)?;
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &p in lead.parts() {
        if p == 1 {
            out.push(1);
        } else if seen.insert(p) && n_of_p(f, p)? > BigInt::from(lead.multiplicity(p)) {
            out.push(p);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Checks every hook coefficient `c_{(n-m, 1^m)}` against the predicted
/// `(-1)^m C(#I(t), m)`.
pub fn hook_check(f: &SymFunc, t: &Forest) -> bool {
    let n = t.vertex_count();
    (0..n).all(|m| {
        let mut parts = vec![n - m];
        parts.extend(std::iter::repeat_n(1, m));
        let hook = Partition::from_multiset(parts).unwrap();
        integer_coefficient(f, &hook) == hook_coefficient_predicted(t, m)
    })
}

/// Structural counterpart of the adjacency multisets: the multiset of
/// unordered order pairs `{p, q}` over internal edges joining the centers of
/// two leaf components. Keys are `(min, max)` pairs, values multiplicities.
pub fn structural_adjacency_pairs(t: &Forest) -> BTreeMap<(usize, usize), usize> {
    let lc = t.leaf_components();
    let mut out = BTreeMap::new();
    for &(u, v) in &lc.internal_edges {
        let cu = lc.component_of(u);
        let cv = lc.component_of(v);
        if cu.center == u && cv.center == v {
            let key = (cu.order.min(cv.order), cu.order.max(cv.order));
            *out.entry(key).or_insert(0) += 1;
        }
    }
    out
}

/// Structural counterpart of [`internal_component_orders`]: the orders of
/// the leaf components fully contained in the internal subgraph.
pub fn structural_internal_orders(t: &Forest) -> Vec<usize> {
    let (verts, _) = t.internal_subgraph().expect("tree input");
    let lc = t.leaf_components();
    let mut out: Vec<usize> = lc
        .components
        .iter()
        .filter(|c| c.members.iter().all(|v| verts.contains(v)))
        .map(|c| c.order)
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// JSON report for the `analyze` CLI subcommand.
#[derive(Serialize)]
pub struct AdjacencyReport {
    pub leading: Partition,
    pub leading_coeff: String,
    pub pairs: Vec<AdjacencyReportEntry>,
    pub n_values: BTreeMap<usize, String>,
    /// True when the leading partition has no 1s, i.e. the input is within
    /// the no-deep-vertices hypothesis of the membership theorem.
    pub within_guarantee: bool,
}

#[derive(Serialize)]
pub struct AdjacencyReportEntry {
    pub mu: Partition,
    pub coeff: String,
    #[serde(rename = "E")]
    pub pair: Vec<usize>,
}

pub fn adjacency_report(f: &SymFunc) -> Result<AdjacencyReport, AnalysisError> {
    let (leading, leading_coeff) = leading_partition(f)?;
    let pairs = adjacency_multisets(f)?
        .into_iter()
        .map(|e| AdjacencyReportEntry {
            mu: e.mu,
            coeff: e.coeff.to_string(),
            pair: e.pair,
        })
        .collect();
    let mut n_values = BTreeMap::new();
    for &p in leading.parts() {
        n_values.entry(p).or_insert_with(|| n_of_p(f, p).unwrap().to_string());
    }
    Ok(AdjacencyReport {
        within_guarantee: leading.multiplicity(1) == 0,
        leading,
        leading_coeff: leading_coeff.to_string(),
        pairs,
        n_values,
    })
}
