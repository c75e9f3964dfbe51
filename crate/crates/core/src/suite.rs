//! Verification suites and the conjecture census.
//!
//! Each suite checks one family of structural invariants over every tree up
//! to a vertex bound (exhaustive enumeration, with seeded random sampling
//! where noted) and returns a deterministic report. The census groups trees
//! by star expansion and reports any pair of non-isomorphic trees sharing a
//! CSF; it is expected to find none below 30 vertices.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{
    adjacency_multisets, hook_check, internal_component_orders, leading_partition,
    predicted_leading, structural_adjacency_pairs, structural_internal_orders,
};
use crate::dnc::{
    star_expand, star_expand_random_order, star_expand_traced, star_expand_with_cache, DncCache,
};
use crate::forest::{enumerate_trees, tree_from_pruefer, Forest};
use crate::oracle::power_csf;
use crate::reconstruct::reconstruct;

pub const SUITE_NAMES: [&str; 8] = [
    "oracle", "lead", "hooks", "adjacency", "internal", "reconstruct", "edge-order", "trace",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite '{0}' (expected one of oracle, lead, hooks, adjacency, internal, reconstruct, edge-order, trace, all)")]
    UnknownSuite(String),
    #[error("census max_n {requested} exceeds the configured bound {bound}")]
    CensusBound { requested: usize, bound: usize },
}

/// One property violation: which tree, which property, and the mismatch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FailureRecord {
    pub tree: String,
    pub property: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n_range: (usize, usize),
    pub trees_checked: usize,
    pub failures: Vec<FailureRecord>,
    /// Wall-clock time; excluded from serialization so reports are
    /// byte-identical across runs with the same (max_n, seed).
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reads the `CSF_MAX_N` safety cap, if set to a valid integer.
pub fn env_max_n() -> Option<usize> {
    std::env::var("CSF_MAX_N").ok().and_then(|v| v.parse().ok())
}

fn capped(max_n: usize) -> usize {
    match env_max_n() {
        Some(cap) => max_n.min(cap),
        None => max_n,
    }
}

struct SuiteRun {
    trees_checked: usize,
    failures: Vec<FailureRecord>,
}

impl SuiteRun {
    fn new() -> Self {
        SuiteRun { trees_checked: 0, failures: Vec::new() }
    }

    fn fail(&mut self, t: &Forest, property: &str, expected: impl ToString, actual: impl ToString) {
        self.failures.push(FailureRecord {
            tree: t.to_edge_list().replace('\n', "; "),
            property: property.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
}

/// Runs the named suite over all trees with up to `max_n` vertices
/// (clamped by `CSF_MAX_N`). `seed` feeds the randomized sub-suites;
/// reports are deterministic given `(max_n, seed)`.
pub fn run_suite(name: &str, max_n: usize, seed: u64) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let max_n = capped(max_n).max(1);
    let mut run = SuiteRun::new();
    match name {
        "oracle" => suite_oracle(max_n, &mut run),
        "lead" => suite_lead(max_n, &mut run),
        "hooks" => suite_hooks(max_n, &mut run),
        "adjacency" => suite_adjacency(max_n, &mut run),
        "internal" => suite_internal(max_n, &mut run),
        "reconstruct" => suite_reconstruct(max_n, &mut run),
        "edge-order" => suite_edge_order(max_n, seed, &mut run),
        "trace" => suite_trace(max_n, &mut run),
        "all" => {
            for s in SUITE_NAMES {
                let sub = run_suite(s, max_n, seed)?;
                run.trees_checked += sub.trees_checked;
                run.failures.extend(sub.failures);
            }
        }
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    }
    run.failures.sort();
    Ok(VerificationReport {
        suite: name.to_string(),
        n_range: (1, max_n),
        trees_checked: run.trees_checked,
        failures: run.failures,
        elapsed: start.elapsed(),
    })
}

fn suite_oracle(max_n: usize, run: &mut SuiteRun) {
    let mut cache = DncCache::new();
    for n in 1..=max_n {
        for t in enumerate_trees(n) {
            run.trees_checked += 1;
            let via_star = star_expand_with_cache(&t, &mut cache)
                .to_power()
                .expect("star basis converts");
            let direct = power_csf(&t);
            if !via_star.equals(&direct) {
                run.fail(&t, "oracle equivalence", direct, via_star);
            }
        }
    }
}

fn suite_lead(max_n: usize, run: &mut SuiteRun) {
    let mut cache = DncCache::new();
    for n in 1..=max_n {
        for t in enumerate_trees(n) {
            run.trees_checked += 1;
            let f = star_expand_with_cache(&t, &mut cache);
            let (lead, coeff) = leading_partition(&f).expect("tree CSF is nonzero");
            let (plead, pcoeff) = predicted_leading(&t);
            if lead != plead || coeff != pcoeff {
                run.fail(
                    &t,
                    "leading term",
                    format!("{pcoeff} st{plead}"),
                    format!("{coeff} st{lead}"),
                );
            }
        }
    }
}

fn suite_hooks(max_n: usize, run: &mut SuiteRun) {
    let mut cache = DncCache::new();
    for n in 1..=max_n {
        for t in enumerate_trees(n) {
            run.trees_checked += 1;
            let f = star_expand_with_cache(&t, &mut cache);
            if !hook_check(&f, &t) {
                run.fail(&t, "hook coefficients", "binomial pattern", f.clone());
            }
        }
    }
}

/// Diameter-4/5 trees without deep vertices, the hypothesis of the
/// adjacency and membership theorems.
fn adjacency_scope(t: &Forest) -> bool {
    matches!(t.diameter(), Ok(4) | Ok(5)) && t.deep_vertices().is_empty()
}

fn extracted_pairs(f: &crate::symfunc::SymFunc) -> Option<BTreeMap<(usize, usize), usize>> {
    let mut out = BTreeMap::new();
    for entry in adjacency_multisets(f).ok()? {
        let [p, q] = entry.pair[..] else { return None };
        let mult = usize::try_from(&entry.coeff).ok()?;
        *out.entry((p.min(q), p.max(q))).or_insert(0) += mult;
    }
    Some(out)
}

fn suite_adjacency(max_n: usize, run: &mut SuiteRun) {
    let mut cache = DncCache::new();
    for n in 1..=max_n {
        for t in enumerate_trees(n) {
            if !adjacency_scope(&t) {
                continue;
            }
            run.trees_checked += 1;
            let f = star_expand_with_cache(&t, &mut cache);
            let structural = structural_adjacency_pairs(&t);
            match extracted_pairs(&f) {
                Some(pairs) if pairs == structural => {}
                other => run.fail(
                    &t,
                    "adjacency multisets",
                    format!("{structural:?}"),
                    format!("{other:?}"),
                ),
            }
        }
    }
}

fn suite_internal(max_n: usize, run: &mut SuiteRun) {
    let mut cache = DncCache::new();
    for n in 1..=max_n {
        for t in enumerate_trees(n) {
            if !adjacency_scope(&t) {
                continue;
            }
            run.trees_checked += 1;
            let f = star_expand_with_cache(&t, &mut cache);
            // The membership statistic names each qualifying order once, so
            // compare order sets, not multisets.
            let extracted = internal_component_orders(&f).expect("tree CSF");
            let mut structural = structural_internal_orders(&t);
            structural.dedup();
            if extracted != structural {
                run.fail(
                    &t,
                    "internal component orders",
                    format!("{structural:?}"),
                    format!("{extracted:?}"),
                );
            }
        }
    }
}

fn suite_reconstruct(max_n: usize, run: &mut SuiteRun) {
    let mut cache = DncCache::new();
    for n in 1..=max_n {
        for t in enumerate_trees(n) {
            if t.diameter().expect("tree") > 5 {
                continue;
            }
            run.trees_checked += 1;
            let f = star_expand_with_cache(&t, &mut cache);
            match reconstruct(&f) {
                Ok(r) if r.verified && r.tree.is_isomorphic(&t) => {}
                Ok(r) => run.fail(
                    &t,
                    "reconstruction round trip",
                    "isomorphic tree",
                    r.tree.to_edge_list().replace('\n', "; "),
                ),
                Err(e) => run.fail(&t, "reconstruction round trip", "isomorphic tree", e),
            }
        }
    }
}

fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Forest {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(1..=n)).collect();
    tree_from_pruefer(n, &seq)
}

fn check_dnc_invariants<R: Rng>(t: &Forest, rng: &mut R, run: &mut SuiteRun) {
    let reference = star_expand(t);
    let shuffled = star_expand_random_order(t, rng);
    if !shuffled.equals(&reference) {
        run.fail(t, "edge-order invariance", &reference, &shuffled);
    }
    // Three-term relation at every internal edge.
    for (u, v) in t.internal_edges() {
        let rhs = star_expand(&t.delete_edge(u, v).expect("edge exists"))
            .sub(&star_expand(&t.dot_contract(u, v).expect("internal edge")))
            .expect("same degree")
            .add(&star_expand(&t.leaf_contract(u, v).expect("internal edge").0))
            .expect("same degree");
        if !rhs.equals(&reference) {
            run.fail(t, &format!("DNC step at ({u},{v})"), &reference, &rhs);
        }
    }
}

fn suite_edge_order(max_n: usize, seed: u64, run: &mut SuiteRun) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=max_n.min(8) {
        for t in enumerate_trees(n) {
            run.trees_checked += 1;
            check_dnc_invariants(&t, &mut rng, run);
        }
    }
    // Seeded random sampling beyond the exhaustive range.
    for n in [9usize, 10] {
        if n > max_n {
            continue;
        }
        for _ in 0..250 {
            let t = random_tree(n, &mut rng);
            run.trees_checked += 1;
            check_dnc_invariants(&t, &mut rng, run);
        }
    }
}

fn suite_trace(max_n: usize, run: &mut SuiteRun) {
    for n in 1..=max_n.min(8) {
        for t in enumerate_trees(n) {
            run.trees_checked += 1;
            let (f, trace) = star_expand_traced(&t);
            match trace.path_coefficients() {
                Ok(coeffs) => {
                    let from_paths: BTreeMap<_, _> = coeffs
                        .into_iter()
                        .filter(|(_, c)| *c != BigInt::from(0))
                        .collect();
                    let from_expansion: BTreeMap<_, _> = f
                        .terms()
                        .map(|(p, _)| (p.clone(), crate::dnc::integer_coefficient(&f, p)))
                        .collect();
                    if from_paths != from_expansion {
                        run.fail(
                            &t,
                            "trace path coefficients",
                            format!("{from_expansion:?}"),
                            format!("{from_paths:?}"),
                        );
                    }
                }
                Err(shape) => run.fail(&t, "trace dot-count consistency", "uniform", shape),
            }
        }
    }
}

/// One census entry: an isomorphism class and its star expansion.
#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub n: usize,
    pub canonical: String,
    pub expansion: crate::symfunc::SymFunc,
}

const CENSUS_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CensusCollision {
    pub n: usize,
    /// Canonical forms of non-isomorphic trees sharing a star expansion.
    pub trees: Vec<String>,
    pub expansion: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub max_n: usize,
    pub classes_checked: usize,
    pub collisions: Vec<CensusCollision>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// Groups all trees with up to `max_n` vertices by star expansion, one
/// vertex count at a time (expansions of different degree cannot collide).
pub fn conjecture_census(max_n: usize) -> Result<CensusReport, SuiteError> {
    conjecture_census_with_store(max_n, &mut HashMap::new(), |_| Ok(()))
        .map_err(|e| match e {
            CensusRunError::Suite(s) => s,
            CensusRunError::Io(_) => unreachable!("no I/O in in-memory census"),
        })
}

#[derive(Debug, Error)]
enum CensusRunError {
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn conjecture_census_with_store(
    max_n: usize,
    store: &mut HashMap<String, CensusRecord>,
    mut persist: impl FnMut(&CensusRecord) -> std::io::Result<()>,
) -> Result<CensusReport, CensusRunError> {
    let bound = env_max_n().unwrap_or(12);
    if max_n > bound {
        return Err(SuiteError::CensusBound { requested: max_n, bound }.into());
    }
    let mut cache = DncCache::new();
    let mut classes_checked = 0usize;
    let mut collisions = Vec::new();
    for n in 1..=max_n {
        let mut by_expansion: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for t in enumerate_trees(n) {
            classes_checked += 1;
            let canonical = t.canonical_form();
            let expansion = match store.get(&canonical) {
                Some(rec) => rec.expansion.clone(),
                None => {
                    let f = star_expand_with_cache(&t, &mut cache);
                    let rec =
                        CensusRecord { n, canonical: canonical.clone(), expansion: f.clone() };
                    persist(&rec)?;
                    store.insert(canonical.clone(), rec);
                    f
                }
            };
            by_expansion.entry(expansion.to_json_string()).or_default().push(canonical);
        }
        for (expansion, trees) in by_expansion {
            if trees.len() > 1 {
                collisions.push(CensusCollision { n, trees, expansion });
            }
        }
    }
    Ok(CensusReport { max_n, classes_checked, collisions })
}

/// Census with an append-only line-delimited JSON store at `path`: existing
/// records are reused, newly computed expansions are appended, so repeated
/// runs resume where they left off.
pub fn conjecture_census_persistent(
    max_n: usize,
    path: &Path,
) -> Result<CensusReport, Box<dyn std::error::Error>> {
    let mut store = HashMap::new();
    if path.exists() {
        let file = std::fs::File::open(path)?;
        for (idx, line) in std::io::BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let value: serde_json::Value = serde_json::from_str(&line)
                .map_err(|e| format!("{}:{}: {e}", path.display(), idx + 1))?;
            if value["version"].as_u64() != Some(CENSUS_VERSION as u64) {
                return Err(format!(
                    "{}:{}: unsupported census record version",
                    path.display(),
                    idx + 1
                )
                .into());
            }
            let rec = CensusRecord {
                n: value["n"].as_u64().ok_or("missing n")? as usize,
                canonical: value["canonical"].as_str().ok_or("missing canonical")?.to_string(),
                expansion: crate::symfunc::SymFunc::from_json(&value["expansion"])?,
            };
            store.insert(rec.canonical.clone(), rec);
        }
    }
    let mut out = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    let report = conjecture_census_with_store(max_n, &mut store, |rec| {
        let line = serde_json::json!({
            "version": CENSUS_VERSION,
            "n": rec.n,
            "canonical": rec.canonical,
            "expansion": rec.expansion.to_json(),
        });
        writeln!(out, "{line}")
    })
    .map_err(|e| -> Box<dyn std::error::Error> {
        match e {
            CensusRunError::Suite(s) => Box::new(s),
            CensusRunError::Io(io) => Box::new(io),
        }
    })?;
    Ok(report)
}
