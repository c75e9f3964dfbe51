//! Sparse, exact symmetric-function vectors of homogeneous degree `n` in the
//! star or power-sum basis. Coefficients are arbitrary-precision rationals;
//! star expansions of forests are integral and surfaced as such.
//!
//! Both bases are multiplicative (`p_mu * p_nu = p_{mu U nu}`, and
//! `st_lambda` is the product of the `st_{lambda_i}`), so multiplication is
//! convolution over partition union. Conversion star -> power expands each
//! monomial via the alternating binomial formula for a single star; the
//! inverse solves the per-degree change-of-basis system exactly over the
//! rationals (cached per degree).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymFuncError {
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(Basis, Basis),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("expected {expected:?} basis, got {got:?}")]
    WrongBasis { expected: Basis, got: Basis },
    #[error("term partition {0} does not have degree {1}")]
    BadTermDegree(Partition, usize),
    #[error("cannot parse coefficient {0:?}")]
    BadCoefficient(String),
    #[error("internal error: change-of-basis system is singular")]
    SingularBasis,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Star,
    Power,
}

/// A homogeneous symmetric function of fixed degree, stored as a sparse map
/// from partitions to exact rational coefficients. Zero coefficients are
/// never stored; term iteration is in increasing lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    degree: usize,
    terms: BTreeMap<Partition, BigRational>,
}

impl SymFunc {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymFunc { basis, degree, terms: BTreeMap::new() }
    }

    /// The multiplicative unit: the empty partition in degree 0.
    pub fn one(basis: Basis) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), BigRational::one());
        SymFunc { basis, degree: 0, terms }
    }

    /// A single basis element with coefficient 1.
    pub fn monomial(basis: Basis, partition: Partition) -> Self {
        Self::term(basis, partition, BigRational::one())
    }

    pub fn term(basis: Basis, partition: Partition, coeff: BigRational) -> Self {
        let degree = partition.sum();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(partition, coeff);
        }
        SymFunc { basis, degree, terms }
    }

    pub fn from_terms<I>(basis: Basis, degree: usize, terms: I) -> Result<Self, SymFuncError>
    where
        I: IntoIterator<Item = (Partition, BigRational)>,
    {
        let mut map = BTreeMap::new();
        for (p, c) in terms {
            if p.sum() != degree {
                return Err(SymFuncError::BadTermDegree(p, degree));
            }
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(p).or_insert_with(BigRational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SymFunc { basis, degree, terms: map })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lexicographic order of their partitions.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Partition) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &SymFunc) -> Result<SymFunc, SymFuncError> {
        if self.basis != other.basis {
            return Err(SymFuncError::BasisMismatch(self.basis, other.basis));
        }
        if self.degree != other.degree {
            return Err(SymFuncError::DegreeMismatch(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let entry = terms.entry(p.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SymFunc { basis: self.basis, degree: self.degree, terms })
    }

    pub fn scale(&self, c: &BigRational) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.basis, self.degree);
        }
        let terms = self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect();
        SymFunc { basis: self.basis, degree: self.degree, terms }
    }

    pub fn scale_int(&self, c: i64) -> SymFunc {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc, SymFuncError> {
        self.add(&other.scale_int(-1))
    }

    /// Exact equality (same basis, degree and coefficients).
    pub fn equals(&self, other: &SymFunc) -> bool {
        self == other
    }

    /// Product of two functions in the same (multiplicative) basis:
    /// coefficients convolve over partition union, degrees add.
    pub fn multiply(&self, other: &SymFunc) -> Result<SymFunc, SymFuncError> {
        if self.basis != other.basis {
            return Err(SymFuncError::BasisMismatch(self.basis, other.basis));
        }
        let mut terms: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let key = pa.union(pb);
                let entry = terms.entry(key).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SymFunc { basis: self.basis, degree: self.degree + other.degree, terms })
    }

    /// True iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Principal specialization of a power-basis vector: `p_r(1^k) = k`, so
    /// `p_lambda` maps to `k^{l(lambda)}`.
    pub fn evaluate_at_ones(&self, k: usize) -> Result<BigRational, SymFuncError> {
        if self.basis != Basis::Power {
            return Err(SymFuncError::WrongBasis { expected: Basis::Power, got: self.basis });
        }
        let k = BigInt::from(k);
        let mut total = BigRational::zero();
        for (p, c) in &self.terms {
            let mut pw = BigInt::one();
            for _ in 0..p.len() {
                pw *= &k;
            }
            total += c * BigRational::from_integer(pw);
        }
        Ok(total)
    }

    /// Converts a star-basis vector to the power basis by expanding each
    /// `st_lambda` as the product of single-star power expansions.
    pub fn to_power(&self) -> Result<SymFunc, SymFuncError> {
        if self.basis != Basis::Star {
            return Err(SymFuncError::WrongBasis { expected: Basis::Star, got: self.basis });
        }
        let mut acc = SymFunc::zero(Basis::Power, self.degree);
        for (p, c) in &self.terms {
            let expanded = star_product_to_power(p);
            acc = acc.add(&expanded.scale(c))?;
        }
        Ok(acc)
    }

    /// Converts a power-basis vector to the star basis by solving the
    /// per-degree change-of-basis system exactly.
    pub fn to_star(&self) -> Result<SymFunc, SymFuncError> {
        if self.basis != Basis::Power {
            return Err(SymFuncError::WrongBasis { expected: Basis::Power, got: self.basis });
        }
        let table = basis_table(self.degree)?;
        let rhs: Vec<BigRational> = table
            .partitions
            .iter()
            .map(|p| self.coefficient(p))
            .collect();
        let m = table.partitions.len();
        let mut coeffs = vec![BigRational::zero(); m];
        for (i, c) in coeffs.iter_mut().enumerate() {
            for (j, r) in rhs.iter().enumerate() {
                if !r.is_zero() {
                    *c += &table.inverse[i][j] * r;
                }
            }
        }
        SymFunc::from_terms(
            Basis::Star,
            self.degree,
            table.partitions.iter().cloned().zip(coeffs),
        )
    }

    // ---- JSON wire format ----

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(p, c)| {
                serde_json::json!({
                    "partition": p,
                    "coeff": rational_to_string(c),
                })
            })
            .collect();
        serde_json::json!({
            "basis": self.basis,
            "n": self.degree,
            "terms": terms,
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SymFunc, SymFuncError> {
        #[derive(Deserialize)]
        struct TermRepr {
            partition: Partition,
            coeff: String,
        }
        #[derive(Deserialize)]
        struct Repr {
            basis: Basis,
            n: usize,
            terms: Vec<TermRepr>,
        }
        let repr: Repr = serde_json::from_value(value.clone())
            .map_err(|e| SymFuncError::BadCoefficient(e.to_string()))?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            terms.push((t.partition, parse_rational(&t.coeff)?));
        }
        SymFunc::from_terms(repr.basis, repr.n, terms)
    }

    pub fn from_json_str(s: &str) -> Result<SymFunc, SymFuncError> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| SymFuncError::BadCoefficient(e.to_string()))?;
        Self::from_json(&value)
    }
}

/// Renders in the conventional text form, e.g.
/// `-st(4,2,1) + st(4,3) + st(5,1,1) + st(5,2) - 2 st(6,1) + st(7)`.
impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let tag = match self.basis {
            Basis::Star => "st",
            Basis::Power => "p",
        };
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                write!(f, "{} ", rational_to_string(&mag))?;
            }
            write!(f, "{tag}{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn rational_to_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, SymFuncError> {
    let parse_int =
        |t: &str| t.trim().parse::<BigInt>().map_err(|_| SymFuncError::BadCoefficient(s.into()));
    match s.split_once('/') {
        Some((a, b)) => {
            let denom = parse_int(b)?;
            if denom.is_zero() {
                return Err(SymFuncError::BadCoefficient(s.into()));
            }
            Ok(BigRational::new(parse_int(a)?, denom))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// The power expansion of a single star:
/// `st_k = sum_{r=0}^{k-1} (-1)^r C(k-1, r) p_{(r+1, 1^{k-r-1})}`.
pub fn star_monomial_to_power(k: usize) -> SymFunc {
    assert!(k >= 1);
    let mut terms = Vec::new();
    for r in 0..k {
        let mut parts = vec![r + 1];
        parts.extend(std::iter::repeat_n(1, k - r - 1));
        let coeff = BigRational::from_integer(if r % 2 == 0 {
            binomial(k - 1, r)
        } else {
            -binomial(k - 1, r)
        });
        terms.push((Partition::from_multiset(parts).unwrap(), coeff));
    }
    SymFunc::from_terms(Basis::Power, k, terms).expect("degrees match by construction")
}

/// `st_lambda` in the power basis: the product over the parts.
pub fn star_product_to_power(lambda: &Partition) -> SymFunc {
    let mut acc = SymFunc::one(Basis::Power);
    for &part in lambda.parts() {
        acc = acc.multiply(&star_monomial_to_power(part)).expect("same basis");
    }
    acc
}

struct BasisTable {
    /// All partitions of `n` in increasing lexicographic order.
    partitions: Vec<Partition>,
    /// Inverse of the matrix whose column j is `st_{partitions[j]}` written
    /// in the power basis (rows indexed like `partitions`).
    inverse: Vec<Vec<BigRational>>,
}

static BASIS_TABLES: Lazy<Mutex<HashMap<usize, Arc<BasisTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn basis_table(n: usize) -> Result<Arc<BasisTable>, SymFuncError> {
    if let Some(t) = BASIS_TABLES.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    // Construction is idempotent; build outside the lock and race benignly.
    let partitions = Partition::all_of(n);
    let m = partitions.len();
    let index: HashMap<&Partition, usize> =
        partitions.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut matrix = vec![vec![BigRational::zero(); m]; m];
    for (j, lam) in partitions.iter().enumerate() {
        for (mu, c) in star_product_to_power(lam).terms() {
            matrix[index[mu]][j] = c.clone();
        }
    }
    let inverse = invert(matrix).ok_or(SymFuncError::SingularBasis)?;
    let table = Arc::new(BasisTable { partitions, inverse });
    BASIS_TABLES.lock().unwrap().entry(n).or_insert_with(|| table.clone());
    Ok(table)
}

/// Gauss-Jordan inversion over the rationals.
fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let m = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for x in inv[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..m {
                let t = &a[col][c] * &f;
                a[r][c] -= t;
                let t = &inv[col][c] * &f;
                inv[r][c] -= t;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn star_monomial_small() {
        assert_eq!(star_monomial_to_power(1), SymFunc::monomial(Basis::Power, Partition::new(&[1])));
        let st2 = star_monomial_to_power(2);
        assert_eq!(st2.coefficient(&Partition::new(&[1, 1])), int(1));
        assert_eq!(st2.coefficient(&Partition::new(&[2])), int(-1));
        let st3 = star_monomial_to_power(3);
        assert_eq!(st3.coefficient(&Partition::new(&[1, 1, 1])), int(1));
        assert_eq!(st3.coefficient(&Partition::new(&[2, 1])), int(-2));
        assert_eq!(st3.coefficient(&Partition::new(&[3])), int(1));
        assert_eq!(st3.term_count(), 3);
    }

    #[test]
    fn star_monomial_binomial_pattern() {
        for k in 1..=12 {
            let st = star_monomial_to_power(k);
            for r in 0..k {
                let mut parts = vec![r + 1];
                parts.extend(std::iter::repeat_n(1, k - r - 1));
                let p = Partition::from_multiset(parts).unwrap();
                let expected = if r % 2 == 0 { binomial(k - 1, r) } else { -binomial(k - 1, r) };
                assert_eq!(st.coefficient(&p), BigRational::from_integer(expected));
            }
        }
    }

    #[test]
    fn to_star_inverts_k3() {
        let f = SymFunc::from_terms(
            Basis::Power,
            3,
            [
                (Partition::new(&[1, 1, 1]), int(1)),
                (Partition::new(&[2, 1]), int(-2)),
                (Partition::new(&[3]), int(1)),
            ],
        )
        .unwrap();
        let st = f.to_star().unwrap();
        assert_eq!(st, SymFunc::monomial(Basis::Star, Partition::new(&[3])));
    }

    #[test]
    fn multiply_examples() {
        let st2 = SymFunc::monomial(Basis::Star, Partition::new(&[2]));
        let prod = st2.multiply(&st2).unwrap();
        assert_eq!(prod, SymFunc::monomial(Basis::Star, Partition::new(&[2, 2])));
        let unit = SymFunc::one(Basis::Star);
        assert_eq!(st2.multiply(&unit).unwrap(), st2);
        // mixed bases rejected
        let p2 = SymFunc::monomial(Basis::Power, Partition::new(&[2]));
        assert!(st2.multiply(&p2).is_err());
    }

    #[test]
    fn add_scale_zero() {
        let st2 = SymFunc::monomial(Basis::Star, Partition::new(&[2]));
        let z = st2.add(&st2.scale_int(-1)).unwrap();
        assert!(z.is_zero());
        assert!(st2.add(&SymFunc::monomial(Basis::Star, Partition::new(&[3]))).is_err());
    }

    #[test]
    fn roundtrip_random_vectors() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=10 {
            let partitions = Partition::all_of(n);
            for _ in 0..3 {
                let terms: Vec<(Partition, BigRational)> = partitions
                    .iter()
                    .map(|p| (p.clone(), int(rng.gen_range(-5i64..=5))))
                    .collect();
                let star = SymFunc::from_terms(Basis::Star, n, terms).unwrap();
                assert_eq!(star.to_power().unwrap().to_star().unwrap(), star);
                let pw = star.to_power().unwrap();
                assert_eq!(pw.to_star().unwrap().to_power().unwrap(), pw);
            }
        }
    }

    #[test]
    fn evaluate_at_ones_examples() {
        // X_{St_3} = p_(1,1,1) - 2 p_(2,1) + p_(3); at k=2: 8 - 2*4 + 2 = 2.
        let st3 = star_monomial_to_power(3);
        assert_eq!(st3.evaluate_at_ones(2).unwrap(), int(2));
        assert_eq!(st3.evaluate_at_ones(1).unwrap(), int(0));
    }

    #[test]
    fn display_convention() {
        let f = SymFunc::from_terms(
            Basis::Star,
            7,
            [
                (Partition::new(&[4, 2, 1]), int(-1)),
                (Partition::new(&[4, 3]), int(1)),
                (Partition::new(&[5, 1, 1]), int(1)),
                (Partition::new(&[5, 2]), int(1)),
                (Partition::new(&[6, 1]), int(-2)),
                (Partition::new(&[7]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(
            f.to_string(),
            "-st(4,2,1) + st(4,3) + st(5,1,1) + st(5,2) - 2 st(6,1) + st(7)"
        );
    }

    #[test]
    fn json_roundtrip() {
        let f = SymFunc::from_terms(
            Basis::Star,
            7,
            [
                (Partition::new(&[4, 2, 1]), int(-1)),
                (Partition::new(&[7]), BigRational::new(BigInt::from(1), BigInt::from(2))),
            ],
        )
        .unwrap();
        let s = f.to_json_string();
        assert!(s.contains("\"basis\":\"star\""));
        assert!(s.contains("\"1/2\""));
        let g = SymFunc::from_json_str(&s).unwrap();
        assert_eq!(f, g);
        // term with wrong degree rejected
        let bad = r#"{"basis":"star","n":7,"terms":[{"partition":[4,2],"coeff":"1"}]}"#;
        assert!(SymFunc::from_json_str(bad).is_err());
    }

    #[test]
    fn multiply_commutes_and_degree_adds() {
        let a = star_monomial_to_power(3);
        let b = star_monomial_to_power(4);
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(ab.degree(), 7);
        let c = star_monomial_to_power(2);
        assert_eq!(
            ab.multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
    }
}
