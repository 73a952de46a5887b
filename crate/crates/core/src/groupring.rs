//! Multivariate integer Laurent polynomials (elements of the group ring of
//! `Z^n`) and their specialization to one variable at integral classes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::unipoly::IntPoly;

/// Largest specialization degree accepted before refusing to build the
/// dense result.
const MAX_SPECIALIZATION_DEGREE: i128 = 1 << 24;

/// Integer vector `(a_1, ..., a_m, b)`; pairs with group elements by the
/// dot product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomClass(pub Vec<i64>);

/// Lattice points of a cone are cohomology classes.
pub type LatticePoint = CohomClass;

impl CohomClass {
    pub fn new(coords: Vec<i64>) -> Self {
        CohomClass(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `<self, e>` in 128-bit arithmetic.
    pub fn pair(&self, e: &[i64]) -> i128 {
        self.0
            .iter()
            .zip(e)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        CohomClass(self.0.iter().map(|&c| c * k).collect())
    }

    /// Gcd of the absolute values of the coordinates.
    pub fn gcd(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }
}

impl fmt::Display for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<i64>> for CohomClass {
    fn from(v: Vec<i64>) -> Self {
        CohomClass(v)
    }
}

/// Integer Laurent polynomial in `nvars` variables. Terms are kept in a
/// map ordered lexicographically by exponent vector; no zero coefficient
/// is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiLaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl MultiLaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiLaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, BigInt::from(1), vec![0; nvars]).unwrap()
    }

    pub fn monomial(nvars: usize, coeff: BigInt, exps: Vec<i64>) -> Result<Self> {
        Self::from_terms(nvars, [(coeff, exps)])
    }

    /// Builds from `(coefficient, exponent vector)` pairs; repeated
    /// exponents are summed and zeros dropped.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, Vec<i64>)>,
    {
        let mut out = Self::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            out.add_term(c, e);
        }
        Ok(out)
    }

    fn add_term(&mut self, c: BigInt, e: Vec<i64>) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            let key: Vec<i64> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn multiply(&self, other: &MultiLaurentPoly) -> Result<MultiLaurentPoly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(ca * cb, e);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &MultiLaurentPoly) -> Result<MultiLaurentPoly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(c.clone(), e.clone());
        }
        Ok(out)
    }
}

/// `sum a_g t^<alpha, g>`, shifted by the minimal exponent so the result
/// has a nonzero constant term. Colliding exponents are added exactly.
pub fn specialize(theta: &MultiLaurentPoly, alpha: &CohomClass) -> Result<IntPoly> {
    if alpha.dim() != theta.nvars {
        return Err(Error::DimensionMismatch {
            expected: theta.nvars,
            got: alpha.dim(),
        });
    }
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut collected: BTreeMap<i128, BigInt> = BTreeMap::new();
    for (e, c) in &theta.terms {
        *collected.entry(alpha.pair(e)).or_default() += c;
    }
    collected.retain(|_, c| !c.is_zero());
    let (Some((&lo, _)), Some((&hi, _))) = (collected.first_key_value(), collected.last_key_value())
    else {
        return Ok(IntPoly::zero());
    };
    if hi - lo > MAX_SPECIALIZATION_DEGREE {
        return Err(Error::Precondition(format!(
            "specialization degree {} is too large",
            hi - lo
        )));
    }
    let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
    for (k, c) in collected {
        coeffs[(k - lo) as usize] = c;
    }
    Ok(IntPoly::new(coeffs))
}

/// Number of nonzero terms of `theta`.
pub fn term_count(theta: &MultiLaurentPoly) -> usize {
    theta.term_count()
}

/// Coefficient in a polynomial literal: an integer, or a decimal string for
/// values beyond 64 bits.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffLit {
    Int(i64),
    Str(String),
}

#[derive(Serialize, Deserialize)]
struct PolyLiteral {
    nvars: usize,
    terms: Vec<(CoeffLit, Vec<i64>)>,
}

impl Serialize for MultiLaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyLiteral {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let lit = match c.to_i64() {
                        Some(v) => CoeffLit::Int(v),
                        None => CoeffLit::Str(c.to_string()),
                    };
                    (lit, e.clone())
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiLaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = PolyLiteral::deserialize(d)?;
        let mut terms = Vec::with_capacity(lit.terms.len());
        for (c, e) in lit.terms {
            let c = match c {
                CoeffLit::Int(v) => BigInt::from(v),
                CoeffLit::Str(s) => s.parse().map_err(serde::de::Error::custom)?,
            };
            terms.push((c, e));
        }
        MultiLaurentPoly::from_terms(lit.nvars, terms).map_err(serde::de::Error::custom)
    }
}

/// Variables print as `x1..x_{n-1}, u` (or `x, u` in two variables),
/// highest power of `u` first.
impl fmt::Display for MultiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names: Vec<String> = (0..self.nvars)
            .map(|i| {
                if i + 1 == self.nvars {
                    "u".to_string()
                } else if self.nvars == 2 {
                    "x".to_string()
                } else {
                    format!("x{}", i + 1)
                }
            })
            .collect();
        let mut order: Vec<(&Vec<i64>, &BigInt)> = self.terms.iter().collect();
        order.sort_by(|x, y| y.0.iter().rev().cmp(x.0.iter().rev()));
        for (k, (e, c)) in order.into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&names)
                .filter(|(x, _)| **x != 0)
                .map(|(x, n)| if *x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            let one = BigInt::from(1);
            match (mono.is_empty(), mag == one) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => f.write_str(&mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}
