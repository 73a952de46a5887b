//! Exact trace-field decision and the Lehmer and Schinzel comparisons.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rootbox::{mahler_measure, MeasureInterval, Precision};
use crate::unipoly::{
    count_real_roots, is_cyclotomic, reciprocal_type, sturm_count, trace_transform, IntPoly,
    ReciprocalType, RootRange,
};

/// `t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1`.
pub fn lehmer_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
}

/// Certified Mahler measure of Lehmer's polynomial, computed once.
pub fn lehmer_threshold() -> &'static MeasureInterval {
    static MU0: OnceLock<MeasureInterval> = OnceLock::new();
    MU0.get_or_init(|| {
        mahler_measure(&lehmer_polynomial(), &Precision::default())
            .expect("Lehmer's polynomial is certified at default precision")
    })
}

/// Exact decision whether `Q(lambda + 1/lambda)` is totally real, for an
/// irreducible minimal polynomial: every conjugate must be real or
/// unimodular.
pub fn totally_real_trace_field(minpoly: &IntPoly) -> Result<bool> {
    let n = minpoly.deg();
    if n == 0 {
        return Ok(true);
    }
    if minpoly.constant_term().is_zero() {
        return Ok(count_real_roots(minpoly) == n);
    }
    if reciprocal_type(minpoly)? == ReciprocalType::SelfReciprocal && n.is_multiple_of(2) {
        let q = trace_transform(minpoly)?;
        return Ok(sturm_count(&q, &RootRange::WholeLine) == q.deg());
    }
    Ok(count_real_roots(minpoly) == n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LehmerVerdict {
    /// Cyclotomic or monomial factor.
    NotApplicable,
    /// Certified Mahler measure strictly below Lehmer's number.
    Below,
    NotBelow,
    Inconclusive,
}

/// Compares an irreducible factor's certified Mahler measure with that of
/// Lehmer's polynomial.
pub fn lehmer_verdict(factor: &IntPoly, mahler: &MeasureInterval) -> LehmerVerdict {
    if factor.deg() == 0 || factor.constant_term().is_zero() || is_cyclotomic(factor).is_some() {
        return LehmerVerdict::NotApplicable;
    }
    let mu0 = lehmer_threshold();
    if mahler.hi < mu0.lo {
        return LehmerVerdict::Below;
    }
    if mahler.lo > mu0.hi {
        return LehmerVerdict::NotBelow;
    }
    let l = lehmer_polynomial();
    let lm = l.negate_variable();
    if [&l, &lm].iter().any(|g| **g == *factor || -(*g).clone() == *factor) {
        return LehmerVerdict::NotBelow;
    }
    LehmerVerdict::Inconclusive
}

/// `lehmer_flag`: true only for a certified measure below Lehmer's number.
pub fn lehmer_flag(factor: &IntPoly, mahler: &MeasureInterval) -> bool {
    lehmer_verdict(factor, mahler) == LehmerVerdict::Below
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchinzelVerdict {
    /// Some root is non-real, or the root is 0 or +-1.
    NotApplicable,
    Holds,
    Fails,
    Inconclusive,
}

impl SchinzelVerdict {
    pub fn as_option(self) -> Option<bool> {
        match self {
            SchinzelVerdict::Holds => Some(true),
            SchinzelVerdict::Fails => Some(false),
            _ => None,
        }
    }
}

/// `(L_d, F_d)` with `phi^d = (L_d + F_d sqrt 5) / 2`.
fn lucas_fib(d: usize) -> (BigInt, BigInt) {
    let (mut l, mut f) = (BigInt::from(2), BigInt::zero());
    for _ in 0..d {
        // phi (L + F s5)/2 = ((L + 5F) + (L + F) s5)/4
        let nl = (&l + &f * 5u32) / 2u32;
        let nf = (&l + &f) / 2u32;
        l = nl;
        f = nf;
    }
    (l, f)
}

/// `x >= phi^d` exactly, for rational `x`.
fn at_least_phi_pow(x: &BigRational, d: usize) -> bool {
    let (l, f) = lucas_fib(d);
    // 2x - L >= F sqrt 5
    let lhs = x * BigRational::from_integer(BigInt::from(2)) - BigRational::from_integer(l);
    if lhs.is_negative() {
        return false;
    }
    let f = BigRational::from_integer(f);
    &lhs * &lhs >= &f * &f * BigRational::from_integer(BigInt::from(5))
}

/// Checks `M(minpoly) >= phi^(deg/2)` when all roots are real.
pub fn schinzel_check(minpoly: &IntPoly, mahler: &MeasureInterval) -> SchinzelVerdict {
    let n = minpoly.deg();
    if n == 0 || count_real_roots(minpoly) != n {
        return SchinzelVerdict::NotApplicable;
    }
    let excluded = [IntPoly::from_i64s(&[0, 1]), IntPoly::from_i64s(&[-1, 1]), IntPoly::from_i64s(&[1, 1])];
    if excluded.iter().any(|e| e == minpoly || &-e.clone() == minpoly) {
        return SchinzelVerdict::NotApplicable;
    }
    let lo2 = &mahler.lo * &mahler.lo;
    let hi2 = &mahler.hi * &mahler.hi;
    if at_least_phi_pow(&lo2, n) {
        return SchinzelVerdict::Holds;
    }
    if !at_least_phi_pow(&hi2, n) {
        return SchinzelVerdict::Fails;
    }
    // equality: the minimal polynomials of +-phi, +-1/phi
    let eq_cases = [IntPoly::from_i64s(&[-1, -1, 1]), IntPoly::from_i64s(&[-1, 1, 1])];
    if eq_cases.contains(minpoly) {
        return SchinzelVerdict::Holds;
    }
    SchinzelVerdict::Inconclusive
}
