//! Certified intervals for positive real quantities, and logarithms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `[lo, hi]` with exact rational endpoints, `0 < lo <= hi` (or both zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureInterval {
    #[serde(with = "crate::serde_rational")]
    pub lo: BigRational,
    #[serde(with = "crate::serde_rational")]
    pub hi: BigRational,
}

impl MeasureInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "measure interval endpoints out of order");
        MeasureInterval { lo, hi }
    }

    pub fn exact(v: BigRational) -> Self {
        MeasureInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn one() -> Self {
        Self::exact(BigRational::one())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Interval product (endpoints are nonnegative).
    pub fn mul(&self, other: &MeasureInterval) -> MeasureInterval {
        MeasureInterval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
        }
    }

    pub fn pow(&self, k: u32) -> MeasureInterval {
        MeasureInterval {
            lo: num_traits::pow(self.lo.clone(), k as usize),
            hi: num_traits::pow(self.hi.clone(), k as usize),
        }
    }

    /// `hi <= lo * (1 + 2^-bits)`.
    pub fn within_ratio(&self, bits: u32) -> bool {
        let scale = BigInt::one() << bits as usize;
        &self.hi * BigRational::from_integer(scale.clone())
            <= &self.lo * BigRational::from_integer(scale + 1u32)
    }

    pub fn overlaps(&self, other: &MeasureInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigInt::from(2))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for MeasureInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            crate::reportio::decimal(&self.lo, 20, false),
            crate::reportio::decimal(&self.hi, 20, true)
        )
    }
}

/// `floor(x * 2^q)` or `ceil(x * 2^q)`.
pub(crate) fn to_fixed(x: &BigRational, q: usize, up: bool) -> BigInt {
    let n = x.numer() << q;
    if up {
        n.div_ceil(x.denom())
    } else {
        n.div_floor(x.denom())
    }
}

/// Directed bound on `2 atanh(y) = ln((1+y)/(1-y))` for `0 <= y < 1`
/// given as a fixed-point number with `q` fractional bits.
fn two_atanh(y: &BigInt, q: usize, up: bool) -> BigInt {
    let one = BigInt::one() << q;
    if y.is_zero() {
        return BigInt::zero();
    }
    let shr = |v: BigInt| -> BigInt {
        if up {
            v.div_ceil(&one)
        } else {
            v >> q
        }
    };
    let y2 = shr(y * y);
    let mut pow = y.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    loop {
        let term = if up {
            pow.div_ceil(&BigInt::from(k))
        } else {
            &pow / k
        };
        sum += term;
        pow = shr(&pow * &y2);
        k += 2;
        // Dropping the positive tail keeps a lower bound; the upper bound
        // adds the geometric majorant pow / (1 - y^2).
        if pow <= BigInt::from(256) {
            if up {
                sum += (&pow * &one).div_ceil(&(&one - &y2));
            }
            break;
        }
    }
    sum * 2u32
}

/// Directed bound on `ln x` for rational `x >= 1`, with `q` fractional bits.
fn ln_bound(x: &BigRational, q: usize, up: bool) -> BigInt {
    // x = 2^k m with 1 <= m < 2
    let mut k: i64 = 0;
    let mut m = x.clone();
    let two = BigRational::from_integer(BigInt::from(2));
    while m >= two {
        m /= &two;
        k += 1;
    }
    let y = (&m - BigRational::one()) / (&m + BigRational::one());
    let ym = two_atanh(&to_fixed(&y, q, up), q, up);
    if k == 0 {
        return ym;
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let ln2 = two_atanh(&to_fixed(&third, q, up), q, up);
    ym + ln2 * k
}

/// Certified `ln` of an interval with `lo >= 1`.
pub fn log_interval(x: &MeasureInterval, bits: u32) -> Result<MeasureInterval> {
    if x.lo < BigRational::one() {
        return Err(Error::Precondition("logarithm needs values >= 1".into()));
    }
    let q = bits as usize + 16;
    let den = BigInt::one() << q;
    let lo = ln_bound(&x.lo, q, false).max(BigInt::zero());
    let hi = ln_bound(&x.hi, q, true);
    Ok(MeasureInterval::new(
        BigRational::new(lo, den.clone()),
        BigRational::new(hi, den),
    ))
}

/// `sqrt` of a fixed-point interval with `2q` fractional bits, rounded
/// outward to `q` bits.
pub(crate) fn sqrt_interval(lo_sq: &BigInt, hi_sq: &BigInt, q: usize) -> MeasureInterval {
    let den = BigInt::one() << q;
    let lo = lo_sq.sqrt();
    let mut hi = hi_sq.sqrt();
    if &(&hi * &hi) < hi_sq {
        hi += 1u32;
    }
    debug_assert!(!lo.is_negative());
    MeasureInterval::new(BigRational::new(lo, den.clone()), BigRational::new(hi, den))
}
