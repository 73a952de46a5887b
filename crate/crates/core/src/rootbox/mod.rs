//! Certified numerics over exact algebra: real root isolation, complex
//! root enclosures, the Perron root, exact unimodular root counts and
//! Mahler measures.

mod aberth;
mod certify;
mod measure;
mod real;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorint::factor;
use crate::unipoly::{
    gcd, is_cyclotomic, reciprocal_type, squarefree_part, sturm_count, trace_transform, IntPoly,
    RationalInterval, ReciprocalType, RootRange, SturmChain,
};

pub(crate) use certify::RootSet;
pub use measure::{log_interval, MeasureInterval};
pub use real::{isolate_real_roots, refine_real_root};

/// Working precision policy for certified numerics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    /// Fractional bits of the first certification attempt.
    pub start_bits: u32,
    /// Give up (with [`Error::PrecisionCeiling`]) beyond this many bits.
    pub ceiling_bits: u32,
    /// Certified measures satisfy `hi <= lo * (1 + 2^-ratio_bits)`.
    pub ratio_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: 128,
            ceiling_bits: 1 << 14,
            ratio_bits: 40,
        }
    }
}

/// Rectangle with rational corners holding exactly one root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub re: RationalInterval,
    pub im: RationalInterval,
    pub multiplicity: u32,
    pub certified: bool,
}

impl RootEnclosure {
    /// Real roots have a degenerate imaginary interval `[0, 0]`.
    pub fn is_real(&self) -> bool {
        self.im.lo.is_zero() && self.im.hi.is_zero()
    }

    /// Bounds on `|z|^2` over the box.
    pub fn modulus_sq_bounds(&self) -> (BigRational, BigRational) {
        fn near(iv: &RationalInterval) -> BigRational {
            if iv.lo.is_positive() {
                &iv.lo * &iv.lo
            } else if iv.hi.is_negative() {
                &iv.hi * &iv.hi
            } else {
                BigRational::zero()
            }
        }
        fn far(iv: &RationalInterval) -> BigRational {
            let m = iv.lo.abs().max(iv.hi.abs());
            &m * &m
        }
        (
            near(&self.re) + near(&self.im),
            far(&self.re) + far(&self.im),
        )
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn overlaps(&self, other: &RootEnclosure) -> bool {
        self.re.lo <= other.re.hi
            && other.re.lo <= self.re.hi
            && self.im.lo <= other.im.hi
            && other.im.lo <= self.im.hi
    }
}

fn require_squarefree(p: &IntPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if squarefree_part(p).deg() != p.deg() {
        return Err(Error::Precondition("polynomial is not squarefree".into()));
    }
    Ok(())
}

/// Certified, pairwise disjoint enclosures of all `deg p` roots of a
/// squarefree `p`, closed under conjugation.
pub fn complex_enclosures(p: &IntPoly, precision: &Precision) -> Result<Vec<RootEnclosure>> {
    require_squarefree(p)?;
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    Ok(RootSet::new(p, precision)?.enclosures())
}

/// `true` when `p(-t) = +-p(t)`, so every root `x` comes with `-x`.
fn is_even_or_odd(p: &IntPoly) -> bool {
    let q = p.negate_variable();
    q == *p || q == -p
}

/// Refines until box `k` is real, above 1, and strictly dominates every
/// other box in modulus.
fn make_dominant(set: &mut RootSet, k: usize) -> Result<()> {
    set.refine_until(|s| {
        let iv = s.real_interval(k);
        if iv.lo <= BigRational::one() {
            return false;
        }
        let (lam_lo, _) = s.modulus_sq_bounds(k);
        (0..s.degree())
            .filter(|&i| i != k)
            .all(|i| s.modulus_sq_bounds(i).1 < lam_lo)
    })
}

/// Index of the largest real root when it exceeds 1, certified strictly
/// dominant; `None` when every real root is at most 1.
fn try_perron(set: &mut RootSet, p: &IntPoly) -> Result<Option<usize>> {
    let Some(k) = set.largest_real() else {
        return Ok(None);
    };
    let one = BigRational::one();
    let root_at_one = p.sign_at(&one).is_eq();
    set.refine_until(|s| {
        let iv = s.real_interval(k);
        iv.lo > one || iv.hi < one || (root_at_one && iv.contains(&one))
    })?;
    if set.real_interval(k).lo <= one {
        return Ok(None);
    }
    if is_even_or_odd(p) {
        return Err(Error::Verification(
            "largest real root is not strictly dominant (x and -x are both roots)".into(),
        ));
    }
    make_dominant(set, k)?;
    Ok(Some(k))
}

/// The real root `> 1` of largest modulus, certified strictly dominant.
pub fn perron_root(p: &IntPoly, precision: &Precision) -> Result<RootEnclosure> {
    require_squarefree(p)?;
    if p.deg() == 0 {
        return Err(Error::NoPerronRoot);
    }
    if sturm_count(p, &RootRange::Above(BigRational::one())) == 0 {
        return Err(Error::NoPerronRoot);
    }
    let mut set = RootSet::new(p, precision)?;
    let k = try_perron(&mut set, p)?.ok_or(Error::NoPerronRoot)?;
    Ok(set.enclosure(k))
}

/// Exact number of distinct roots on the unit circle. Unimodular roots
/// are shared with the reversal, so only `gcd(p, reversal p)` matters; after
/// removing `t -+ 1` that gcd is self-reciprocal and `s = t + 1/t` maps its
/// unimodular roots two-to-one onto the roots of the trace polynomial in
/// `(-2, 2)`.
pub fn count_unimodular(p: &IntPoly) -> Result<usize> {
    if p.is_zero() || p.constant_term().is_zero() {
        return Err(Error::Precondition(
            "unimodular count needs a nonzero constant term".into(),
        ));
    }
    if p.deg() == 0 {
        return Ok(0);
    }
    let mut g = gcd(p, &p.reversal());
    let mut count = 0;
    for r in [1i64, -1] {
        let lin = IntPoly::linear_root(r);
        if g.sign_at(&BigRational::from_integer(r.into())).is_eq() {
            count += 1;
            while let Some(q) = g.checked_div(&lin) {
                g = q;
            }
        }
    }
    if g.deg() == 0 {
        return Ok(count);
    }
    if reciprocal_type(&g)? != ReciprocalType::SelfReciprocal {
        return Err(Error::Verification(
            "reciprocal part is not self-reciprocal after removing t -+ 1".into(),
        ));
    }
    let q = trace_transform(&g)?;
    let two = BigRational::from_integer(BigInt::from(2));
    Ok(count + 2 * SturmChain::new(&q).count_open(&-two.clone(), &two))
}

/// Everything certified numerics says about one squarefree polynomial.
#[derive(Clone, Debug)]
pub struct RootSummary {
    pub enclosures: Vec<RootEnclosure>,
    pub real_count: usize,
    pub unimodular_count: usize,
    /// Non-real roots strictly outside the unit circle.
    pub nonreal_outside: usize,
    /// Non-real roots whose boxes meet the unit circle.
    pub nonreal_on_circle: usize,
    pub mahler: MeasureInterval,
    pub split_a: MeasureInterval,
    pub split_b: MeasureInterval,
    /// Largest real root when it exceeds 1 and dominates all others
    /// (only computed on request).
    pub perron: Option<RootEnclosure>,
}

impl RootSummary {
    /// Trace-field verdict from the enclosures alone: every non-real root
    /// must lie on the unit circle.
    pub fn numeric_totally_real(&self) -> bool {
        self.enclosures.len() - self.real_count == self.nonreal_on_circle
    }
}

fn sqrt_measure(set: &RootSet, pick: impl Fn(usize) -> bool) -> MeasureInterval {
    let (lo, hi) = set.product_modulus_sq(pick);
    measure::sqrt_interval(&lo, &hi, set.prec() as usize)
}

/// Certified summary of a squarefree polynomial with `p(0) != 0`. When
/// `want_perron` is set and the largest real root exceeds 1, that root is
/// also certified strictly dominant (erroring if it is not).
pub fn summarize(p: &IntPoly, precision: &Precision, want_perron: bool) -> Result<RootSummary> {
    summarize_with(p, precision, want_perron, None)
}

pub(crate) fn summarize_with(
    p: &IntPoly,
    precision: &Precision,
    want_perron: bool,
    real_count: Option<usize>,
) -> Result<RootSummary> {
    if p.deg() == 0 {
        return Err(Error::Precondition("summary needs a nonconstant polynomial".into()));
    }
    let unimodular = count_unimodular(p)?;
    let mut set = match real_count {
        Some(r) => RootSet::with_real_count(p, r, precision)?,
        None => RootSet::new(p, precision)?,
    };
    let perron_index = if want_perron {
        try_perron(&mut set, p)?
    } else {
        None
    };
    let bits = precision.ratio_bits + 2;
    set.refine_until(|s| {
        s.count_meeting_unit_circle() == unimodular
            && sqrt_measure(s, |i| s.outside_unit_circle(i)).within_ratio(bits)
    })?;
    let lc = MeasureInterval::exact(BigRational::from_integer(
        p.leading_coeff().expect("nonzero").abs(),
    ));
    let all = sqrt_measure(&set, |i| set.outside_unit_circle(i));
    let a = sqrt_measure(&set, |i| set.is_real(i) && set.outside_unit_circle(i));
    let b = sqrt_measure(&set, |i| !set.is_real(i) && set.outside_unit_circle(i));
    let nonreal_outside = (0..set.degree())
        .filter(|&i| !set.is_real(i) && set.outside_unit_circle(i))
        .count();
    let nonreal_on_circle = (0..set.degree())
        .filter(|&i| !set.is_real(i) && set.meets_unit_circle(i))
        .count();
    Ok(RootSummary {
        enclosures: set.enclosures(),
        real_count: set.real_count(),
        unimodular_count: unimodular,
        nonreal_outside,
        nonreal_on_circle,
        mahler: lc.mul(&all),
        split_a: a,
        split_b: b,
        perron: perron_index.map(|k| set.enclosure(k)),
    })
}

/// Certified Mahler measure `|a_n| prod max(1, |root|)`. Cyclotomic
/// factors contribute exactly 1 and on-circle roots are identified by the
/// exact unimodular count, never numerically.
pub fn mahler_measure(p: &IntPoly, precision: &Precision) -> Result<MeasureInterval> {
    let f = factor(p)?;
    let pieces: u32 = f.factors.iter().map(|e| e.multiplicity).sum();
    // each factor gets a share of the error budget
    let extra = 32 - pieces.max(1).leading_zeros() + 1;
    let finer = Precision {
        ratio_bits: precision.ratio_bits + extra,
        ..*precision
    };
    let mut m = MeasureInterval::exact(BigRational::from_integer(f.content.clone()));
    for e in &f.factors {
        if e.poly.deg() == 0 || is_cyclotomic(&e.poly).is_some() {
            continue;
        }
        let s = summarize(&e.poly, &finer, false)?;
        m = m.mul(&s.mahler.pow(e.multiplicity));
    }
    if !m.within_ratio(precision.ratio_bits) {
        return Err(Error::Verification("Mahler measure ratio budget exceeded".into()));
    }
    Ok(m)
}

/// `(A, B)` for an irreducible monic `p`: products of the moduli of real,
/// respectively non-real, roots outside the unit circle.
pub fn mahler_split(p: &IntPoly, precision: &Precision) -> Result<(MeasureInterval, MeasureInterval)> {
    if p.deg() == 0 || p.constant_term().is_zero() {
        return Err(Error::Precondition("split needs a nonconstant polynomial with p(0) != 0".into()));
    }
    if is_cyclotomic(p).is_some() {
        return Ok((MeasureInterval::one(), MeasureInterval::one()));
    }
    require_squarefree(p)?;
    let s = summarize(p, precision, false)?;
    Ok((s.split_a, s.split_b))
}
