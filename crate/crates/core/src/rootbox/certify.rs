//! Certified enclosures of all complex roots of a squarefree integer
//! polynomial.
//!
//! Points are fixed-point numbers `(x + iy) / 2^prec` with `BigInt`
//! numerators. Each round computes, for every approximation `z_i`, the
//! Weierstrass correction `W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`.
//! The disks `|z - z_i| <= n |W_i|` cover all roots and every connected
//! component of their union holds as many roots as disks, so pairwise
//! disjoint disks isolate one root each. `|W_i|` is bounded rigorously
//! with directed rounding; the corrections themselves are only used to
//! move the centers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{float::FloatCore, One, Signed, Zero};

use super::aberth::{approximate_roots, symmetrize};
use super::{Precision, RootEnclosure};
use crate::error::{Error, Result};
use crate::unipoly::{count_real_roots, isqrt_ceil, IntPoly, RationalInterval};

const SWEEPS_PER_PRECISION: usize = 40;

#[derive(Clone, Debug)]
struct Pt {
    x: BigInt,
    y: BigInt,
}

fn f64_to_fixed(v: f64, prec: u32) -> BigInt {
    if v == 0.0 || !v.is_finite() {
        return BigInt::zero();
    }
    let (mant, exp, sign) = FloatCore::integer_decode(v);
    let m = BigInt::from(mant) * sign;
    let shift = exp as i64 + prec as i64;
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

fn isqrt_floor(n: &BigInt) -> BigInt {
    n.sqrt()
}

/// Squared distance from 0 to `[c - r, c + r]`.
fn dist_sq(c: &BigInt, r: &BigInt) -> BigInt {
    if c.abs() <= *r {
        BigInt::zero()
    } else {
        let d = c.abs() - r;
        &d * &d
    }
}

/// Largest square over `[c - r, c + r]`.
fn reach_sq(c: &BigInt, r: &BigInt) -> BigInt {
    let d = c.abs() + r;
    &d * &d
}

struct Round {
    radii: Vec<Option<BigInt>>,
    steps: Vec<Option<Pt>>,
}

/// A certified (or in-progress) set of root approximations. Real roots come
/// first; each non-real root is followed by its conjugate.
#[derive(Clone, Debug)]
pub(crate) struct RootSet {
    poly: IntPoly,
    prec: u32,
    ceiling: u32,
    pts: Vec<Pt>,
    real_count: usize,
    radii: Vec<BigInt>,
    stalls: u32,
}

impl RootSet {
    /// Certified enclosures for a squarefree `p` of degree at least 1.
    pub(crate) fn new(p: &IntPoly, precision: &Precision) -> Result<Self> {
        let real_count = count_real_roots(p);
        Self::with_real_count(p, real_count, precision)
    }

    pub(crate) fn with_real_count(p: &IntPoly, real_count: usize, precision: &Precision) -> Result<Self> {
        let n = p.deg();
        let (reals, pairs) = symmetrize(approximate_roots(p), real_count);
        if reals.len() + 2 * pairs.len() != n {
            return Err(Error::Verification(
                "real root count inconsistent with degree".into(),
            ));
        }
        let prec = precision.start_bits;
        let mut pts = Vec::with_capacity(n);
        for r in reals {
            pts.push(Pt {
                x: f64_to_fixed(r, prec),
                y: BigInt::zero(),
            });
        }
        for z in pairs {
            let x = f64_to_fixed(z.re, prec);
            let y = f64_to_fixed(z.im, prec).max(BigInt::one());
            pts.push(Pt { x: x.clone(), y: y.clone() });
            pts.push(Pt { x, y: -y });
        }
        let mut set = RootSet {
            poly: p.clone(),
            prec,
            ceiling: precision.ceiling_bits,
            pts,
            real_count,
            radii: Vec::new(),
            stalls: 0,
        };
        set.certify()?;
        Ok(set)
    }

    pub(crate) fn degree(&self) -> usize {
        self.pts.len()
    }

    pub(crate) fn prec(&self) -> u32 {
        self.prec
    }

    pub(crate) fn real_count(&self) -> usize {
        self.real_count
    }

    pub(crate) fn is_real(&self, i: usize) -> bool {
        i < self.real_count
    }

    fn conj(&self, i: usize) -> usize {
        if i < self.real_count {
            i
        } else if (i - self.real_count).is_multiple_of(2) {
            i + 1
        } else {
            i - 1
        }
    }

    fn is_representative(&self, i: usize) -> bool {
        self.conj(i) >= i
    }

    /// Rigorous radius and approximate correction at one representative.
    fn local(&self, i: usize) -> (Option<BigInt>, Option<Pt>) {
        let prec = self.prec as usize;
        let z = &self.pts[i];
        let real = self.is_real(i);
        let coeffs = self.poly.coeffs();
        let n = coeffs.len() - 1;
        let lc = &coeffs[n];

        // Horner in fixed point; `err` bounds |computed - exact| in ulps.
        let modulus_up = isqrt_ceil(&(&z.x * &z.x + &z.y * &z.y));
        let mut a = lc << prec;
        let mut b = BigInt::zero();
        let mut err = BigInt::zero();
        for c in coeffs.iter().rev().skip(1) {
            if real {
                a = (&a * &z.x) >> prec;
            } else {
                let re = (&a * &z.x - &b * &z.y) >> prec;
                let im = (&a * &z.y + &b * &z.x) >> prec;
                a = re;
                b = im;
            }
            a += c << prec;
            err = ((&err * &modulus_up) >> prec) + 3;
        }
        let value_up = isqrt_ceil(&(&a * &a + &b * &b)) + &err;

        // prod (z_i - z_j): complex value for the step, squared modulus
        // rounded down for the certificate.
        let one = BigInt::one() << prec;
        let (mut c, mut d) = (one.clone(), BigInt::zero());
        let mut low_sq = BigInt::one() << (2 * prec);
        for (j, w) in self.pts.iter().enumerate() {
            if j == i {
                continue;
            }
            let dx = &z.x - &w.x;
            let dy = &z.y - &w.y;
            low_sq = (&low_sq * (&dx * &dx + &dy * &dy)) >> (2 * prec);
            let re = (&c * &dx - &d * &dy) >> prec;
            let im = (&c * &dy + &d * &dx) >> prec;
            c = re;
            d = im;
        }
        let low = isqrt_floor(&low_sq);
        let radius = if low.is_zero() {
            None
        } else {
            let den = lc.abs() * &low;
            let w_up = ((value_up << prec) + &den - 1u32) / den;
            Some(w_up * BigInt::from(n) + 1u32)
        };
        let mag = &c * &c + &d * &d;
        let step = if mag.is_zero() {
            None
        } else {
            let den = lc * mag;
            let sx = ((&a * &c + &b * &d) << prec) / &den;
            let sy = if real {
                BigInt::zero()
            } else {
                ((&b * &c - &a * &d) << prec) / &den
            };
            Some(Pt { x: sx, y: sy })
        };
        (radius, step)
    }

    fn round(&self) -> Round {
        let n = self.pts.len();
        let mut radii = vec![None; n];
        let mut steps = vec![None; n];
        for i in (0..n).filter(|&i| self.is_representative(i)) {
            let (r, s) = self.local(i);
            let k = self.conj(i);
            if k != i {
                radii[k] = r.clone();
                steps[k] = s.as_ref().map(|p| Pt {
                    x: p.x.clone(),
                    y: -&p.y,
                });
            }
            radii[i] = r;
            steps[i] = s;
        }
        Round { radii, steps }
    }

    fn disjoint(&self, radii: &[Option<BigInt>]) -> Option<Vec<BigInt>> {
        let r: Vec<BigInt> = radii.iter().cloned().collect::<Option<_>>()?;
        let n = r.len();
        for i in 0..n {
            // conjugate boxes of non-real roots must not touch the real axis
            if !self.is_real(i) && self.pts[i].y.abs() <= r[i] {
                return None;
            }
            for j in i + 1..n {
                let s = &r[i] + &r[j];
                let dx = (&self.pts[i].x - &self.pts[j].x).abs();
                let dy = (&self.pts[i].y - &self.pts[j].y).abs();
                if dx <= s && dy <= s {
                    return None;
                }
            }
        }
        Some(r)
    }

    fn apply(&mut self, steps: &[Option<Pt>]) {
        for (p, s) in self.pts.iter_mut().zip(steps) {
            if let Some(s) = s {
                p.x -= &s.x;
                p.y -= &s.y;
            }
        }
        // keep the pair structure exact
        for i in (self.real_count..self.pts.len()).step_by(2) {
            if self.pts[i].y.is_zero() {
                self.pts[i].y = BigInt::one();
            }
            let upper = self.pts[i].y.abs();
            self.pts[i].y = upper.clone();
            self.pts[i + 1].x = self.pts[i].x.clone();
            self.pts[i + 1].y = -upper;
        }
    }

    fn raise_precision(&mut self) -> Result<()> {
        let next = self.prec.saturating_mul(2);
        if next > self.ceiling {
            return Err(Error::PrecisionCeiling(self.ceiling));
        }
        let shift = (next - self.prec) as usize;
        for p in &mut self.pts {
            p.x <<= shift;
            p.y <<= shift;
        }
        self.prec = next;
        Ok(())
    }

    /// Runs rounds until the current centers are certified.
    fn certify(&mut self) -> Result<()> {
        let mut sweeps = 0;
        loop {
            let round = self.round();
            if let Some(r) = self.disjoint(&round.radii) {
                self.radii = r;
                return Ok(());
            }
            self.apply(&round.steps);
            sweeps += 1;
            if sweeps >= SWEEPS_PER_PRECISION {
                self.raise_precision()?;
                sweeps = 0;
            }
        }
    }

    fn max_radius(&self) -> BigInt {
        self.radii.iter().max().cloned().unwrap_or_default()
    }

    /// One correction step from the certified state, then re-certification.
    /// Raises the precision once the radii stop shrinking.
    pub(crate) fn tighten(&mut self) -> Result<()> {
        let (rb, pb) = (self.max_radius(), self.prec);
        let round = self.round();
        self.apply(&round.steps);
        self.certify()?;
        let (ra, pa) = (self.max_radius(), self.prec);
        let slow = (&ra << pb as usize) * 4u32 > (rb << pa as usize);
        if slow {
            self.stalls += 1;
            let floor = BigInt::from(self.degree()) << 40usize;
            if ra < floor || self.stalls >= 8 {
                self.stalls = 0;
                self.raise_precision()?;
                self.certify()?;
            }
        }
        Ok(())
    }

    /// Tightens until `done` holds.
    pub(crate) fn refine_until(&mut self, mut done: impl FnMut(&RootSet) -> bool) -> Result<()> {
        while !done(self) {
            self.tighten()?;
        }
        Ok(())
    }

    fn unit_sq(&self) -> BigInt {
        BigInt::one() << (2 * self.prec as usize)
    }

    /// Bounds on `|z|^2` over box `i`, in units of `2^(-2 prec)`.
    pub(crate) fn modulus_sq_bounds(&self, i: usize) -> (BigInt, BigInt) {
        let p = &self.pts[i];
        let r = &self.radii[i];
        if self.is_real(i) {
            (dist_sq(&p.x, r), reach_sq(&p.x, r))
        } else {
            (
                dist_sq(&p.x, r) + dist_sq(&p.y, r),
                reach_sq(&p.x, r) + reach_sq(&p.y, r),
            )
        }
    }

    pub(crate) fn meets_unit_circle(&self, i: usize) -> bool {
        let (lo, hi) = self.modulus_sq_bounds(i);
        let one = self.unit_sq();
        lo <= one && one <= hi
    }

    pub(crate) fn outside_unit_circle(&self, i: usize) -> bool {
        self.modulus_sq_bounds(i).0 > self.unit_sq()
    }

    pub(crate) fn count_meeting_unit_circle(&self) -> usize {
        (0..self.degree()).filter(|&i| self.meets_unit_circle(i)).count()
    }

    /// Index of the real box with the largest center.
    pub(crate) fn largest_real(&self) -> Option<usize> {
        (0..self.real_count).max_by(|&a, &b| self.pts[a].x.cmp(&self.pts[b].x))
    }

    fn rational(&self, v: BigInt) -> BigRational {
        BigRational::new(v, BigInt::one() << self.prec as usize)
    }

    /// `[lo, hi]` of the box's real part.
    pub(crate) fn real_interval(&self, i: usize) -> RationalInterval {
        let p = &self.pts[i];
        let r = &self.radii[i];
        RationalInterval::new(self.rational(&p.x - r), self.rational(&p.x + r))
    }

    pub(crate) fn enclosure(&self, i: usize) -> RootEnclosure {
        let p = &self.pts[i];
        let r = &self.radii[i];
        let im = if self.is_real(i) {
            RationalInterval::point(BigRational::zero())
        } else {
            RationalInterval::new(self.rational(&p.y - r), self.rational(&p.y + r))
        };
        RootEnclosure {
            re: self.real_interval(i),
            im,
            multiplicity: 1,
            certified: true,
        }
    }

    /// All enclosures, ordered by real part then imaginary part.
    pub(crate) fn enclosures(&self) -> Vec<RootEnclosure> {
        let mut idx: Vec<usize> = (0..self.degree()).collect();
        idx.sort_by(|&a, &b| {
            let (pa, pb) = (&self.pts[a], &self.pts[b]);
            pa.x.cmp(&pb.x).then_with(|| pa.y.cmp(&pb.y))
        });
        idx.into_iter().map(|i| self.enclosure(i)).collect()
    }

    /// Product of `|z|^2` over the boxes selected by `pick`, as
    /// `(lower, upper)` in units of `2^(-2 prec)`, rounded outward.
    pub(crate) fn product_modulus_sq(&self, pick: impl Fn(usize) -> bool) -> (BigInt, BigInt) {
        let shift = 2 * self.prec as usize;
        let mut lo = self.unit_sq();
        let mut hi = self.unit_sq();
        for i in (0..self.degree()).filter(|&i| pick(i)) {
            let (l, h) = self.modulus_sq_bounds(i);
            lo = (&lo * l) >> shift;
            hi = (&hi * h).div_ceil(&(BigInt::one() << shift));
        }
        (lo, hi)
    }
}
