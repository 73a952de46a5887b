use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::IntPoly;

/// Where to count real roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootRange {
    WholeLine,
    /// `(lo, hi]`
    HalfOpen(BigRational, BigRational),
    /// `(lo, +inf)`
    Above(BigRational),
    /// `(-inf, hi]`
    AtMost(BigRational),
}

impl RootRange {
    pub fn half_open(lo: i64, hi: i64) -> Self {
        RootRange::HalfOpen(BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()))
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...` with every member reduced to
/// its primitive part (positive scaling only, so signs are preserved).
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut polys = Vec::new();
        if p.is_zero() {
            return SturmChain { polys };
        }
        let p0 = positive_primitive(p);
        let p1 = positive_primitive(&p0.derivative());
        polys.push(p0);
        if p1.is_zero() {
            return SturmChain { polys };
        }
        polys.push(p1);
        loop {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            if b.deg() == 0 {
                break;
            }
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let delta_plus_one = a.deg() - b.deg() + 1;
            let lc_negative = b.leading_coeff().unwrap().is_negative();
            // prem = lc^(delta+1) * rem, and the chain needs -rem.
            let flip = !(lc_negative && delta_plus_one % 2 == 1);
            let r = positive_primitive(&r);
            polys.push(if flip { -r } else { r });
        }
        SturmChain { polys }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.polys.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Number of distinct real roots of the underlying polynomial in `range`.
    pub fn count(&self, range: &RootRange) -> usize {
        if self.polys.is_empty() {
            return 0;
        }
        let (lo, hi) = match range {
            RootRange::WholeLine => (
                self.variations_at_infinity(false),
                self.variations_at_infinity(true),
            ),
            RootRange::HalfOpen(a, b) => {
                if a >= b {
                    return 0;
                }
                (self.variations_at(a), self.variations_at(b))
            }
            RootRange::Above(a) => (self.variations_at(a), self.variations_at_infinity(true)),
            RootRange::AtMost(b) => (self.variations_at_infinity(false), self.variations_at(b)),
        };
        lo.saturating_sub(hi)
    }

    /// Roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        let c = self.count(&RootRange::HalfOpen(lo.clone(), hi.clone()));
        if self.polys[0].sign_at(hi) == Ordering::Equal {
            c - 1
        } else {
            c
        }
    }
}

fn positive_primitive(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let c = p.content();
    IntPoly::new(p.coeffs().iter().map(|x| x / &c).collect())
}

/// Exact number of distinct real roots of a squarefree polynomial in `range`.
pub fn sturm_count(p: &IntPoly, range: &RootRange) -> usize {
    SturmChain::new(p).count(range)
}

fn sign_variations<'a, I: Iterator<Item = &'a BigInt>>(coeffs: I) -> usize {
    SturmChain::variations(coeffs.map(super::poly::sign_of))
}

/// Descartes bound `V(p(t)) + V(p(-t))` on the number of nonzero real
/// roots counted with multiplicity.
pub fn descartes_bound(p: &IntPoly) -> usize {
    let pos = sign_variations(p.coeffs().iter());
    let neg = p.negate_variable();
    pos + sign_variations(neg.coeffs().iter())
}

/// Number of distinct real roots. Self-reciprocal inputs are handled
/// through the trace polynomial (half the degree): after removing `t -+ 1`,
/// real roots pair up as `x, 1/x` over roots `s = x + 1/x` with `|s| > 2`.
pub fn count_real_roots(p: &IntPoly) -> usize {
    if p.deg() == 0 {
        return 0;
    }
    let f = super::squarefree_part(p);
    let (shift, mut f) = f.strip_monomial();
    let mut count = usize::from(shift > 0);
    for r in [1i64, -1] {
        let lin = IntPoly::linear_root(r);
        if let Some(q) = f.checked_div(&lin) {
            count += 1;
            f = q;
        }
    }
    if f.deg() == 0 {
        return count;
    }
    if f.deg() % 2 == 0
        && super::reciprocal_type(&f).ok() == Some(super::ReciprocalType::SelfReciprocal)
    {
        if let Ok(q) = super::trace_transform(&f) {
            let chain = SturmChain::new(&q);
            let two = BigRational::from_integer(BigInt::from(2));
            let outside = chain.count(&RootRange::Above(two.clone()))
                + chain.count(&RootRange::AtMost(-two));
            return count + 2 * outside;
        }
    }
    count + SturmChain::new(&f).count(&RootRange::WholeLine)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn whole_line_counts() {
        assert_eq!(sturm_count(&p("t^3 - t"), &RootRange::WholeLine), 3);
        assert_eq!(sturm_count(&p("t^2 + t + 1"), &RootRange::WholeLine), 0);
        assert_eq!(sturm_count(&p("t - 2"), &RootRange::WholeLine), 1);
        assert_eq!(sturm_count(&p("-3t^5 + t + 1"), &RootRange::WholeLine), 1);
    }

    #[test]
    fn interval_counts() {
        let f = p("t^2 - 3t + 1");
        assert_eq!(sturm_count(&f, &RootRange::half_open(0, 1)), 1);
        assert_eq!(sturm_count(&f, &RootRange::Above(q(1, 1))), 1);
        assert_eq!(sturm_count(&f, &RootRange::AtMost(q(1, 1))), 1);
        // Roots at the right endpoint count, at the left endpoint they don't.
        let g = p("t^3 - t");
        assert_eq!(sturm_count(&g, &RootRange::half_open(-1, 1)), 2);
        assert_eq!(SturmChain::new(&g).count_open(&q(-1, 1), &q(1, 1)), 1);
        assert_eq!(sturm_count(&g, &RootRange::HalfOpen(q(-1, 2), q(1, 2))), 1);
    }

    #[test]
    fn chain_with_negative_leading_coefficients() {
        let f = p("-t^4 + 5t^2 - 4");
        assert_eq!(sturm_count(&f, &RootRange::WholeLine), 4);
        assert_eq!(sturm_count(&f, &RootRange::HalfOpen(q(3, 2), q(3, 1))), 1);
    }

    #[test]
    fn real_root_counts() {
        for (f, want) in [
            ("t^4 - t^3 - t^2 - t + 1", 2),
            ("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1", 2),
            ("t^2 - 3t + 1", 2),
            ("t^4 - t^2 + 1", 0),
            ("t^3 - t", 3),
            ("t^2 - 2t + 1", 1),
            ("t^6 - 1", 2),
            ("t^5 + t^3", 1),
        ] {
            let f = p(f);
            assert_eq!(count_real_roots(&f), want, "{f}");
            let sf = crate::unipoly::squarefree_part(&f);
            assert_eq!(sturm_count(&sf, &RootRange::WholeLine), want, "{f}");
        }
    }

    #[test]
    fn descartes_examples() {
        assert!(descartes_bound(&p("t^28 - t^23 - t^14 - t^5 + 1")) <= 8);
        assert_eq!(descartes_bound(&p("t^2 - 3t + 1")), 2);
        assert_eq!(descartes_bound(&p("t^2 + 1")), 0);
    }
}
