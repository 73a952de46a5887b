//! Exact real root isolation by Sturm bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::unipoly::{IntPoly, RationalInterval, RootRange, SturmChain};

/// `1 + max |a_k / a_n|`, an integer bound on the modulus of every root.
pub(crate) fn cauchy_bound(p: &IntPoly) -> BigInt {
    let lc = p.leading_coeff().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    BigInt::one() + (m + &lc - 1) / lc
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Disjoint closed intervals with rational endpoints, one per distinct real
/// root, sorted ascending. No endpoint is a root unless the interval is a
/// single point.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<RationalInterval> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let b = BigRational::from_integer(cauchy_bound(p));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    // Intervals are half-open (lo, hi]; the bound itself is never a root.
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&RootRange::HalfOpen(lo.clone(), hi.clone()));
        match n {
            0 => {}
            1 => {
                if p.sign_at(&hi) == Ordering::Equal {
                    out.push(RationalInterval::point(hi));
                } else {
                    out.push(RationalInterval::new(lo, hi));
                }
            }
            _ => {
                let mid = (&lo + &hi) / two();
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    separate(p, &mut out);
    out
}

/// Shrinks neighbours that share an endpoint until they are disjoint.
fn separate(p: &IntPoly, ivs: &mut [RationalInterval]) {
    for i in 1..ivs.len() {
        while ivs[i - 1].hi >= ivs[i].lo {
            let (a, b) = ivs.split_at_mut(i);
            bisect_once(p, &mut a[i - 1]);
            bisect_once(p, &mut b[0]);
        }
    }
}

/// Halves an isolating interval of a simple root, keeping the half with a
/// sign change (or collapsing to the root if the midpoint hits it).
fn bisect_once(p: &IntPoly, iv: &mut RationalInterval) {
    if iv.lo == iv.hi {
        return;
    }
    let mid = iv.midpoint();
    let sm = p.sign_at(&mid);
    if sm == Ordering::Equal {
        *iv = RationalInterval::point(mid);
        return;
    }
    let slo = p.sign_at(&iv.lo);
    if slo == Ordering::Equal {
        *iv = RationalInterval::point(iv.lo.clone());
    } else if slo != sm {
        iv.hi = mid;
    } else {
        iv.lo = mid;
    }
}

/// Bisects an isolating interval of a simple real root of `p` until its
/// width is at most `2^-bits`.
pub fn refine_real_root(p: &IntPoly, iv: &RationalInterval, bits: u32) -> RationalInterval {
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let mut iv = iv.clone();
    if iv.lo != iv.hi && p.sign_at(&iv.hi) == Ordering::Equal {
        return RationalInterval::point(iv.hi);
    }
    while iv.width() > target {
        bisect_once(p, &mut iv);
    }
    iv
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
    fn golden_quadratic() {
        let f = p("t^2 - 3t + 1");
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let s5 = 5f64.sqrt();
        for (iv, r) in roots.iter().zip([(3.0 - s5) / 2.0, (3.0 + s5) / 2.0]) {
            let lo: f64 = num_traits::ToPrimitive::to_f64(&iv.lo).unwrap();
            let hi: f64 = num_traits::ToPrimitive::to_f64(&iv.hi).unwrap();
            assert!(lo <= r && r <= hi);
        }
        let tight = refine_real_root(&f, &roots[1], 60);
        assert!(tight.width() <= q(1, 1 << 30).pow(2));
        // r^2 = 3r - 1 brackets: p changes sign across the interval.
        assert_ne!(f.sign_at(&tight.lo), f.sign_at(&tight.hi));
    }

    #[test]
    fn no_and_exact_roots() {
        assert!(isolate_real_roots(&p("t^2 + 1")).is_empty());
        let roots = isolate_real_roots(&p("t^3 - t"));
        assert_eq!(roots.len(), 3);
        for (iv, r) in roots.iter().zip([-1, 0, 1]) {
            assert!(iv.contains(&q(r, 1)));
        }
        for w in roots.windows(2) {
            assert!(w[0].hi < w[1].lo);
        }
    }

    #[test]
    fn close_roots_are_separated() {
        // roots 1/3 and 1/3 + 1/1000
        let f = &p("3t - 1") * &p("3000t - 1003");
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi < roots[1].lo);
        assert!(roots[0].contains(&q(1, 3)));
        assert!(roots[1].contains(&q(1003, 3000)));
    }
}
