//! Double-precision Aberth iteration, used only to seed the certified
//! refinement.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::unipoly::IntPoly;

const MAX_SWEEPS: usize = 600;

fn horner2(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(c[c.len() - 1], 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev().skip(1) {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Approximations to all `deg p` complex roots.
pub(crate) fn approximate_roots(p: &IntPoly) -> Vec<Complex64> {
    let n = p.deg();
    if n == 0 {
        return Vec::new();
    }
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::MAX))
        .collect();
    let lc = c[n].abs();
    let r0 = (c[0].abs() / lc).powf(1.0 / n as f64).clamp(1e-3, 1e3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(r0, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut quiet = vec![false; n];
    for _ in 0..MAX_SWEEPS {
        let mut moved = false;
        for i in 0..n {
            if quiet[i] {
                continue;
            }
            let (pv, dpv) = horner2(&c, z[i]);
            if pv.norm() == 0.0 {
                quiet[i] = true;
                continue;
            }
            let ratio = pv / dpv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= 1e-15 * z[i].norm().max(1.0) {
                quiet[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Splits approximations into `real_count` real roots and conjugate
/// pairs. Returns the real parts of the real roots and one upper-half-plane
/// representative per pair.
pub(crate) fn symmetrize(mut z: Vec<Complex64>, real_count: usize) -> (Vec<f64>, Vec<Complex64>) {
    z.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let rest = z.split_off(real_count.min(z.len()));
    let mut reals: Vec<f64> = z.iter().map(|c| c.re).collect();
    reals.sort_by(f64::total_cmp);
    let mut pool = rest;
    let mut pairs = Vec::new();
    while let Some(a) = pool.pop() {
        let (k, _) = pool
            .iter()
            .enumerate()
            .map(|(k, b)| (k, (b.conj() - a).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap_or((usize::MAX, 0.0));
        let b = if k == usize::MAX { a.conj() } else { pool.swap_remove(k) };
        let re = (a.re + b.re) / 2.0;
        let im = ((a.im.abs() + b.im.abs()) / 2.0).max(f64::MIN_POSITIVE);
        pairs.push(Complex64::new(re, im));
    }
    (reals, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_roots_of_small_polynomials() {
        let p: IntPoly = "t^4 - t^3 - t^2 - t + 1".parse().unwrap();
        let z = approximate_roots(&p);
        assert_eq!(z.len(), 4);
        let (reals, pairs) = symmetrize(z, 2);
        assert_eq!((reals.len(), pairs.len()), (2, 1));
        assert!((reals[1] - 1.72208).abs() < 1e-5);
        assert!(pairs[0].im > 0.0);
        assert!((pairs[0].norm() - 1.0).abs() < 1e-12);
    }
}
