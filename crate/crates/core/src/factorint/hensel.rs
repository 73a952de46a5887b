//! Multifactor quadratic Hensel lifting over `Z/p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{PolyP, Zp};

/// Polynomial with coefficients reduced into `[0, m)`, constant first.
pub(crate) type ZPoly = Vec<BigInt>;

fn trim(v: &mut ZPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn reduce(v: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = v.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

fn lift_word(v: &[u64]) -> ZPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    reduce(&v, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    reduce(&v, m)
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(b.last().is_some_and(One::is_one));
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

/// One quadratic step: from `f = g h`, `s g + t h = 1 (mod m)` to the same
/// relations modulo `m^2`. `g` and `h` are monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = sub(f, &mul(g, h, &m2), &m2);
    let (q, r) = divrem_monic(&mul(s, &e, &m2), h, &m2);
    let g_new = add(g, &add(&mul(t, &e, &m2), &mul(&q, g, &m2), &m2), &m2);
    let h_new = add(h, &r, &m2);
    let b = sub(
        &add(&mul(s, &g_new, &m2), &mul(t, &h_new, &m2), &m2),
        &[BigInt::one()],
        &m2,
    );
    let (c, d) = divrem_monic(&mul(s, &b, &m2), &h_new, &m2);
    let s_new = sub(s, &d, &m2);
    let t_new = sub(
        &sub(t, &mul(t, &b, &m2), &m2),
        &mul(&c, &g_new, &m2),
        &m2,
    );
    (g_new, h_new, s_new, t_new)
}

/// Lifts the factorization `f = prod factors (mod p)` of a monic `f`
/// (given modulo `modulus = p^(2^j)`) to monic factors modulo `modulus`.
/// The `factors` are monic, pairwise coprime mod `p`, in a fixed order that
/// the output preserves.
pub(crate) fn multifactor_lift(
    f: &[BigInt],
    factors: &[PolyP],
    zp: Zp,
    modulus: &BigInt,
) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![reduce(f, modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let g0 = left.iter().fold(vec![1u64], |acc, x| zp.pmul(&acc, x));
    let h0 = right.iter().fold(vec![1u64], |acc, x| zp.pmul(&acc, x));
    let (one, s0, t0) = zp.pxgcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(zp.modulus());
    let mut m = p;
    let (mut g, mut h, mut s, mut t) = (lift_word(&g0), lift_word(&h0), lift_word(&s0), lift_word(&t0));
    while &m < modulus {
        let fm = reduce(f, &(&m * &m));
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    debug_assert_eq!(&m, modulus);
    let mut out = multifactor_lift(&g, left, zp, modulus);
    out.extend(multifactor_lift(&h, right, zp, modulus));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unipoly::IntPoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lifted_product_matches() {
        // (t^2 + 3t - 5)(t^3 - 7t + 11)(t - 4)
        let f = &(&"t^2 + 3t - 5".parse::<IntPoly>().unwrap()
            * &"t^3 - 7t + 11".parse::<IntPoly>().unwrap())
            * &"t - 4".parse::<IntPoly>().unwrap();
        let zp = Zp::new(37);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fac = zp.factor_squarefree(&zp.reduce(&f), &mut rng);
        let modulus = BigInt::from(37).pow(8);
        let lifted = multifactor_lift(f.coeffs(), &fac, zp, &modulus);
        let prod = lifted
            .iter()
            .fold(vec![BigInt::one()], |acc, g| mul(&acc, g, &modulus));
        assert_eq!(prod, reduce(f.coeffs(), &modulus));
    }
}
