use num_bigint::BigInt;
use num_traits::One;

use super::IntPoly;
use crate::factorint::modp::Zp;

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut num = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = num
                .exact_div(&cyclotomic_poly(d))
                .expect("cyclotomic factors divide t^n - 1");
        }
    }
    num
}

const CHECK_PRIMES: [u64; 2] = [(1 << 61) - 1, 4_611_686_018_427_387_847];

/// For irreducible `p` of degree `d >= 1`: the order `n` if `p` is the
/// `n`-th cyclotomic polynomial. Tests `p | t^n - 1` for the `n <= 2d^2`
/// with `phi(n) = d` (any other `n` cannot give an irreducible factor of
/// degree `d`).
pub fn is_cyclotomic(p: &IntPoly) -> Option<u64> {
    let d = p.degree()? as u64;
    if d == 0 || !p.is_monic() {
        return None;
    }
    let c0 = p.constant_term();
    if c0 != BigInt::one() && c0 != -BigInt::one() {
        return None;
    }
    let x = [0u64, 1];
    for n in 1..=2 * d * d {
        if totient(n) != d {
            continue;
        }
        let passes_mod = CHECK_PRIMES.iter().all(|&q| {
            let z = Zp::new(q);
            let m = z.reduce(p);
            z.powmod(&x, n, &m) == vec![1]
        });
        if passes_mod && divides_t_pow_minus_one(p, n) {
            return Some(n);
        }
    }
    None
}

fn divides_t_pow_minus_one(p: &IntPoly, n: u64) -> bool {
    let t = IntPoly::monomial(BigInt::one(), 1);
    let mut acc = IntPoly::one();
    let mut base = t.pseudo_rem(p);
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &base).pseudo_rem(p);
        }
        e >>= 1;
        if e > 0 {
            base = (&base * &base).pseudo_rem(p);
        }
    }
    acc.is_one()
}
