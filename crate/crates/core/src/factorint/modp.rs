//! Dense polynomial arithmetic over the prime field `Z/pZ`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::unipoly::IntPoly;

/// Polynomial over `Z/pZ`, constant term first, no trailing zeros.
pub type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2);
        Zp { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p <= u32::MAX as u64 {
            a * b % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        x.mod_floor(&m).to_u64().unwrap()
    }

    pub fn reduce(&self, f: &IntPoly) -> PolyP {
        let mut v: PolyP = f.coeffs().iter().map(|c| self.from_bigint(c)).collect();
        trim(&mut v);
        v
    }

    pub fn monic(&self, f: &[u64]) -> PolyP {
        let Some(&lc) = f.last() else {
            return Vec::new();
        };
        let inv = self.inv(lc);
        f.iter().map(|&c| self.mul(c, inv)).collect()
    }

    pub fn padd(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let mut v: PolyP = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn psub(&self, a: &[u64], b: &[u64]) -> PolyP {
        let n = a.len().max(b.len());
        let mut v: PolyP = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut v);
        v
    }

    pub fn pmul(&self, a: &[u64], b: &[u64]) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        if self.p <= u32::MAX as u64 {
            // Accumulate in u128 blocks to postpone reductions.
            let mut acc = vec![0u128; out.len()];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] += (x * y) as u128;
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = (a % self.p as u128) as u64;
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    out[i + j] = self.add(out[i + j], self.mul(x, y));
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn pscale(&self, a: &[u64], c: u64) -> PolyP {
        let mut v: PolyP = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut v);
        v
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn pdivrem(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn prem(&self, a: &[u64], b: &[u64]) -> PolyP {
        self.pdivrem(a, b).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn pgcd(&self, a: &[u64], b: &[u64]) -> PolyP {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.prem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn pxgcd(&self, a: &[u64], b: &[u64]) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1): (PolyP, PolyP) = (vec![1], Vec::new());
        let (mut t0, mut t1): (PolyP, PolyP) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.pdivrem(&r0, &r1);
            let s2 = self.psub(&s0, &self.pmul(&q, &s1));
            let t2 = self.psub(&t0, &self.pmul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let Some(&lc) = r0.last() else {
            return (Vec::new(), Vec::new(), Vec::new());
        };
        let inv = self.inv(lc);
        (
            self.pscale(&r0, inv),
            self.pscale(&s0, inv),
            self.pscale(&t0, inv),
        )
    }

    pub fn pderiv(&self, a: &[u64]) -> PolyP {
        let mut v: PolyP = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| self.mul(c, k as u64 % self.p))
            .collect();
        trim(&mut v);
        v
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> PolyP {
        self.prem(&self.pmul(a, b), m)
    }

    /// `base^e mod m` for a machine-word exponent.
    pub fn powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> PolyP {
        let mut acc: PolyP = self.prem(&[1], m);
        let mut b = self.prem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(&acc, &b, m);
            }
            e >>= 1;
            if e > 0 {
                b = self.mulmod(&b, &b, m);
            }
        }
        acc
    }

    /// `base^e mod m` for an arbitrary-precision exponent.
    pub fn powmod_big(&self, base: &[u64], e: &BigUint, m: &[u64]) -> PolyP {
        let mut acc: PolyP = self.prem(&[1], m);
        let b = self.prem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &b, m);
            }
        }
        acc
    }

    /// True when the reduction of `f` stays squarefree of the same degree.
    pub fn is_good_reduction(&self, f: &IntPoly) -> bool {
        let Some(lc) = f.leading_coeff() else {
            return false;
        };
        if self.from_bigint(lc) == 0 {
            return false;
        }
        let fp = self.reduce(f);
        let g = self.pgcd(&fp, &self.pderiv(&fp));
        g.len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(PolyP, usize)> {
        let x: PolyP = vec![0, 1];
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let mut h = self.prem(&x, &rest);
        let mut d = 1;
        while rest.len() > 2 * d {
            h = self.powmod(&h, self.p, &rest);
            let g = self.pgcd(&self.psub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.pdivrem(&rest, &g).0;
                h = self.prem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if rest.len() > 1 {
            let deg = rest.len() - 1;
            out.push((self.monic(&rest), deg));
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`
    /// (odd `p`, Cantor-Zassenhaus).
    pub fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) >> 1;
        loop {
            let mut a: PolyP = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let g = self.pgcd(&a, f);
            let split = if g.len() > 1 {
                g
            } else {
                let b = self.psub(&self.powmod_big(&a, &e, f), &[1]);
                self.pgcd(&b, f)
            };
            if split.len() > 1 && split.len() < f.len() {
                let other = self.pdivrem(f, &split).0;
                let mut parts = self.equal_degree(&split, d, rng);
                parts.extend(self.equal_degree(&self.monic(&other), d, rng));
                return parts;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted by degree then coefficients.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub fn trim(v: &mut PolyP) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degrees of the irreducible factors of `f mod p`, or `None` when `p` is
/// not a good prime for `f` (leading coefficient vanishes or the reduction
/// is not squarefree).
pub fn degree_pattern(f: &IntPoly, p: u64) -> Option<Vec<usize>> {
    let zp = Zp::new(p);
    if !zp.is_good_reduction(f) {
        return None;
    }
    let fp = zp.monic(&zp.reduce(f));
    let mut degs: Vec<usize> = Vec::new();
    for (g, d) in zp.distinct_degree(&fp) {
        let count = (g.len() - 1) / d;
        degs.extend(std::iter::repeat_n(d, count));
    }
    degs.sort_unstable();
    Some(degs)
}

/// Primes in increasing order starting after `after`.
pub fn primes_after(after: u64) -> impl Iterator<Item = u64> {
    (after + 1..).filter(|&n| is_prime_u64(n))
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_zero_poly(v: &[u64]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_basics() {
        let z = Zp::new(31);
        assert_eq!(z.mul(z.inv(7), 7), 1);
        assert_eq!(z.sub(3, 5), 29);
        let big = Zp::new((1u64 << 61) - 1);
        assert_eq!(big.mul(big.inv(12345), 12345), 1);
    }

    #[test]
    fn xgcd_identity() {
        let z = Zp::new(37);
        let a = vec![1, 2, 0, 1];
        let b = vec![5, 0, 1];
        let (g, s, t) = z.pxgcd(&a, &b);
        let lhs = z.padd(&z.pmul(&s, &a), &z.pmul(&t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn factors_cyclotomic_mod_p() {
        // t^4 - t^2 + 1 splits into linear factors mod 37 (37 = 1 mod 12).
        let f: IntPoly = "t^4 - t^2 + 1".parse().unwrap();
        let z = Zp::new(37);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fac = z.factor_squarefree(&z.reduce(&f), &mut rng);
        assert_eq!(fac.len(), 4);
        let prod = fac.iter().fold(vec![1u64], |acc, g| z.pmul(&acc, g));
        assert_eq!(prod, z.reduce(&f));
        assert_eq!(degree_pattern(&f, 37), Some(vec![1, 1, 1, 1]));
        // mod 41 = 5 mod 12: two quadratics.
        assert_eq!(degree_pattern(&f, 41), Some(vec![2, 2]));
    }

    #[test]
    fn bad_primes_rejected() {
        let f: IntPoly = "31*t^2 + 1".parse().unwrap();
        assert_eq!(degree_pattern(&f, 31), None);
        let g: IntPoly = "t^2 + 2*t + 1".parse().unwrap();
        assert_eq!(degree_pattern(&g, 37), None);
    }
}
