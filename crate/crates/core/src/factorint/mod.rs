//! Complete factorization of integer polynomials into irreducibles over
//! `Z`: content and monomial stripping, squarefree decomposition, then
//! Zassenhaus (modular factorization, Hensel lifting, subset
//! recombination) on each squarefree part.

mod hensel;
pub mod modp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::unipoly::{isqrt_ceil, squarefree_decomposition, IntPoly};
use modp::{primes_after, PolyP, Zp};

/// How many good primes are tried before choosing the one with the fewest
/// modular factors.
const PRIME_TRIALS: usize = 5;
/// Primes are taken in increasing order starting above this value.
const PRIME_FLOOR: u64 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub poly: IntPoly,
    pub multiplicity: u32,
}

/// `unit * content * t^monomial_shift * prod factor^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: i8,
    #[serde(with = "crate::serde_bigint")]
    pub content: BigInt,
    pub monomial_shift: usize,
    pub factors: Vec<FactorEntry>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::monomial(&self.content * BigInt::from(self.unit), self.monomial_shift);
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity, including
    /// the monomial `t`.
    pub fn factor_count(&self) -> usize {
        self.monomial_shift + self.factors.iter().map(|f| f.multiplicity as usize).sum::<usize>()
    }

    pub fn polys(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|f| &f.poly)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.content.is_one() {
            parts.push(self.content.to_string());
        }
        match self.monomial_shift {
            0 => {}
            1 => parts.push("t".into()),
            k => parts.push(format!("t^{k}")),
        }
        for e in &self.factors {
            if e.multiplicity == 1 {
                parts.push(format!("({})", e.poly));
            } else {
                parts.push(format!("({})^{}", e.poly, e.multiplicity));
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        if self.unit < 0 {
            f.write_str("-")?;
        }
        f.write_str(&parts.join(" * "))
    }
}

fn canonical_order(a: &IntPoly, b: &IntPoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Complete factorization of a nonzero polynomial into irreducibles.
pub fn factor(p: &IntPoly) -> Result<Factorization> {
    let (content, prim) = p.content_and_primitive()?;
    let unit: i8 = if content.is_negative() { -1 } else { 1 };
    let (shift, core) = prim.strip_monomial();
    let mut factors: Vec<FactorEntry> = Vec::new();
    for (part, multiplicity) in squarefree_decomposition(&core) {
        for poly in factor_squarefree(&part) {
            factors.push(FactorEntry { poly, multiplicity });
        }
    }
    factors.sort_by(|a, b| canonical_order(&a.poly, &b.poly));
    Ok(Factorization {
        unit,
        content: content.abs(),
        monomial_shift: shift,
        factors,
    })
}

/// True iff `p` (primitive, degree >= 1) is irreducible over `Z`.
pub fn is_irreducible(p: &IntPoly) -> bool {
    if p.deg() == 0 {
        return false;
    }
    if p.deg() == 1 {
        return p.content().is_one();
    }
    match factor(p) {
        Ok(f) => {
            f.monomial_shift == 0
                && f.content.is_one()
                && f.factors.len() == 1
                && f.factors[0].multiplicity == 1
        }
        Err(_) => false,
    }
}

fn seeded_rng(f: &IntPoly, p: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(f.to_string().as_bytes());
    h.update(p.to_le_bytes());
    let digest = h.finalize();
    let mut seed = [0u8; 8];
    seed.copy_from_slice(&digest[..8]);
    ChaCha8Rng::seed_from_u64(u64::from_le_bytes(seed))
}

/// Subset sums of a degree multiset, as a membership table over `0..=n`.
fn subset_sums(degrees: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

struct PrimeChoice {
    zp: Zp,
    monic_image: PolyP,
    factor_count: usize,
}

/// Factors a primitive squarefree `f` with positive leading coefficient and
/// `f(0) != 0` into irreducibles.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let mut allowed = vec![true; n + 1];
    let mut best: Option<PrimeChoice> = None;
    let mut tried = 0;
    for p in primes_after(PRIME_FLOOR) {
        let zp = Zp::new(p);
        if !zp.is_good_reduction(f) {
            continue;
        }
        let image = zp.monic(&zp.reduce(f));
        let mut degrees = Vec::new();
        for (g, d) in zp.distinct_degree(&image) {
            degrees.extend(std::iter::repeat_n(d, (g.len() - 1) / d));
        }
        if degrees.len() == 1 {
            return vec![f.clone()];
        }
        for (a, s) in allowed.iter_mut().zip(subset_sums(&degrees, n)) {
            *a &= s;
        }
        if best.as_ref().is_none_or(|b| degrees.len() < b.factor_count) {
            best = Some(PrimeChoice {
                zp,
                monic_image: image,
                factor_count: degrees.len(),
            });
        }
        tried += 1;
        if tried == PRIME_TRIALS {
            break;
        }
    }
    if !allowed[1..n].iter().any(|&a| a) {
        return vec![f.clone()];
    }
    let choice = best.expect("some good prime exists");
    let zp = choice.zp;
    let mut rng = seeded_rng(f, zp.modulus());
    let modular = zp.factor_squarefree(&choice.monic_image, &mut rng);

    // Any factor of f, scaled by lc(f)/lc(factor), has coefficients bounded
    // by |lc f| * 2^n * ||f||_2; the modulus must exceed twice that.
    let lc = f.leading_coeff().unwrap().clone();
    let bound = lc.abs() * (BigInt::one() << n) * isqrt_ceil(&f.norm2_squared());
    let p = BigInt::from(zp.modulus());
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
    }
    let lc_inv = lc
        .extended_gcd(&modulus)
        .x
        .mod_floor(&modulus);
    let monic_f: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * &lc_inv).mod_floor(&modulus))
        .collect();
    let lifted = hensel::multifactor_lift(&monic_f, &modular, zp, &modulus);
    recombine(f, lifted, &modulus, &allowed)
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

/// Lexicographic k-subsets of `0..n`.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn recombine(
    f: &IntPoly,
    lifted: Vec<Vec<BigInt>>,
    modulus: &BigInt,
    allowed: &[bool],
) -> Vec<IntPoly> {
    let half = modulus / 2;
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut rest = f.clone();
    let mut found: Vec<IntPoly> = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let r = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let degree: usize = idx.iter().map(|&i| remaining[i].len() - 1).sum();
            if allowed[degree] {
                let lc = rest.leading_coeff().unwrap().clone();
                let target0 = &lc * rest.constant_term();
                let c0 = idx
                    .iter()
                    .fold(lc.clone(), |acc, &i| (acc * &remaining[i][0]).mod_floor(modulus));
                let c0 = symmetric(&c0, modulus, &half);
                if !c0.is_zero() && (&target0 % &c0).is_zero() {
                    let prod = idx.iter().fold(vec![lc.clone()], |acc, &i| {
                        hensel::mul(&acc, &remaining[i], modulus)
                    });
                    let cand = IntPoly::new(
                        prod.iter().map(|c| symmetric(c, modulus, &half)).collect(),
                    )
                    .primitive_part();
                    if let Some(q) = rest.checked_div(&cand) {
                        found.push(cand);
                        rest = q;
                        for &i in idx.iter().rev() {
                            remaining.remove(i);
                        }
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        size += 1;
    }
    if rest.deg() > 0 {
        found.push(rest.primitive_part());
    }
    found
}
