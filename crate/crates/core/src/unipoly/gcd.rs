use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::factorint::modp::{primes_after, Zp};

/// Primitive gcd with positive leading coefficient, via the subresultant
/// remainder sequence. `gcd(0, 0)` is zero.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    let (mut a, mut b) = if a.deg() >= b.deg() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    if b.deg() == 0 {
        return IntPoly::one();
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b.primitive_part();
        }
        if r.deg() == 0 {
            return IntPoly::one();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = IntPoly::new(r.coeffs().iter().map(|c| c / &divisor).collect());
        g = a.leading_coeff().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1),
        };
    }
}

/// Fast sufficient test: `p` is squarefree if its reduction modulo some
/// small prime keeps its degree and is squarefree. Returns `false` when no
/// tried prime certifies it (which does not imply a repeated factor).
pub(crate) fn squarefree_mod_p_certificate(p: &IntPoly) -> bool {
    primes_after(1000)
        .take(4)
        .any(|q| Zp::new(q).is_good_reduction(p))
}

/// `p / gcd(p, p')`, made primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let f = p.primitive_part();
    if f.deg() == 0 || squarefree_mod_p_certificate(&f) {
        return f;
    }
    let g = gcd(&f, &f.derivative());
    f.exact_div(&g)
        .expect("gcd with the derivative divides")
        .primitive_part()
}

/// Squarefree decomposition (Yun): primitive pairwise coprime `g_i` with
/// `pp(p) = prod g_i^i`. Constant `g_i` are omitted.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let f = p.primitive_part();
    if f.deg() == 0 {
        return Vec::new();
    }
    if squarefree_mod_p_certificate(&f) {
        return vec![(f, 1)];
    }
    let df = f.derivative();
    let c = gcd(&f, &df);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let y = df.exact_div(&c).expect("gcd divides derivative");
    let mut z = &y - &w.derivative();
    let mut out = Vec::new();
    let mut i = 1u32;
    while w.deg() > 0 {
        let g = gcd(&w, &z);
        if g.deg() > 0 {
            out.push((g.clone(), i));
        }
        w = w.exact_div(&g).expect("Yun step divides w");
        let y = z.exact_div(&g).expect("Yun step divides z");
        z = &y - &w.derivative();
        i += 1;
    }
    out.into_iter()
        .map(|(g, i)| (g.primitive_part(), i))
        .collect()
}

/// Nonnegative integer square root ceiling, used for norm bounds.
pub(crate) fn isqrt_ceil(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let s = n.abs().sqrt();
    if &(&s * &s) == n {
        s
    } else {
        s + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("t^2 - 1"), &p("t^3 - 1")), p("t - 1"));
        let f = &p("t - 1").pow(2) * &p("t + 2");
        assert_eq!(gcd(&f, &f.derivative()), p("t - 1"));
        assert_eq!(gcd(&p("t^2 + 1"), &p("t^2 - 1")), IntPoly::one());
        assert_eq!(gcd(&p("6t^2 - 6"), &p("-4t + 4")), p("t - 1"));
        assert_eq!(gcd(&IntPoly::zero(), &p("-2t - 2")), p("t + 1"));
    }

    #[test]
    fn gcd_of_products_with_growth() {
        let common = p("3t^3 - 5t + 7");
        let a = &common * &p("t^6 + 4t^5 - 9t^2 + 11");
        let b = &common * &p("2t^5 - 13t^3 + t - 17");
        assert_eq!(gcd(&a, &b), common);
    }

    #[test]
    fn squarefree_examples() {
        let f = &p("t - 1").pow(2) * &p("t + 1");
        assert_eq!(squarefree_part(&f), p("t^2 - 1"));
        assert_eq!(squarefree_part(&p("t^5")), p("t"));
        assert_eq!(squarefree_part(&p("-t^2 + 3t - 1")), p("t^2 - 3t + 1"));
    }

    #[test]
    fn yun_decomposition() {
        let a = p("t^2 + 1");
        let b = p("t - 3");
        let c = p("2t + 1");
        let f = &(&a * &b.pow(2)) * &c.pow(3);
        let dec = squarefree_decomposition(&f);
        assert_eq!(dec, vec![(a, 1), (b, 2), (c, 3)]);
    }
}
