use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::IntPoly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReciprocalType {
    SelfReciprocal,
    AntiReciprocal,
    None,
}

/// Compares `p` with its reversal `t^deg p(1/t)`.
pub fn reciprocal_type(p: &IntPoly) -> Result<ReciprocalType> {
    if p.constant_term().is_zero() {
        return Err(Error::Precondition(
            "reciprocal type needs a nonzero constant term".into(),
        ));
    }
    let rev = p.reversal();
    Ok(if &rev == p {
        ReciprocalType::SelfReciprocal
    } else if rev == -p {
        ReciprocalType::AntiReciprocal
    } else {
        ReciprocalType::None
    })
}

/// For self-reciprocal `p` of degree `2d`, the degree-`d` polynomial `q`
/// with `p(t) = t^d q(t + 1/t)`. The identity is checked exactly before
/// returning.
pub fn trace_transform(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() || p.constant_term().is_zero() {
        return Err(Error::Precondition(
            "trace transform needs a nonzero constant term".into(),
        ));
    }
    if !p.deg().is_multiple_of(2) {
        return Err(Error::Precondition(
            "trace transform needs even degree".into(),
        ));
    }
    if reciprocal_type(p)? != ReciprocalType::SelfReciprocal {
        return Err(Error::Precondition(
            "trace transform needs a self-reciprocal polynomial".into(),
        ));
    }
    let d = p.deg() / 2;
    // w_k(s) expresses t^k + t^-k.
    let s = IntPoly::monomial(BigInt::from(1), 1);
    let mut w_prev = IntPoly::constant(BigInt::from(2));
    let mut w_cur = s.clone();
    let mut q = IntPoly::constant(p.coeff(d));
    for k in 1..=d {
        if k > 1 {
            let next = &(&s * &w_cur) - &w_prev;
            w_prev = std::mem::replace(&mut w_cur, next);
        }
        let c = p.coeff(d + k);
        if !c.is_zero() {
            q = &q + &w_cur.scale(&c);
        }
    }
    if untransform(&q, d) != *p {
        return Err(Error::Verification(
            "trace transform identity failed".into(),
        ));
    }
    Ok(q)
}

/// `t^d q(t + 1/t)` expanded as a polynomial in `t`; `deg q <= d`.
pub fn untransform(q: &IntPoly, d: usize) -> IntPoly {
    let t2p1 = IntPoly::from_i64s(&[1, 0, 1]);
    let mut acc = IntPoly::zero();
    let mut power = IntPoly::one();
    for (j, c) in q.coeffs().iter().enumerate() {
        if j > 0 {
            power = &power * &t2p1;
        }
        if !c.is_zero() {
            acc = &acc + &power.shift_up(d - j).scale(c);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(
            reciprocal_type(&p("t^4 - t^3 - t^2 - t + 1")).unwrap(),
            ReciprocalType::SelfReciprocal
        );
        assert_eq!(reciprocal_type(&p("t^2 - t - 1")).unwrap(), ReciprocalType::None);
        assert_eq!(reciprocal_type(&p("t^2 - 1")).unwrap(), ReciprocalType::AntiReciprocal);
        assert_eq!(reciprocal_type(&p("t - 1")).unwrap(), ReciprocalType::AntiReciprocal);
        assert_eq!(reciprocal_type(&p("t + 1")).unwrap(), ReciprocalType::SelfReciprocal);
        assert!(reciprocal_type(&p("t^2 + t")).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace_transform(&p("t^4 - t^3 - t^2 - t + 1")).unwrap(), p("t^2 - t - 3"));
        assert_eq!(trace_transform(&p("t^2 - 3t + 1")).unwrap(), p("t - 3"));
        assert_eq!(trace_transform(&p("t^2 + 1")).unwrap(), p("t"));
        let lehmer = p("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1");
        let q = trace_transform(&lehmer).unwrap();
        assert_eq!(q.deg(), 5);
        assert_eq!(untransform(&q, 5), lehmer);
    }

    #[test]
    fn trace_preconditions() {
        assert!(trace_transform(&p("t^3 + 1")).is_err());
        assert!(trace_transform(&p("t^2 - t - 1")).is_err());
        assert!(trace_transform(&p("t^3 + t")).is_err());
    }
}
