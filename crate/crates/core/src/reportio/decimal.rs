use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(k: usize) -> BigInt {
    num_traits::pow(BigInt::from(10), k)
}

/// Decimal text of `x` rounded to `sig` significant digits, toward
/// `+infinity` when `up` and toward `-infinity` otherwise. Plain notation
/// for moderate exponents, otherwise `d.ddde[+-]k`.
pub fn decimal(x: &BigRational, sig: usize, up: bool) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let neg = x.is_negative();
    let a = x.abs();
    // magnitude rounding direction flips for negative numbers
    let round_up = up != neg;
    let (num, den) = (a.numer().clone(), a.denom().clone());
    // e = floor(log10 a)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge = |k: i64| -> bool {
        // a >= 10^k
        if k >= 0 {
            num >= &den * pow10(k as usize)
        } else {
            &num * pow10((-k) as usize) >= den
        }
    };
    while !ge(e) {
        e -= 1;
    }
    while ge(e + 1) {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let (n, d) = if shift >= 0 {
        (&num * pow10(shift as usize), den.clone())
    } else {
        (num.clone(), &den * pow10((-shift) as usize))
    };
    let mut digits = if round_up { n.div_ceil(&d) } else { n.div_floor(&d) };
    let mut exp = e;
    if digits >= pow10(sig) {
        // only a carry 99..9 -> 100..0 gets here, so the division is exact
        digits /= 10;
        exp += 1;
    }
    let s = digits.to_string();
    let body = if (-6..21).contains(&exp) {
        plain(&s, exp)
    } else {
        let (h, t) = s.split_at(1);
        let t = t.trim_end_matches('0');
        if t.is_empty() {
            format!("{h}e{exp}")
        } else {
            format!("{h}.{t}e{exp}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Places the decimal point in digit string `s` whose first digit has
/// weight `10^exp`.
fn plain(s: &str, exp: i64) -> String {
    let len = s.len() as i64;
    let out = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), s)
    } else if exp + 1 >= len {
        format!("{}{}", s, "0".repeat((exp + 1 - len) as usize))
    } else {
        let (a, b) = s.split_at((exp + 1) as usize);
        format!("{a}.{b}")
    };
    if out.contains('.') {
        let t = out.trim_end_matches('0');
        t.trim_end_matches('.').to_string()
    } else {
        out
    }
}

/// `num/den` text of an exact rational.
pub fn fraction(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
