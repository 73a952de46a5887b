//! The two worked examples shipped with the tool: the mapping torus of the
//! braid `s1 s2^-1` and of its square.

use num_bigint::BigInt;

use crate::conelattice::ConeSpec;
use crate::groupring::MultiLaurentPoly;

/// A Teichmüller polynomial together with its fibered cone.
#[derive(Clone, Debug)]
pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    pub theta: MultiLaurentPoly,
    pub cone: ConeSpec,
    pub height_index: usize,
}

pub const NAMES: [&str; 2] = ["hironaka1", "hironaka2"];

fn theta(terms: &[(i64, [i64; 2])]) -> MultiLaurentPoly {
    MultiLaurentPoly::from_terms(2, terms.iter().map(|(c, e)| (BigInt::from(*c), e.to_vec())))
        .expect("builtin literal")
}

/// `u^2 - u(x + 1 + x^-1) + 1` on `b > 0, -b < a < b`.
pub fn hironaka1() -> Builtin {
    Builtin {
        name: "hironaka1",
        description: "mapping torus of the 3-braid s1 s2^-1",
        theta: theta(&[(1, [0, 2]), (-1, [1, 1]), (-1, [0, 1]), (-1, [-1, 1]), (1, [0, 0])]),
        cone: ConeSpec::new(vec![vec![0, 1], vec![-1, 1], vec![1, 1]], None, vec![0, 1])
            .expect("builtin cone"),
        height_index: 1,
    }
}

/// `u^2 - u(x^2 + 2x + 1 + 2x^-1 + x^-2) + 1` on `b > 0, -b/2 < a < b/2`.
pub fn hironaka2() -> Builtin {
    Builtin {
        name: "hironaka2",
        description: "mapping torus of the 3-braid (s1 s2^-1)^2",
        theta: theta(&[
            (1, [0, 2]),
            (-1, [2, 1]),
            (-2, [1, 1]),
            (-1, [0, 1]),
            (-2, [-1, 1]),
            (-1, [-2, 1]),
            (1, [0, 0]),
        ]),
        cone: ConeSpec::new(vec![vec![0, 1], vec![-2, 1], vec![2, 1]], None, vec![0, 1])
            .expect("builtin cone"),
        height_index: 1,
    }
}

pub fn by_name(name: &str) -> Option<Builtin> {
    match name {
        "hironaka1" => Some(hironaka1()),
        "hironaka2" => Some(hironaka2()),
        _ => None,
    }
}
