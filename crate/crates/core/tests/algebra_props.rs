use fibercone::builtins;
use fibercone::conelattice::{contains, enumerate_primitive, is_primitive, ConeSpec};
use fibercone::groupring::{specialize, CohomClass, MultiLaurentPoly};
use fibercone::unipoly::{reciprocal_type, IntPoly, ReciprocalType};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn laurent(nvars: usize) -> impl Strategy<Value = MultiLaurentPoly> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(-3i64..=3, nvars)), 1..6).prop_map(
        move |terms| {
            MultiLaurentPoly::from_terms(nvars, terms.into_iter().map(|(c, e)| (BigInt::from(c), e)))
                .unwrap()
        },
    )
}

fn oracle_hironaka1(a: i64, b: i64) -> IntPoly {
    // t^{2b} - t^{b+a} - t^b - t^{b-a} + 1, built term by term.
    let mut c = vec![0i64; (2 * b + 1) as usize];
    c[0] += 1;
    c[(b - a) as usize] -= 1;
    c[b as usize] -= 1;
    c[(b + a) as usize] -= 1;
    c[(2 * b) as usize] += 1;
    IntPoly::from_i64s(&c)
}

fn brute_force(cone: &ConeSpec, height_index: usize, bound: i64, reach: i64) -> Vec<CohomClass> {
    let dim = cone.dim();
    let mut out = Vec::new();
    let mut v = vec![-reach; dim];
    loop {
        let h = v[height_index];
        if h > 0 && h < bound {
            let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
            let inside = cone
                .ineqs()
                .iter()
                .all(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() > 0);
            if g == 1 && inside {
                out.push(CohomClass::new(v.clone()));
            }
        }
        let mut k = dim;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if v[k] < reach {
                v[k] += 1;
                break;
            }
            v[k] = -reach;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn specialization_is_multiplicative(
        f in laurent(2),
        g in laurent(2),
        a in -5i64..=5,
        b in -5i64..=5,
    ) {
        prop_assume!((a, b) != (0, 0));
        let alpha = CohomClass::new(vec![a, b]);
        let fg = f.multiply(&g).unwrap();
        let lhs = specialize(&fg, &alpha).unwrap();
        let rhs = &specialize(&f, &alpha).unwrap() * &specialize(&g, &alpha).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hironaka1_literal_formula(b in 1i64..60, s in 0.0f64..1.0) {
        let a = -b + 1 + ((2 * b - 2) as f64 * s) as i64;
        let theta = builtins::hironaka1().theta;
        let p = specialize(&theta, &CohomClass::new(vec![a, b])).unwrap();
        prop_assert_eq!(&p, &oracle_hironaka1(a, b));
        prop_assert_eq!(reciprocal_type(&p).unwrap(), ReciprocalType::SelfReciprocal);
    }

    #[test]
    fn enumeration_matches_brute_force(
        r1 in (1i64..=3, 1i64..=3),
        r2 in (1i64..=3, 1i64..=3),
        bound in 1i64..=10,
    ) {
        // -p x + q y > 0 and p' x + q' y > 0 bound x on every slice y = h.
        let rows = vec![vec![0, 1], vec![-r1.0, r1.1], vec![r2.0, r2.1]];
        let cone = ConeSpec::new(rows, None, vec![0, 1]).unwrap();
        let got = enumerate_primitive(&cone, 1, bound).unwrap();
        for p in &got {
            prop_assert!(contains(&cone, p).unwrap());
            prop_assert!(is_primitive(p).unwrap());
        }
        prop_assert_eq!(got, brute_force(&cone, 1, bound, 40));
    }
}

#[test]
fn three_dimensional_enumeration() {
    let rows = vec![vec![0, 0, 1], vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]];
    let cone = ConeSpec::new(rows, None, vec![0, 0, 1]).unwrap();
    for bound in 1..=8 {
        assert_eq!(enumerate_primitive(&cone, 2, bound).unwrap(), brute_force(&cone, 2, bound, 10));
    }
}

#[test]
fn scan_count_matches_lattice_count() {
    let b = builtins::hironaka1();
    let got = enumerate_primitive(&b.cone, 1, 50).unwrap().len();
    let mut want = 0;
    for bb in 1i64..50 {
        for a in -bb + 1..bb {
            if a.gcd(&bb) == 1 {
                want += 1;
            }
        }
    }
    assert_eq!(got, want);
}
