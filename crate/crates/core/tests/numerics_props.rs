use fibercone::rootbox::{
    complex_enclosures, count_unimodular, mahler_measure, summarize, MeasureInterval, Precision,
};
use fibercone::unipoly::{squarefree_part, sturm_count, IntPoly, RootRange};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Plain f64 Durand-Kerner; used only as an approximate oracle.
fn dk_roots(p: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.1, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut den = Complex64::new(lead, 0.0);
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
        }
    }
    z
}

fn oracle_mahler(p: &IntPoly) -> f64 {
    let lead = p.leading_coeff().unwrap().to_f64().unwrap().abs();
    dk_roots(p).iter().map(|z| z.norm().max(1.0)).product::<f64>() * lead
}

fn poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 2..=max_deg + 1).prop_filter_map("degree >= 1, p(0) != 0", |mut c| {
        if c[0] == 0 {
            c[0] = 1;
        }
        let p = IntPoly::from_i64s(&c);
        (p.deg() >= 1).then_some(p)
    })
}

fn close(m: &MeasureInterval, x: f64, rel: f64) -> bool {
    m.lo_f64() <= x * (1.0 + rel) && x * (1.0 - rel) <= m.hi_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn enclosures_are_consistent(p in poly(12)) {
        let q = squarefree_part(&p);
        let prec = Precision::default();
        let enc = complex_enclosures(&q, &prec).unwrap();
        prop_assert_eq!(enc.len(), q.deg());
        let reals = enc.iter().filter(|e| e.is_real()).count();
        prop_assert_eq!(reals, sturm_count(&q, &RootRange::WholeLine));
        // closed under conjugation
        for e in enc.iter().filter(|e| !e.is_real()) {
            let neg_lo = -e.im.hi.clone();
            let neg_hi = -e.im.lo.clone();
            prop_assert!(enc.iter().any(|f| f.re == e.re && f.im.lo == neg_lo && f.im.hi == neg_hi));
        }
        // every oracle root sits in some box (boxes are tiny, allow slack)
        for z in dk_roots(&q) {
            let hit = enc.iter().any(|e| {
                let mid_re = e.re.to_f64_mid();
                let mid_im = e.im.to_f64_mid();
                (z.re - mid_re).abs() < 1e-6 && (z.im - mid_im).abs() < 1e-6
            });
            prop_assert!(hit, "oracle root {} not enclosed", z);
        }
        let s = summarize(&q, &prec, false).unwrap();
        prop_assert_eq!(s.unimodular_count, count_unimodular(&q).unwrap());
        prop_assert!(close(&s.mahler, oracle_mahler(&q), 1e-6));
    }

    #[test]
    fn mahler_is_multiplicative(f in poly(8), g in poly(8)) {
        let prec = Precision::default();
        let mf = mahler_measure(&f, &prec).unwrap();
        let mg = mahler_measure(&g, &prec).unwrap();
        let mfg = mahler_measure(&(&f * &g), &prec).unwrap();
        prop_assert!(mfg.overlaps(&mf.mul(&mg)));
        prop_assert!(close(&mfg, oracle_mahler(&f) * oracle_mahler(&g), 1e-6));
    }
}

#[test]
fn lehmer_polynomial_measure() {
    let p = IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let m = mahler_measure(&p, &Precision::default()).unwrap();
    let x: BigRational = "117628081825991/100000000000000".parse().unwrap();
    assert!(m.lo <= x.clone() + BigRational::new(1.into(), 100000000000000i64.into()));
    assert!(m.hi >= x);
    assert!(m.within_ratio(33));
}
