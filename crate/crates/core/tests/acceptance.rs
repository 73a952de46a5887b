//! Acceptance checks. Each criterion prints one PASS/FAIL line; the binary
//! exits non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fibercone::builtins;
use fibercone::factorint::factor;
use fibercone::groupring::{specialize, CohomClass};
use fibercone::pipeline::{ray_family, RayFamily, ScanReport, Settings};
use fibercone::reportio::from_json;
use fibercone::rootbox::{count_unimodular, mahler_measure, summarize, MeasureInterval, Precision};
use fibercone::unipoly::{cyclotomic_poly, reciprocal_type, sturm_count, IntPoly, ReciprocalType, RootRange};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn p(s: &str) -> IntPoly {
    s.parse().expect("literal polynomial")
}

fn class(a: i64, b: i64) -> CohomClass {
    CohomClass::new(vec![a, b])
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(s: &str) -> BigRational {
    s.parse().expect("literal rational")
}

/// Distinct irreducible factors (with multiplicity) of a specialization.
fn factors_of(theta: &fibercone::groupring::MultiLaurentPoly, a: i64, b: i64) -> Result<(IntPoly, Vec<IntPoly>), String> {
    let spec = specialize(theta, &class(a, b)).map_err(|e| e.to_string())?;
    let f = factor(&spec).map_err(|e| e.to_string())?;
    ensure(f.expand() == spec, || format!("({a},{b}) factorization does not multiply back"))?;
    ensure(f.monomial_shift == 0 && f.content.is_one() && f.unit == 1, || {
        format!("({a},{b}) has unexpected content or monomial part")
    })?;
    let mut out = Vec::new();
    for e in &f.factors {
        for _ in 0..e.multiplicity {
            out.push(e.poly.clone());
        }
    }
    Ok((spec, out))
}

fn same_multiset(mut a: Vec<IntPoly>, mut b: Vec<IntPoly>) -> bool {
    let key = |p: &IntPoly| (p.deg(), p.coeffs().to_vec());
    a.sort_by_key(key);
    b.sort_by_key(key);
    a == b
}

fn criterion_1() -> Check {
    let t0 = Instant::now();
    let h1 = builtins::hironaka1().theta;
    let h2 = builtins::hironaka2().theta;

    let (_, fs) = factors_of(&h1, 9, 14)?;
    ensure(fs.len() == 3, || format!("(9,14): {} factors", fs.len()))?;
    let deg22: Vec<&IntPoly> = fs.iter().filter(|f| f.deg() == 22).collect();
    ensure(deg22.len() == 1, || "(9,14): no degree-22 factor".into())?;
    let want = vec![p("t^2 - t + 1"), p("t^4 - t^2 + 1"), deg22[0].clone()];
    ensure(same_multiset(fs.clone(), want), || "(9,14): cyclotomic factors differ".into())?;
    let again = factor(deg22[0]).map_err(|e| e.to_string())?;
    ensure(again.factors.len() == 1 && again.factors[0].multiplicity == 1, || {
        "(9,14): degree-22 factor is reducible".into()
    })?;

    let (spec, fs) = factors_of(&h1, 5, 14)?;
    ensure(fs == vec![spec], || "(5,14): specialization is not irreducible".into())?;

    let (spec, fs) = factors_of(&h2, 6, 17)?;
    let printed = p("t^34 - t^29 - 2t^23 - t^17 - 2t^11 - t^5 + 1");
    ensure(spec == printed, || "(6,17): specialization differs from the printed one".into())?;
    ensure(fs == vec![printed], || "(6,17): not irreducible".into())?;

    let (_, fs) = factors_of(&h2, 7, 17)?;
    let want = vec![
        p("t^4 + t^3 + t^2 + t + 1"),
        p("t^30 - t^29 - t^27 + t^26 + t^25 - t^24 - t^22 + t^21 - t^20 + t^19 - t^17 + t^16 \
           - t^15 + t^14 - t^13 + t^11 - t^10 + t^9 - t^8 - t^6 + t^5 + t^4 - t^3 - t + 1"),
    ];
    ensure(same_multiset(fs, want), || "(7,17): factors differ from the printed ones".into())?;

    let (_, fs) = factors_of(&h2, 7, 18)?;
    let want = vec![
        p("t^2 - t + 1"),
        p("t^4 + t^3 + t^2 + t + 1"),
        p("t^12 - t^9 - t^8 + t^7 + t^6 + t^5 - t^4 - t^3 + 1"),
        p("t^18 - t^16 - t^9 - t^2 + 1"),
    ];
    ensure(same_multiset(fs, want), || "(7,18): factors differ from the printed ones".into())?;
    Ok(format!("five golden factorizations match exactly ({:.2?})", t0.elapsed()))
}

fn run_scan(dir: &Path, tag: &str) -> Result<(Duration, [Vec<u8>; 3]), String> {
    let path = |ext: &str| dir.join(format!("{tag}.{ext}"));
    let t0 = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fibercone"))
        .args(["scan", "--builtin", "hironaka1", "--bound", "50"])
        .arg("--csv")
        .arg(path("csv"))
        .arg("--json")
        .arg(path("json"))
        .arg("--svg")
        .arg(path("svg"))
        .output()
        .map_err(|e| e.to_string())?;
    let took = t0.elapsed();
    ensure(out.status.success(), || {
        format!("scan exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    let read = |ext: &str| std::fs::read(path(ext)).map_err(|e| e.to_string());
    Ok((took, [read("csv")?, read("json")?, read("svg")?]))
}

fn lattice_count(bound: i64) -> usize {
    (1..bound)
        .map(|b: i64| (-b + 1..b).filter(|a| a.gcd(&b) == 1).count())
        .sum()
}

fn criterion_2(dir: &Path) -> Result<(String, ScanReport), String> {
    let (t1, first) = run_scan(dir, "run1")?;
    let (t2, second) = run_scan(dir, "run2")?;
    let limit = Duration::from_secs(600);
    ensure(t1 <= limit && t2 <= limit, || format!("scan took {t1:.1?} / {t2:.1?}"))?;
    for (k, name) in ["CSV", "JSON", "SVG"].iter().enumerate() {
        ensure(first[k] == second[k], || format!("{name} output differs between runs"))?;
    }
    let report = from_json(&first[1]).map_err(|e| e.to_string())?;
    let want = lattice_count(50);
    let csv_rows = String::from_utf8_lossy(&first[0]).lines().count() - 1;
    let svg = String::from_utf8_lossy(&first[2]).into_owned();
    let doc = roxmltree::Document::parse(&svg).map_err(|e| e.to_string())?;
    let markers = doc
        .descendants()
        .find(|n| n.attribute("id") == Some("classes"))
        .map(|g| g.children().filter(|n| n.is_element()).count())
        .unwrap_or(0);
    ensure(report.len() == want && csv_rows == want && markers == want, || {
        format!("entries: json {}, csv {csv_rows}, svg {markers}, lattice {want}", report.len())
    })?;
    Ok((
        format!("{want} classes in {t1:.1?} and {t2:.1?}, CSV/JSON/SVG byte-identical across runs"),
        report,
    ))
}

fn criterion_3() -> Check {
    let b = builtins::hironaka1();
    let fam = RayFamily::Edge {
        heights: vec![5, 10, 20, 40],
    };
    let t = ray_family(&b.theta, &b.cone, b.height_index, &fam, &Settings::default()).map_err(|e| e.to_string())?;
    let want = [class(4, 5), class(9, 10), class(19, 20), class(39, 40)];
    let got: Vec<_> = t.rows.iter().map(|r| r.alpha.clone()).collect();
    ensure(got.iter().zip(&want).all(|(g, w)| g.as_ref() == Some(w)), || format!("family classes {got:?}"))?;
    let lams: Vec<&MeasureInterval> = t.rows.iter().filter_map(|r| r.lambda()).collect();
    ensure(lams.len() == 4, || "some family member failed".into())?;
    ensure(t.upper_bounds_decrease(), || "upper bounds do not strictly decrease".into())?;
    let last = lams[3];
    ensure(last.hi < rat("11/10"), || format!("lambda(39,40) upper bound {}", last.hi_f64()))?;
    let tol = rat("1/10000000000");
    ensure(lams.iter().all(|l| &l.hi - &l.lo < tol), || "interval wider than 1e-10".into())?;
    Ok(format!(
        "lambda upper bounds {:.6} > {:.6} > {:.6} > {:.6}, lambda(39,40) < 1.1",
        lams[0].hi_f64(),
        lams[1].hi_f64(),
        lams[2].hi_f64(),
        lams[3].hi_f64()
    ))
}

/// Verdict recomputed from fresh enclosures: the field is totally real
/// iff every non-real conjugate is unimodular. Boxes meeting the circle
/// must be accounted for by the exact unimodular count (an irreducible
/// minpoly of degree >= 2 has no roots at +-1).
fn enclosure_oracle(minpoly: &IntPoly) -> Result<bool, String> {
    let s = summarize(minpoly, &Precision::default(), false).map_err(|e| e.to_string())?;
    let unimodular = count_unimodular(minpoly).map_err(|e| e.to_string())?;
    let one = BigRational::one();
    let nonreal: Vec<_> = s.enclosures.iter().filter(|e| !e.is_real()).collect();
    let meeting = nonreal
        .iter()
        .filter(|e| {
            let (lo, hi) = e.modulus_sq_bounds();
            lo <= one && one <= hi
        })
        .count();
    if meeting != unimodular {
        return Err(format!("{meeting} boxes meet the circle, {unimodular} unimodular roots"));
    }
    Ok(meeting == nonreal.len())
}

fn criterion_4(report: &ScanReport) -> Check {
    let mut checked = 0;
    let mut cache: std::collections::HashMap<IntPoly, bool> = Default::default();
    for e in &report.entries {
        let r = e.report().ok_or_else(|| format!("class {} failed", e.alpha()))?;
        let q = &r.poly;
        let n = 2 * q.term_count - 2;
        ensure(q.real_root_count <= n, || format!("{}: {} real roots", r.alpha, q.real_root_count))?;
        let lam_pow = num_traits::pow(q.lambda.re.hi.clone(), n);
        ensure(q.split_a.hi <= lam_pow, || format!("{}: A exceeds lambda^{n}", r.alpha))?;
        ensure(q.minpoly.divides(&q.specialization), || format!("{}: minpoly does not divide", r.alpha))?;
        ensure(reciprocal_type(&q.specialization) == Ok(ReciprocalType::SelfReciprocal), || {
            format!("{}: specialization not self-reciprocal", r.alpha)
        })?;
        let oracle = match cache.get(&q.minpoly) {
            Some(&v) => v,
            None => {
                let v = enclosure_oracle(&q.minpoly).map_err(|m| format!("{}: {m}", r.alpha))?;
                cache.insert(q.minpoly.clone(), v);
                v
            }
        };
        ensure(oracle == q.totally_real, || format!("{}: exact and enclosure verdicts differ", r.alpha))?;
        checked += 1;
    }
    Ok(format!(
        "{checked} classes: real roots <= 8, A <= lambda^8, minpoly divides, verdicts agree ({} distinct minpolys)",
        cache.len()
    ))
}

fn criterion_5() -> Check {
    let prec = Precision::default();
    let lehmer = p("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1");
    let m = mahler_measure(&lehmer, &prec).map_err(|e| e.to_string())?;
    let x = rat("117628081825991/100000000000000");
    let ulp = rat("1/100000000000000");
    ensure(m.lo <= &x + &ulp && x <= m.hi, || format!("M(Lehmer) = [{}, {}]", m.lo_f64(), m.hi_f64()))?;
    let rel = (&m.hi - &m.lo) / &m.lo;
    ensure(rel <= rat("1/10000000000"), || "relative width above 1e-10".into())?;
    for n in 1..=60u64 {
        let c = cyclotomic_poly(n);
        let mc = mahler_measure(&c, &prec).map_err(|e| e.to_string())?;
        ensure(mc.lo.is_one() && mc.hi.is_one(), || format!("M(Phi_{n}) is not exactly 1"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(1..=8);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-9..=9)).collect();
        if c[d] == 0 {
            c[d] = 1;
        }
        if c[0] == 0 {
            c[0] = -1;
        }
        IntPoly::from_i64s(&c)
    };
    for _ in 0..200 {
        let f = random(&mut rng);
        let g = random(&mut rng);
        let mf = mahler_measure(&f, &prec).map_err(|e| e.to_string())?;
        let mg = mahler_measure(&g, &prec).map_err(|e| e.to_string())?;
        let mfg = mahler_measure(&(&f * &g), &prec).map_err(|e| e.to_string())?;
        ensure(mfg.overlaps(&mf.mul(&mg)), || format!("M({f}) M({g}) != M(product)"))?;
    }
    Ok(format!(
        "M(Lehmer) in [{}, {}], relative width {:.1e}; Phi_1..Phi_60 exact; 200 products multiplicative",
        fibercone::reportio::decimal(&m.lo, 16, false),
        fibercone::reportio::decimal(&m.hi, 16, true),
        num_traits::ToPrimitive::to_f64(&rel).unwrap_or(f64::NAN)
    ))
}

/// Rational upper bound for `phi^d = (L_d + F_d sqrt 5) / 2`.
fn phi_pow_upper(d: usize) -> BigRational {
    let (mut l, mut f) = (BigInt::from(2), BigInt::zero());
    for _ in 0..d {
        let nl = (&l + 5 * &f) / 2;
        let nf = (&l + &f) / 2;
        l = nl;
        f = nf;
    }
    let scale = num_traits::pow(BigInt::from(10), 60);
    let s = (BigInt::from(5) * &scale * &scale).sqrt() + 1;
    let sqrt5_hi = BigRational::new(s, scale);
    (BigRational::from_integer(l) + BigRational::from_integer(f) * sqrt5_hi) / BigRational::from_integer(2.into())
}

fn criterion_6(report: &ScanReport) -> Check {
    let mut applicable = 0;
    for r in report.reports() {
        let q = &r.poly.minpoly;
        let d = q.deg();
        if sturm_count(q, &RootRange::WholeLine) != d {
            continue;
        }
        applicable += 1;
        let m = &r.poly.mahler;
        ensure(&m.lo * &m.lo >= phi_pow_upper(d), || format!("{}: M < phi^(deg/2)", r.alpha))?;
    }
    Ok(format!("{applicable} classes with totally real minpoly, zero violations"))
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let primes = [2i64, 3, 5, 7, 11, 13];
    let mut nontrivial = 0;
    for i in 0..1000 {
        let poly = if i % 2 == 0 {
            let d = rng.gen_range(0..=40);
            let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-50..=50)).collect();
            IntPoly::from_i64s(&c)
        } else {
            let k = rng.gen_range(2..=4);
            (0..k).fold(IntPoly::one(), |acc, _| {
                let d = rng.gen_range(1..=10);
                let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-4..=4)).collect();
                let f = IntPoly::from_i64s(&c);
                if f.is_zero() { acc } else { &acc * &f }
            })
        };
        if poly.is_zero() {
            continue;
        }
        let fac = factor(&poly).map_err(|e| e.to_string())?;
        ensure(fac.expand() == poly, || format!("round trip fails for {poly}"))?;
        if fac.factors.len() + fac.monomial_shift > 1 {
            nontrivial += 1;
        }
        for e in &fac.factors {
            ensure(e.poly.content().is_one() && e.poly.leading_coeff().is_some_and(|c| c.is_positive()), || {
                format!("factor {} of {poly} is not normalized", e.poly)
            })?;
        }
        for &q in &primes {
            let qb = BigInt::from(q);
            if (&fac.content % &qb).is_zero() {
                continue;
            }
            let roots = |f: &IntPoly| -> Vec<i64> {
                (0..q).filter(|&x| f.eval(&BigInt::from(x)).mod_floor(&qb).is_zero()).collect()
            };
            let mut union: Vec<i64> = fac.factors.iter().flat_map(|e| roots(&e.poly)).collect();
            if fac.monomial_shift > 0 {
                union.push(0);
            }
            union.sort();
            union.dedup();
            ensure(union == roots(&poly), || format!("roots mod {q} disagree for {poly}"))?;
            let reduced: Vec<BigInt> = poly.coeffs().iter().map(|c| c.mod_floor(&qb)).collect();
            let expanded: Vec<BigInt> = fac.expand().coeffs().iter().map(|c| c.mod_floor(&qb)).collect();
            ensure(reduced == expanded, || format!("product mod {q} differs for {poly}"))?;
        }
    }
    Ok(format!("1000 polynomials (degree <= 40, {nontrivial} reducible): exact round trip, roots mod 2..13 consistent"))
}

fn criterion_8(report: &ScanReport) -> Check {
    let quarter = rat("1/4");
    let mut lo_min: Option<BigRational> = None;
    let mut hi_max: Option<BigRational> = None;
    let mut count = 0;
    for r in report.reports() {
        if r.margin < quarter {
            continue;
        }
        count += 1;
        let b = BigRational::from_integer(r.alpha.coords()[1].into());
        let lo = &b * &r.poly.log_lambda.lo;
        let hi = &b * &r.poly.log_lambda.hi;
        if lo_min.as_ref().is_none_or(|m| &lo < m) {
            lo_min = Some(lo);
        }
        if hi_max.as_ref().is_none_or(|m| &hi > m) {
            hi_max = Some(hi);
        }
    }
    let (lo, hi) = lo_min.zip(hi_max).ok_or("no classes with margin >= 1/4")?;
    let ratio = &hi / &lo;
    let r = num_traits::ToPrimitive::to_f64(&ratio).unwrap_or(f64::NAN);
    ensure(ratio <= BigRational::from_integer(10.into()), || format!("band ratio {r:.3}"))?;
    Ok(format!("{count} classes with margin >= 1/4: max/min of b*log(lambda) = {r:.3} <= 10"))
}

fn report(n: u32, c: &Check, failed: &mut bool) {
    match c {
        Ok(msg) => println!("PASS criterion {n}: {msg}"),
        Err(msg) => {
            *failed = true;
            println!("FAIL criterion {n}: {msg}");
        }
    }
}

fn main() {
    let mut failed = false;
    report(1, &criterion_1(), &mut failed);
    let dir = tempfile::tempdir().expect("temporary directory");
    let scan = match criterion_2(dir.path()) {
        Ok((msg, rep)) => {
            report(2, &Ok(msg), &mut failed);
            Some(rep)
        }
        Err(e) => {
            report(2, &Err(e), &mut failed);
            None
        }
    };
    report(3, &criterion_3(), &mut failed);
    let need_scan: Check = Err("full scan unavailable".into());
    match &scan {
        Some(r) => report(4, &criterion_4(r), &mut failed),
        None => report(4, &need_scan, &mut failed),
    }
    report(5, &criterion_5(), &mut failed);
    match &scan {
        Some(r) => report(6, &criterion_6(r), &mut failed),
        None => report(6, &need_scan, &mut failed),
    }
    report(7, &criterion_7(), &mut failed);
    match &scan {
        Some(r) => report(8, &criterion_8(r), &mut failed),
        None => report(8, &need_scan, &mut failed),
    }
    if failed {
        std::process::exit(1);
    }
}
