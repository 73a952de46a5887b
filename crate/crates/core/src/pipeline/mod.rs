//! Per-class analysis (stretch factor, minimal polynomial, trace field,
//! Mahler diagnostics), cone scans and ray studies.

mod diagnostics;
mod ray;
mod scan;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::conelattice::{contains, is_primitive, subcone_margin, thurston_norm, ConeSpec};
use crate::error::{Error, Result};
use crate::factorint::{factor, Factorization};
use crate::groupring::{specialize, CohomClass, MultiLaurentPoly};
use crate::rootbox::{
    log_interval, refine_real_root, summarize, MeasureInterval, Precision, RootEnclosure, RootSummary,
};
use crate::unipoly::{
    descartes_bound, is_cyclotomic, reciprocal_type, IntPoly, ReciprocalType,
};

pub use diagnostics::{
    lehmer_flag, lehmer_polynomial, lehmer_threshold, lehmer_verdict, schinzel_check,
    totally_real_trace_field, LehmerVerdict, SchinzelVerdict,
};
pub use ray::{ray_family, ray_sequence, RayFamily, RayOutcome, RayRow, RayTable};
pub use scan::{scan, ClassEntry, ClassFailure, HeightMax, ScanEcho, ScanReport, ScanSummary, SCHEMA_VERSION};

/// Bits of the certified `log lambda` interval.
const LOG_BITS: u32 = 64;
/// Width `2^-LAMBDA_BITS` of the reported `lambda` interval.
const LAMBDA_BITS: u32 = 64;

/// Knobs shared by every analysis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub precision: Precision,
    /// Worker threads for scans; 0 means available parallelism.
    pub workers: usize,
}

/// Which stand-in for `|chi|` a report uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormSource {
    /// Configured linear norm functional.
    Thurston,
    /// Degree of the specialization.
    DegreeProxy,
}

/// One irreducible factor of the specialization with its diagnostics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorInfo {
    pub poly: IntPoly,
    pub multiplicity: u32,
    /// `n` when the factor is the `n`-th cyclotomic polynomial.
    pub cyclotomic_order: Option<u64>,
    pub contains_lambda: bool,
    pub lehmer: LehmerVerdict,
    pub mahler: MeasureInterval,
}

/// Results that depend only on the specialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    pub specialization: IntPoly,
    pub term_count: usize,
    pub factorization: Factorization,
    pub factors: Vec<FactorInfo>,
    pub minpoly: IntPoly,
    pub lambda: RootEnclosure,
    pub log_lambda: MeasureInterval,
    pub degree_proxy_norm: u64,
    pub real_root_count: usize,
    pub descartes: usize,
    pub self_reciprocal: bool,
    pub totally_real: bool,
    pub mahler: MeasureInterval,
    pub split_a: MeasureInterval,
    pub split_b: MeasureInterval,
    pub unimodular_count: usize,
    pub nonreal_outside_count: usize,
    pub lehmer_flag: bool,
    pub lehmer: LehmerVerdict,
    pub schinzel: SchinzelVerdict,
    pub schinzel_ok: Option<bool>,
}

/// Everything computed for one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub alpha: CohomClass,
    pub thurston_norm: Option<i64>,
    pub norm_source: NormSource,
    #[serde(with = "crate::serde_rational")]
    pub margin: BigRational,
    #[serde(flatten)]
    pub poly: PolyReport,
}

impl ClassReport {
    /// The norm used for asymptotics: configured norm or degree proxy.
    pub fn norm_used(&self) -> i64 {
        self.thurston_norm
            .unwrap_or(self.poly.degree_proxy_norm as i64)
    }

    /// Short machine-readable notes for tables.
    pub fn flags(&self) -> Vec<String> {
        let p = &self.poly;
        let mut out = Vec::new();
        if !p.totally_real {
            out.push("not_totally_real".into());
        }
        if p.factors.iter().filter(|f| f.cyclotomic_order.is_none()).count() > 1 {
            out.push("extra_noncyclotomic_factor".into());
        }
        match p.lehmer {
            LehmerVerdict::Below => out.push("lehmer_counterexample".into()),
            LehmerVerdict::Inconclusive => out.push("lehmer_inconclusive".into()),
            _ => {}
        }
        match p.schinzel {
            SchinzelVerdict::Fails => out.push("schinzel_fails".into()),
            SchinzelVerdict::Inconclusive => out.push("schinzel_inconclusive".into()),
            _ => {}
        }
        if self.norm_source == NormSource::DegreeProxy {
            out.push("degree_proxy_norm".into());
        }
        out
    }
}

fn stage(name: &'static str) -> impl FnOnce(Error) -> Error {
    Error::at(name)
}

fn disjoint_above(a: &RootEnclosure, b: &RootEnclosure) -> Option<bool> {
    if a.re.lo > b.re.hi {
        Some(true)
    } else if b.re.lo > a.re.hi {
        Some(false)
    } else {
        None
    }
}

struct Located {
    index: usize,
    summaries: Vec<Option<RootSummary>>,
    lambda: RootEnclosure,
}

/// Certifies every non-cyclotomic factor and finds the one carrying the
/// largest real root; checks that root dominates all roots of all factors.
fn locate_lambda(fac: &Factorization, precision: &Precision) -> Result<Located> {
    let mut summaries = Vec::with_capacity(fac.factors.len());
    for e in &fac.factors {
        if is_cyclotomic(&e.poly).is_some() {
            summaries.push(None);
        } else {
            summaries.push(Some(summarize(&e.poly, precision, true)?));
        }
    }
    let mut best: Option<(usize, RootEnclosure)> = None;
    for (i, s) in summaries.iter().enumerate() {
        let Some(perron) = s.as_ref().and_then(|s| s.perron.clone()) else {
            continue;
        };
        best = match best {
            None => Some((i, perron)),
            Some((j, cur)) => match disjoint_above(&perron, &cur) {
                Some(true) => Some((i, perron)),
                Some(false) => Some((j, cur)),
                None => {
                    return Err(Error::Verification(
                        "largest real roots of two factors could not be separated".into(),
                    ))
                }
            },
        };
    }
    let (index, lambda) = best.ok_or(Error::NoPerronRoot)?;
    let lam_lo_sq = &lambda.re.lo * &lambda.re.lo;
    for (i, s) in summaries.iter().enumerate() {
        let Some(s) = s else { continue };
        if i == index {
            continue;
        }
        if s.enclosures.iter().any(|e| e.modulus_sq_bounds().1 >= lam_lo_sq) {
            return Err(Error::Verification(
                "a root of another factor is not strictly smaller in modulus than lambda".into(),
            ));
        }
    }
    Ok(Located {
        index,
        summaries,
        lambda,
    })
}

/// `lambda` and its minimal polynomial for the class `alpha`.
pub fn stretch_factor(
    theta: &MultiLaurentPoly,
    alpha: &CohomClass,
    precision: &Precision,
) -> Result<(RootEnclosure, IntPoly)> {
    let spec = specialize(theta, alpha).map_err(stage("specialize"))?;
    if spec.is_zero() {
        return Err(Error::ZeroPolynomial).map_err(stage("specialize"));
    }
    let fac = factor(&spec).map_err(stage("factor"))?;
    let loc = locate_lambda(&fac, precision).map_err(stage("stretch_factor"))?;
    Ok((loc.lambda, fac.factors[loc.index].poly.clone()))
}

/// All class-independent results for a nonzero specialization.
pub fn analyze_polynomial(spec: &IntPoly, term_count: usize, precision: &Precision) -> Result<PolyReport> {
    if spec.is_zero() {
        return Err(Error::ZeroPolynomial).map_err(stage("specialize"));
    }
    let fac = factor(spec).map_err(stage("factor"))?;
    let loc = locate_lambda(&fac, precision).map_err(stage("stretch_factor"))?;
    let minpoly = fac.factors[loc.index].poly.clone();
    if !minpoly.divides(spec) {
        return Err(Error::Verification("minimal polynomial does not divide".into()))
            .map_err(stage("stretch_factor"));
    }
    let ms = loc.summaries[loc.index]
        .as_ref()
        .expect("lambda factor is not cyclotomic");

    let totally_real = totally_real_trace_field(&minpoly).map_err(stage("trace_field"))?;
    if totally_real != ms.numeric_totally_real() {
        return Err(Error::Verification(
            "exact and numeric trace-field verdicts disagree".into(),
        ))
        .map_err(stage("trace_field"));
    }

    let mut factors = Vec::with_capacity(fac.factors.len());
    let mut real_root_count = 0;
    let mut lehmer = LehmerVerdict::NotApplicable;
    for (i, (e, s)) in fac.factors.iter().zip(&loc.summaries).enumerate() {
        let order = is_cyclotomic(&e.poly);
        let (mahler, verdict) = match s {
            Some(s) => {
                real_root_count += s.real_count;
                (s.mahler.clone(), lehmer_verdict(&e.poly, &s.mahler))
            }
            None => {
                real_root_count += usize::from(matches!(order, Some(1) | Some(2)));
                (MeasureInterval::one(), LehmerVerdict::NotApplicable)
            }
        };
        lehmer = match (lehmer, verdict) {
            (LehmerVerdict::Below, _) | (_, LehmerVerdict::Below) => LehmerVerdict::Below,
            (LehmerVerdict::Inconclusive, _) | (_, LehmerVerdict::Inconclusive) => {
                LehmerVerdict::Inconclusive
            }
            (LehmerVerdict::NotBelow, _) | (_, LehmerVerdict::NotBelow) => LehmerVerdict::NotBelow,
            _ => LehmerVerdict::NotApplicable,
        };
        factors.push(FactorInfo {
            poly: e.poly.clone(),
            multiplicity: e.multiplicity,
            cyclotomic_order: order,
            contains_lambda: i == loc.index,
            lehmer: verdict,
            mahler,
        });
    }
    real_root_count += usize::from(fac.monomial_shift > 0);

    let mut lambda = loc.lambda;
    lambda.re = refine_real_root(&minpoly, &lambda.re, LAMBDA_BITS);
    let lam = MeasureInterval::new(lambda.re.lo.clone(), lambda.re.hi.clone());
    if lam.lo <= BigRational::one() {
        return Err(Error::NoPerronRoot).map_err(stage("stretch_factor"));
    }
    let log_lambda = log_interval(&lam, LOG_BITS).map_err(stage("log_lambda"))?;
    let schinzel = schinzel_check(&minpoly, &ms.mahler);
    let self_reciprocal = reciprocal_type(&spec.strip_monomial().1).map_err(stage("trace_field"))?
        == ReciprocalType::SelfReciprocal;

    Ok(PolyReport {
        specialization: spec.clone(),
        term_count,
        descartes: descartes_bound(spec),
        degree_proxy_norm: spec.deg() as u64,
        factorization: fac,
        factors,
        lambda,
        log_lambda,
        real_root_count,
        self_reciprocal,
        totally_real,
        mahler: ms.mahler.clone(),
        split_a: ms.split_a.clone(),
        split_b: ms.split_b.clone(),
        unimodular_count: ms.unimodular_count,
        nonreal_outside_count: ms.nonreal_outside,
        lehmer_flag: lehmer == LehmerVerdict::Below,
        lehmer,
        schinzel,
        schinzel_ok: schinzel.as_option(),
        minpoly,
    })
}

/// Checks that `alpha` is a primitive class of the cone.
pub fn check_class(cone: &ConeSpec, alpha: &CohomClass) -> Result<()> {
    if !is_primitive(alpha)? {
        return Err(Error::NotPrimitive(alpha.to_string()));
    }
    if !contains(cone, alpha)? {
        return Err(Error::NotInCone(alpha.to_string()));
    }
    Ok(())
}

/// Attaches the class-dependent fields to a polynomial report.
pub(crate) fn class_report(cone: &ConeSpec, alpha: &CohomClass, poly: PolyReport) -> Result<ClassReport> {
    let tn = thurston_norm(cone, alpha)?;
    Ok(ClassReport {
        alpha: alpha.clone(),
        thurston_norm: tn,
        norm_source: if tn.is_some() {
            NormSource::Thurston
        } else {
            NormSource::DegreeProxy
        },
        margin: subcone_margin(cone, alpha)?,
        poly,
    })
}

/// Full report for one primitive class of the cone.
pub fn analyze_class(
    theta: &MultiLaurentPoly,
    cone: &ConeSpec,
    alpha: &CohomClass,
    settings: &Settings,
) -> Result<ClassReport> {
    check_class(cone, alpha)?;
    let spec = specialize(theta, alpha).map_err(stage("specialize"))?;
    let poly = analyze_polynomial(&spec, theta.term_count(), &settings.precision)?;
    class_report(cone, alpha, poly)
}
