//! Whole-cone scans.

use std::collections::HashMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{analyze_polynomial, class_report, ClassReport, LehmerVerdict, SchinzelVerdict, Settings};
use crate::conelattice::{enumerate_primitive, ConeSpec};
use crate::error::{Error, Result};
use crate::groupring::{specialize, CohomClass, MultiLaurentPoly};
use crate::rootbox::Precision;
use crate::unipoly::IntPoly;

pub const SCHEMA_VERSION: u32 = 1;

/// A class whose analysis failed; the scan records it and moves on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFailure {
    pub alpha: CohomClass,
    pub stage: String,
    pub kind: String,
    pub message: String,
}

impl ClassFailure {
    pub fn new(alpha: CohomClass, err: &Error) -> Self {
        let stage = match err {
            Error::Stage { stage, .. } => stage.to_string(),
            _ => "analyze".to_string(),
        };
        ClassFailure {
            alpha,
            stage,
            kind: error_kind(err.root()).to_string(),
            message: err.to_string(),
        }
    }
}

pub(crate) fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::PrecisionCeiling(_) => "precision_ceiling",
        Error::Verification(_) => "verification",
        Error::NoPerronRoot => "no_perron_root",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::NotInCone(_) => "not_in_cone",
        Error::NotPrimitive(_) => "not_primitive",
        _ => "other",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum ClassEntry {
    Ok(ClassReport),
    Failed(ClassFailure),
}

impl ClassEntry {
    pub fn alpha(&self) -> &CohomClass {
        match self {
            ClassEntry::Ok(r) => &r.alpha,
            ClassEntry::Failed(f) => &f.alpha,
        }
    }

    pub fn report(&self) -> Option<&ClassReport> {
        match self {
            ClassEntry::Ok(r) => Some(r),
            ClassEntry::Failed(_) => None,
        }
    }
}

/// The inputs a scan was run with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEcho {
    pub name: Option<String>,
    pub polynomial: MultiLaurentPoly,
    pub cone: ConeSpec,
    pub height_index: usize,
    pub bound: i64,
    pub precision: Precision,
}

/// Largest certified stretch factor among the classes of one height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightMax {
    pub height: i64,
    pub alpha: CohomClass,
    #[serde(with = "crate::serde_rational")]
    pub lambda_hi: BigRational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub totally_real: usize,
    pub not_totally_real: usize,
    pub errors: usize,
    pub lehmer_below: usize,
    pub lehmer_inconclusive: usize,
    pub schinzel_fails: usize,
    pub schinzel_inconclusive: usize,
    pub max_real_root_count: usize,
    pub max_lambda_by_height: Vec<HeightMax>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: u32,
    pub generator: String,
    pub config: ScanEcho,
    pub entries: Vec<ClassEntry>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn reports(&self) -> impl Iterator<Item = &ClassReport> {
        self.entries.iter().filter_map(ClassEntry::report)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn summarize_entries(entries: &[ClassEntry], height_index: usize) -> ScanSummary {
    let mut s = ScanSummary {
        total: entries.len(),
        ..ScanSummary::default()
    };
    for e in entries {
        let Some(r) = e.report() else {
            s.errors += 1;
            continue;
        };
        let p = &r.poly;
        if p.totally_real {
            s.totally_real += 1;
        } else {
            s.not_totally_real += 1;
        }
        match p.lehmer {
            LehmerVerdict::Below => s.lehmer_below += 1,
            LehmerVerdict::Inconclusive => s.lehmer_inconclusive += 1,
            _ => {}
        }
        match p.schinzel {
            SchinzelVerdict::Fails => s.schinzel_fails += 1,
            SchinzelVerdict::Inconclusive => s.schinzel_inconclusive += 1,
            _ => {}
        }
        s.max_real_root_count = s.max_real_root_count.max(p.real_root_count);
        let h = r.alpha.coords()[height_index];
        let hi = &p.lambda.re.hi;
        match s.max_lambda_by_height.iter_mut().find(|m| m.height == h) {
            Some(m) if &m.lambda_hi < hi => {
                m.alpha = r.alpha.clone();
                m.lambda_hi = hi.clone();
            }
            Some(_) => {}
            None => s.max_lambda_by_height.push(HeightMax {
                height: h,
                alpha: r.alpha.clone(),
                lambda_hi: hi.clone(),
            }),
        }
    }
    s.max_lambda_by_height.sort_by_key(|m| m.height);
    s
}

/// Runs `f` on a pool of `workers` threads (0 = available parallelism).
pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Analyzes every primitive class of the cone with
/// `0 < alpha[height_index] < bound`. Classes with equal specializations
/// share one polynomial analysis. Per-class failures are recorded inline.
pub fn scan(
    theta: &MultiLaurentPoly,
    cone: &ConeSpec,
    height_index: usize,
    bound: i64,
    settings: &Settings,
) -> Result<ScanReport> {
    if theta.nvars() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            got: theta.nvars(),
        });
    }
    let classes = enumerate_primitive(cone, height_index, bound)?;
    let specs: Vec<Result<IntPoly>> = classes
        .iter()
        .map(|a| specialize(theta, a).map_err(Error::at("specialize")))
        .collect();

    let mut index: HashMap<&IntPoly, usize> = HashMap::new();
    let mut unique: Vec<&IntPoly> = Vec::new();
    for p in specs.iter().flatten() {
        index.entry(p).or_insert_with(|| {
            unique.push(p);
            unique.len() - 1
        });
    }
    let n = theta.term_count();
    let analyzed: Vec<_> = with_pool(settings.workers, || {
        unique
            .par_iter()
            .map(|p| analyze_polynomial(p, n, &settings.precision))
            .collect()
    });

    let entries: Vec<ClassEntry> = classes
        .into_iter()
        .zip(&specs)
        .map(|(alpha, spec)| {
            let poly = spec
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|p| analyzed[index[p]].clone())
                .and_then(|poly| class_report(cone, &alpha, poly));
            match poly {
                Ok(r) => ClassEntry::Ok(r),
                Err(e) => ClassEntry::Failed(ClassFailure::new(alpha, &e)),
            }
        })
        .collect();

    Ok(ScanReport {
        schema_version: SCHEMA_VERSION,
        generator: concat!("fibercone ", env!("CARGO_PKG_VERSION")).to_string(),
        summary: summarize_entries(&entries, height_index),
        config: ScanEcho {
            name: None,
            polynomial: theta.clone(),
            cone: cone.clone(),
            height_index,
            bound,
            precision: settings.precision,
        },
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn small_scan() {
        let b = builtins::hironaka1();
        let r = scan(&b.theta, &b.cone, b.height_index, 4, &Settings::default()).unwrap();
        assert_eq!(r.len(), 7);
        assert_eq!(r.summary.errors, 0);
        assert_eq!(r.summary.total, 7);
        let first = r.entries[0].alpha().coords().to_vec();
        assert_eq!(first, vec![-2, 3]);
        assert!(r.reports().all(|c| c.poly.real_root_count <= 8));
    }

    #[test]
    fn empty_scan() {
        let b = builtins::hironaka1();
        let r = scan(&b.theta, &b.cone, b.height_index, 1, &Settings::default()).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.summary, ScanSummary::default());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let b = builtins::hironaka2();
        let s1 = Settings { workers: 1, ..Settings::default() };
        let s4 = Settings { workers: 4, ..Settings::default() };
        let r1 = scan(&b.theta, &b.cone, b.height_index, 9, &s1).unwrap();
        let r4 = scan(&b.theta, &b.cone, b.height_index, 9, &s4).unwrap();
        assert_eq!(r1, r4);
    }
}
