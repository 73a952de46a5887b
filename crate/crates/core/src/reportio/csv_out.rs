use num_rational::BigRational;

use super::decimal::{decimal, fraction};
use crate::pipeline::{ClassEntry, ClassReport, NormSource, RayOutcome, RayTable, ScanReport};

/// Significant digits of every decimal bound.
pub const DIGITS: usize = 20;

const TAIL: [&str; 18] = [
    "degree",
    "N",
    "lambda_lo",
    "lambda_hi",
    "minpoly",
    "n_factors",
    "n_cyclotomic",
    "totally_real",
    "mahler_lo",
    "mahler_hi",
    "A_hi",
    "B_lo",
    "unimodular_count",
    "real_roots",
    "descartes",
    "margin",
    "status",
    "flags",
];

fn coord_names(dim: usize, height_index: usize) -> Vec<String> {
    (0..dim)
        .map(|i| {
            if i == height_index {
                "b".to_string()
            } else if dim == 2 {
                "a".to_string()
            } else {
                let k = if i < height_index { i + 1 } else { i };
                format!("a{k}")
            }
        })
        .collect()
}

/// Column names for a cone of dimension `dim`.
pub fn csv_header(dim: usize, height_index: usize) -> Vec<String> {
    let mut h = coord_names(dim, height_index);
    h.extend(TAIL.iter().map(|s| s.to_string()));
    h
}

fn lo(x: &BigRational) -> String {
    decimal(x, DIGITS, false)
}

fn hi(x: &BigRational) -> String {
    decimal(x, DIGITS, true)
}

fn report_fields(r: &ClassReport) -> Vec<String> {
    let p = &r.poly;
    let n_factors = p.factorization.factors.len() + usize::from(p.factorization.monomial_shift > 0);
    let n_cyc = p.factors.iter().filter(|f| f.cyclotomic_order.is_some()).count();
    vec![
        p.specialization.deg().to_string(),
        p.term_count.to_string(),
        lo(&p.lambda.re.lo),
        hi(&p.lambda.re.hi),
        p.minpoly.to_string(),
        n_factors.to_string(),
        n_cyc.to_string(),
        p.totally_real.to_string(),
        lo(&p.mahler.lo),
        hi(&p.mahler.hi),
        hi(&p.split_a.hi),
        lo(&p.split_b.lo),
        p.unimodular_count.to_string(),
        p.real_root_count.to_string(),
        p.descartes.to_string(),
        fraction(&r.margin),
        "ok".to_string(),
        r.flags().join(";"),
    ]
}

/// Header plus one row per entry; failed classes keep their coordinates
/// and report the failure in `status` and `flags`.
pub fn to_csv(scan: &ScanReport) -> Vec<u8> {
    let dim = scan.config.cone.dim();
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .quote_style(csv::QuoteStyle::Necessary)
        .from_writer(Vec::new());
    w.write_record(csv_header(dim, scan.config.height_index))
        .expect("writing to memory");
    for e in &scan.entries {
        let mut row: Vec<String> = e.alpha().coords().iter().map(i64::to_string).collect();
        match e {
            ClassEntry::Ok(r) => row.extend(report_fields(r)),
            ClassEntry::Failed(f) => {
                row.extend(std::iter::repeat_n(String::new(), TAIL.len() - 2));
                row.push("error".to_string());
                row.push(format!("{}:{}", f.stage, f.kind));
            }
        }
        w.write_record(&row).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

/// Ray table as CSV: one row per parameter value.
pub fn ray_to_csv(table: &RayTable) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record([
        "param",
        "class",
        "lambda_lo",
        "lambda_hi",
        "log_lambda_lo",
        "log_lambda_hi",
        "norm",
        "norm_source",
        "product_lo",
        "product_hi",
        "status",
        "note",
    ])
    .expect("writing to memory");
    for r in &table.rows {
        let class = r.alpha.as_ref().map(|a| a.to_string()).unwrap_or_default();
        let mut row = vec![r.param.to_string(), class];
        match &r.outcome {
            RayOutcome::Ok {
                lambda,
                log_lambda,
                norm,
                norm_source,
                product,
            } => {
                row.extend([
                    lo(&lambda.lo),
                    hi(&lambda.hi),
                    lo(&log_lambda.lo),
                    hi(&log_lambda.hi),
                    norm.to_string(),
                    match norm_source {
                        NormSource::Thurston => "thurston".to_string(),
                        NormSource::DegreeProxy => "degree_proxy".to_string(),
                    },
                    lo(&product.lo),
                    hi(&product.hi),
                    "ok".to_string(),
                    String::new(),
                ]);
            }
            RayOutcome::Skipped { note } => {
                row.extend(std::iter::repeat_n(String::new(), 8));
                row.extend(["skipped".to_string(), note.clone()]);
            }
            RayOutcome::Failed(f) => {
                row.extend(std::iter::repeat_n(String::new(), 8));
                row.extend(["error".to_string(), format!("{}:{}", f.stage, f.kind)]);
            }
        }
        w.write_record(&row).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}
