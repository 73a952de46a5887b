use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fibercone::builtins;
use fibercone::config::{RunConfig, CONFIG_VERSION};
use fibercone::groupring::CohomClass;
use fibercone::pipeline::{
    analyze_class, ray_family, scan, ClassReport, LehmerVerdict, RayFamily, RayOutcome, RayTable,
    SchinzelVerdict,
};
use fibercone::reportio::{self, decimal, fraction, PlotStyle};
use fibercone::Error;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  other failure
  2  usage or configuration error
  3  class is not in the cone
  4  class is not primitive
  5  precision ceiling reached without certification
  6  internal verification failed
  7  file input/output error";

/// Stretch factors, trace fields and Mahler measures over fibered cones.
#[derive(Parser)]
#[command(version, after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one primitive class.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Class coordinates, e.g. 9,14.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        class: Vec<i64>,
        /// Write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Analyze every primitive class below a height bound.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Classes with 0 < height < BOUND are scanned.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Stretch factors along a ray or a one-parameter family.
    Ray {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        family: Option<FamilyKind>,
        /// Heights for the edge and offset families.
        #[arg(long = "b", value_delimiter = ',')]
        heights: Vec<i64>,
        /// Direction of the ray, e.g. 0,1.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        direction: Vec<i64>,
        /// Multiples of the direction.
        #[arg(long, value_delimiter = ',')]
        multiples: Vec<i64>,
        /// Free coordinate of the offset family.
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<i64>,
        /// Also check every lambda against the square of the same family's
        /// lambda for this builtin.
        #[arg(long)]
        square_of: Option<String>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-render the SVG plot of a saved JSON scan.
    Plot {
        /// Scan written by `scan --json`.
        #[arg(long)]
        json: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// Built-in example (hironaka1, hironaka2).
    #[arg(long)]
    builtin: Option<String>,
    /// TOML run configuration; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Linear norm functional, e.g. 0,3.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    norm: Vec<i64>,
    /// Precision ceiling in bits for certified numerics.
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Edge,
    Offset,
    Direction,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::Config(_) | Error::Parse(_) | Error::NonPositiveBound(_) => 2,
            Error::NotInCone(_) => 3,
            Error::NotPrimitive(_) => 4,
            Error::PrecisionCeiling(_) => 5,
            Error::Verification(_) => 6,
            Error::Io(_) => 7,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 7,
        message: format!("{}: {e}", path.display()),
    }
}

fn load_config(common: &Common) -> Result<RunConfig, Failure> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig {
            version: CONFIG_VERSION,
            ..RunConfig::default()
        },
    };
    if common.builtin.is_some() {
        cfg.polynomial = None;
    }
    cfg.overlay(RunConfig {
        version: CONFIG_VERSION,
        builtin: common.builtin.clone(),
        norm: (!common.norm.is_empty()).then(|| common.norm.clone()),
        precision_bits: common.precision_bits,
        workers: common.workers,
        ..RunConfig::default()
    });
    Ok(cfg)
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| usage(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes).and_then(|_| f.sync_all()))
        .and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(io_failure(path, e));
    }
    Ok(())
}

fn lehmer_text(v: LehmerVerdict) -> &'static str {
    match v {
        LehmerVerdict::NotApplicable => "not applicable (all factors cyclotomic)",
        LehmerVerdict::Below => "BELOW Lehmer's constant (potential counterexample)",
        LehmerVerdict::NotBelow => "not below Lehmer's constant",
        LehmerVerdict::Inconclusive => "inconclusive",
    }
}

fn schinzel_text(v: SchinzelVerdict) -> &'static str {
    match v {
        SchinzelVerdict::NotApplicable => "not applicable (non-real conjugates)",
        SchinzelVerdict::Holds => "holds",
        SchinzelVerdict::Fails => "FAILS",
        SchinzelVerdict::Inconclusive => "inconclusive",
    }
}

fn interval(lo: &num_rational::BigRational, hi: &num_rational::BigRational) -> String {
    format!("[{}, {}]", decimal(lo, 20, false), decimal(hi, 20, true))
}

fn print_report(r: &ClassReport) {
    let p = &r.poly;
    println!("class            {}", r.alpha);
    println!("specialization   {}", p.specialization);
    println!("factorization    {}", p.factorization);
    for f in &p.factors {
        let tag = match (f.cyclotomic_order, f.contains_lambda) {
            (Some(n), _) => format!("cyclotomic, order {n}"),
            (None, true) => "minimal polynomial of lambda".to_string(),
            (None, false) => "non-cyclotomic".to_string(),
        };
        println!("  degree {:>3}      {tag}", f.poly.deg());
    }
    println!("minpoly          {}", p.minpoly);
    println!("lambda           {}", interval(&p.lambda.re.lo, &p.lambda.re.hi));
    println!("log lambda       {}", interval(&p.log_lambda.lo, &p.log_lambda.hi));
    match r.thurston_norm {
        Some(n) => println!("norm             {n}"),
        None => println!("norm             {} (degree proxy)", p.degree_proxy_norm),
    }
    println!("margin           {}", fraction(&r.margin));
    println!("totally real     {}", p.totally_real);
    println!("self-reciprocal  {}", p.self_reciprocal);
    println!("real roots       {} (Descartes bound {})", p.real_root_count, p.descartes);
    println!("unimodular roots {}", p.unimodular_count);
    println!("non-real outside {}", p.nonreal_outside_count);
    println!("Mahler measure   {}", interval(&p.mahler.lo, &p.mahler.hi));
    println!("  A (real part)  {}", interval(&p.split_a.lo, &p.split_a.hi));
    println!("  B (non-real)   {}", interval(&p.split_b.lo, &p.split_b.hi));
    println!("Lehmer           {}", lehmer_text(p.lehmer));
    println!("Schinzel         {}", schinzel_text(p.schinzel));
    let flags = r.flags();
    if !flags.is_empty() {
        println!("flags            {}", flags.join(";"));
    }
}

fn cmd_analyze(common: Common, class: Vec<i64>, json: Option<PathBuf>) -> Result<(), Failure> {
    let cfg = load_config(&common)?;
    let problem = cfg.problem()?;
    let alpha = CohomClass::new(class);
    if alpha.dim() != problem.cone.dim() {
        return Err(usage(format!(
            "class {alpha} has {} coordinates, the cone needs {}",
            alpha.dim(),
            problem.cone.dim()
        )));
    }
    let report = analyze_class(&problem.theta, &problem.cone, &alpha, &cfg.settings()?)?;
    print_report(&report);
    if let Some(path) = json {
        let mut bytes = serde_json::to_vec_pretty(&report).expect("reports serialize");
        bytes.push(b'\n');
        write_atomic(&path, &bytes)?;
    }
    Ok(())
}

fn cmd_scan(
    common: Common,
    bound: Option<i64>,
    csv: Option<PathBuf>,
    json: Option<PathBuf>,
    svg: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut cfg = load_config(&common)?;
    cfg.overlay(RunConfig {
        bound,
        csv,
        json,
        svg,
        ..RunConfig::default()
    });
    let problem = cfg.problem()?;
    let bound = cfg.bound()?;
    let mut report = scan(&problem.theta, &problem.cone, problem.height_index, bound, &cfg.settings()?)?;
    report.config.name = problem.name.clone();

    if let Some(path) = &cfg.csv {
        write_atomic(path, &reportio::to_csv(&report))?;
    }
    if let Some(path) = &cfg.json {
        write_atomic(path, &reportio::to_json(&report))?;
    }
    if let Some(path) = &cfg.svg {
        match reportio::render_svg(&report, &PlotStyle::default()) {
            Ok(bytes) => write_atomic(path, &bytes)?,
            Err(Error::DimensionMismatch { got, .. }) => {
                eprintln!("note: plot skipped, classes have {got} coordinates (need 2)");
            }
            Err(e) => return Err(e.into()),
        }
    }
    let s = &report.summary;
    println!(
        "{} classes: {} totally real, {} not totally real, {} errors; Lehmer below {}, Schinzel fails {}",
        s.total, s.totally_real, s.not_totally_real, s.errors, s.lehmer_below, s.schinzel_fails
    );
    Ok(())
}

fn print_ray(table: &RayTable) {
    println!("{:>6}  {:>12}  {:>24}  {:>24}  {:>6}  {:>24}", "param", "class", "lambda_lo", "lambda_hi", "norm", "log(lambda)*norm");
    for r in &table.rows {
        let class = r.alpha.as_ref().map(|a| a.to_string()).unwrap_or_default();
        match &r.outcome {
            RayOutcome::Ok {
                lambda, norm, product, ..
            } => println!(
                "{:>6}  {:>12}  {:>24}  {:>24}  {:>6}  {:>24}",
                r.param,
                class,
                decimal(&lambda.lo, 20, false),
                decimal(&lambda.hi, 20, true),
                norm,
                decimal(&product.hi, 20, true)
            ),
            RayOutcome::Skipped { note } => println!("{:>6}  {:>12}  skipped: {note}", r.param, class),
            RayOutcome::Failed(f) => println!("{:>6}  {:>12}  error: {}", r.param, class, f.message),
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_ray(
    common: Common,
    kind: Option<FamilyKind>,
    heights: Vec<i64>,
    direction: Vec<i64>,
    multiples: Vec<i64>,
    offset: Option<i64>,
    square_of: Option<String>,
    csv: Option<PathBuf>,
) -> Result<(), Failure> {
    let cfg = load_config(&common)?;
    let problem = cfg.problem()?;
    let family = match kind {
        None => cfg
            .ray
            .clone()
            .ok_or_else(|| usage("give --family or a [ray] section in the config"))?,
        Some(FamilyKind::Edge) => RayFamily::Edge { heights },
        Some(FamilyKind::Offset) => RayFamily::Offset {
            offset: offset.ok_or_else(|| usage("--family offset needs --offset"))?,
            heights,
        },
        Some(FamilyKind::Direction) => {
            if direction.is_empty() {
                return Err(usage("--family direction needs --direction"));
            }
            RayFamily::Direction {
                direction: CohomClass::new(direction),
                multiples,
            }
        }
    };
    if let RayFamily::Direction { direction, .. } = &family {
        if direction.dim() != problem.cone.dim() {
            return Err(usage("direction has the wrong number of coordinates"));
        }
        if !fibercone::conelattice::contains(&problem.cone, direction)? {
            return Err(Error::NotInCone(direction.to_string()).into());
        }
    }
    let settings = cfg.settings()?;
    let table = ray_family(&problem.theta, &problem.cone, problem.height_index, &family, &settings)?;
    print_ray(&table);
    if let Some(name) = square_of {
        let base = builtins::by_name(&name).ok_or_else(|| usage(format!("unknown builtin {name:?}")))?;
        let other = ray_family(&base.theta, &base.cone, base.height_index, &family, &settings)?;
        let checks = table.within_square_of(&other);
        let mut all = true;
        for (r, ok) in table.rows.iter().zip(&checks) {
            let text = match ok {
                Some(true) => "ok",
                Some(false) => {
                    all = false;
                    "VIOLATED"
                }
                None => "n/a",
            };
            println!("lambda({}) <= lambda_{name}^2 at param {}: {text}", table_class(r), r.param);
        }
        if !all {
            println!("some rows exceed the square of {name}'s stretch factor");
        }
    }
    if let Some(path) = csv.or(cfg.csv) {
        write_atomic(&path, &reportio::ray_to_csv(&table))?;
    }
    Ok(())
}

fn table_class(r: &fibercone::pipeline::RayRow) -> String {
    r.alpha.as_ref().map(|a| a.to_string()).unwrap_or_else(|| "-".into())
}

fn cmd_plot(json: PathBuf, svg: PathBuf) -> Result<(), Failure> {
    let bytes = fs::read(&json).map_err(|e| io_failure(&json, e))?;
    let report = reportio::from_json(&bytes)?;
    let out = reportio::render_svg(&report, &PlotStyle::default())?;
    write_atomic(&svg, &out)?;
    println!("{} markers written to {}", report.len(), svg.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { common, class, json } => cmd_analyze(common, class, json),
        Command::Scan {
            common,
            bound,
            csv,
            json,
            svg,
        } => cmd_scan(common, bound, csv, json, svg),
        Command::Ray {
            common,
            family,
            heights,
            direction,
            multiples,
            offset,
            square_of,
            csv,
        } => cmd_ray(common, family, heights, direction, multiples, offset, square_of, csv),
        Command::Plot { json, svg } => cmd_plot(json, svg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
