//! `mvbessel`: compute Jack and multivariable Bessel polynomials, run the exact
//! verification suites and the numeric cross-checks.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails or is
//! inconclusive, 2 on malformed arguments or configuration.

mod cache;
mod suite;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvbessel_core::exact::parse_rational;
use mvbessel_core::{
    contour_orthogonality_numeric, enumerate_partitions, kadell_numeric, l2_orthogonality_numeric,
    laguerre_numeric, normfactor_rhs, Engine, Error, Mode, MomentTable, Params, Partition,
    QuadratureConfig, Rational, VerificationReport, WeightSeriesEvaluator,
};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use suite::{ParamMode, SuiteConfig, Summary};

#[derive(Parser)]
#[command(
    name = "mvbessel",
    version,
    about = "Exact Jack and multivariable Bessel polynomials with verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a Jack polynomial P_λ or a Bessel polynomial Y_λ
    Poly(PolyArgs),
    /// Run one exact verification family
    Verify(VerifyArgs),
    /// Run one numeric cross-check
    Numeric(NumericArgs),
    /// Evaluate the weight series
    Weight {
        #[command(subcommand)]
        command: WeightCommand,
    },
    /// Run the configured battery and write one JSON report
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Jack,
    Bessel,
}

#[derive(Args)]
struct ParamArgs {
    /// κ as p/q; symbolic when omitted
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    kappa: Option<Rational>,
    /// a as p/q; symbolic when omitted
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    a: Option<Rational>,
}

impl ParamArgs {
    fn params(&self) -> Params {
        Params::new(self.a.clone(), self.kappa.clone())
    }
}

#[derive(Args)]
struct PolyArgs {
    kind: PolyKind,
    #[arg(long)]
    n: usize,
    /// Partition such as 2,1 (empty for ∅)
    #[arg(long, value_parser = partition_arg)]
    lambda: Partition,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Orthogonality,
    Norms,
    Moments,
    JackNorms,
    Rationality,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    kind: VerifyKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_weight: u32,
    #[command(flatten)]
    params: ParamArgs,
    /// CSV is available for the norm, moment and Jack-norm tables
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum NumericKind {
    KrallFrink,
    Kadell,
    Laguerre,
    L2,
}

#[derive(Args)]
struct NumericArgs {
    kind: NumericKind,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// First partition of a pairing, or ν for the moment integrals
    #[arg(long, value_parser = partition_arg)]
    lambda: Option<Partition>,
    /// Second partition of a pairing
    #[arg(long, value_parser = partition_arg)]
    mu: Option<Partition>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    a: Option<Rational>,
    #[arg(long, value_parser = rational_arg, default_value = "1")]
    kappa: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    beta: Option<Rational>,
    #[arg(long, default_value = "quad")]
    mode: Mode,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct QuadArgs {
    /// Decimal 64-bit seed for Monte Carlo
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Series truncation weight (burn-in for adaptive evaluation)
    #[arg(long)]
    truncation: Option<u32>,
    #[arg(long)]
    nodes: Option<usize>,
}

impl QuadArgs {
    fn config(&self) -> QuadratureConfig {
        let d = QuadratureConfig::default();
        QuadratureConfig {
            points_per_circle: self.points.unwrap_or(d.points_per_circle),
            truncation_weight: self.truncation.unwrap_or(d.truncation_weight),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
            seed: self.seed.unwrap_or(d.seed),
            mc_samples: self.samples.unwrap_or(d.mc_samples),
            laguerre_nodes: self.nodes.unwrap_or(d.laguerre_nodes),
        }
    }
}

#[derive(Subcommand)]
enum WeightCommand {
    /// Evaluate W at one point of (ℂ∖{0})ⁿ
    Eval(WeightArgs),
}

#[derive(Args)]
struct WeightArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational_arg)]
    kappa: Rational,
    /// Coordinates such as 1, -0.5+2i or 0+1i, comma separated
    #[arg(long, value_delimiter = ',', value_parser = complex_arg, allow_hyphen_values = true, required = true)]
    x: Vec<Complex64>,
    /// Fixed truncation weight; adaptive when omitted
    #[arg(long)]
    truncate: Option<u32>,
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
}

#[derive(Args)]
struct SuiteArgs {
    /// TOML configuration; defaults apply when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Report path, overriding `output` in the configuration
    #[arg(long)]
    output: Option<PathBuf>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn partition_arg(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse()
        .map_err(|e| format!("bad complex number {s:?}: {e:?}"))
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// A computation that could not complete: exit code 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Precondition(_)
            | Error::TooManyParts { .. }
            | Error::NotAPartition(_)
            | Error::ParameterDegeneracy { .. }
            | Error::GammaPole(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn print_json<T: Serialize>(v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Runtime(e.to_string()))?;
    emit(&(s + "\n"))
}

/// Writes to stdout; a reader that closed the pipe early is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Failure::Runtime(e.to_string()))
        }
        _ => Ok(()),
    }
}

fn print_csv(header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Runtime(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    emit(&String::from_utf8_lossy(&bytes))
}

#[derive(Serialize)]
struct PolyOutput {
    kind: &'static str,
    n: usize,
    lambda: Partition,
    kappa: String,
    a: String,
    monomial: mvbessel_core::sympoly::PolyJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    jack: Option<mvbessel_core::sympoly::PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvalue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant_term: Option<String>,
}

fn shown(v: &Option<Rational>) -> String {
    v.as_ref()
        .map_or_else(|| "symbolic".to_string(), |r| r.to_string())
}

fn poly(args: &PolyArgs) -> Outcome {
    args.lambda.check_length(args.n)?;
    let kind = match args.kind {
        PolyKind::Jack => {
            if args.params.a.is_some() {
                return Err(Failure::Usage("Jack polynomials do not depend on a".into()));
            }
            "jack"
        }
        PolyKind::Bessel => "bessel",
    };
    let key = format!(
        "{kind} n={} {} a={} k={}",
        args.n,
        args.lambda,
        shown(&args.params.a),
        shown(&args.params.kappa)
    );
    let cache = cache::Cache::from_env();
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        emit(&hit)?;
        return Ok(true);
    }
    let e = Engine::new(args.params.params());
    let mut out = PolyOutput {
        kind,
        n: args.n,
        lambda: args.lambda.clone(),
        kappa: shown(&args.params.kappa),
        a: shown(&args.params.a),
        monomial: mvbessel_core::sympoly::PolyJson {
            n: args.n,
            basis: String::new(),
            terms: Vec::new(),
        },
        jack: None,
        eigenvalue: None,
        constant_term: None,
    };
    match args.kind {
        PolyKind::Jack => out.monomial = e.jack(&args.lambda, args.n)?.to_json("monomial"),
        PolyKind::Bessel => {
            let y = e.bessel(&args.lambda, args.n)?;
            out.monomial = y.monomial_form.to_json("monomial");
            out.jack = Some(y.jack_coeffs.to_json());
            out.eigenvalue = Some(y.eigenvalue.to_string());
            out.constant_term = Some(y.constant_term().to_string());
        }
    }
    let text =
        serde_json::to_string_pretty(&out).map_err(|e| Failure::Runtime(e.to_string()))? + "\n";
    if let Some(c) = &cache {
        // the cache is an accelerator only; a write failure is not an error
        if let Err(err) = c.put(&key, &text) {
            eprintln!("warning: cache write failed: {err}");
        }
    }
    emit(&text)?;
    Ok(true)
}

#[derive(Serialize)]
struct ReportList {
    summary: Summary,
    reports: Vec<VerificationReport>,
}

fn emit_reports(reports: Vec<VerificationReport>) -> Outcome {
    let summary = Summary::of(&reports);
    let ok = summary.all_pass();
    print_json(&ReportList { summary, reports })?;
    Ok(ok)
}

fn verify(args: &VerifyArgs) -> Outcome {
    let (n, w) = (args.n, args.max_weight);
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    let csv_ok = matches!(
        args.kind,
        VerifyKind::Norms | VerifyKind::Moments | VerifyKind::JackNorms
    );
    if args.format == Format::Csv && !csv_ok {
        return Err(Failure::Usage(
            "CSV output is available for norms, moments and jack-norms".into(),
        ));
    }
    let params = args.params.params();
    let e = Engine::new(params.clone());
    match args.kind {
        VerifyKind::Orthogonality => {
            let r = suite::orthogonality_and_norms(&e, n, w);
            emit_reports(
                r.into_iter()
                    .filter(|r| r.identity == "bessel-orthogonality")
                    .collect(),
            )
        }
        VerifyKind::Norms => {
            let reports: Vec<_> = suite::orthogonality_and_norms(&e, n, w)
                .into_iter()
                .filter(|r| r.identity == "bessel-norm")
                .collect();
            if args.format == Format::Json {
                return emit_reports(reports);
            }
            let mut rows = Vec::new();
            for l in enumerate_partitions(w, n) {
                let y = e.bessel(&l, n)?;
                let pairing = e.w_pairing(&y.monomial_form, &y.monomial_form)?;
                let rhs = e.params().apply(&normfactor_rhs(&l, n)?)?;
                let k = e.norm_ratio(&l, n)?;
                rows.push(vec![
                    l.to_string(),
                    pairing.normalize().to_string(),
                    rhs.to_string(),
                    k.normalize().to_string(),
                ]);
            }
            print_csv(&["lambda", "pairing", "normfactor_rhs", "ratio"], &rows)?;
            Ok(reports.iter().all(|r| r.passed()))
        }
        VerifyKind::Moments => {
            if !params.is_symbolic() {
                return Err(Failure::Usage(
                    "moment identities are checked symbolically; drop --a and --kappa".into(),
                ));
            }
            let reports = suite::moments(n, w);
            if args.format == Format::Json {
                return emit_reports(reports);
            }
            let table = MomentTable::build(n, w)?;
            let base = table
                .entries
                .get(&Partition::empty())
                .cloned()
                .ok_or_else(|| Failure::Runtime("missing base moment".into()))?;
            let mut rows = Vec::new();
            for nu in enumerate_partitions(w, n) {
                let m = &table.entries[&nu];
                rows.push(vec![
                    nu.to_string(),
                    m.normalize().to_string(),
                    m.div(&base)?.normalize().to_string(),
                ]);
            }
            print_csv(&["nu", "moment", "ratio_to_base"], &rows)?;
            Ok(reports.iter().all(|r| r.passed()))
        }
        VerifyKind::JackNorms => {
            if params.a.is_some() {
                return Err(Failure::Usage("Jack norms do not depend on a".into()));
            }
            let mode = args
                .params
                .kappa
                .clone()
                .map_or(ParamMode::Symbolic, ParamMode::Value);
            let kappas = suite::integer_kappas(&mode);
            if kappas.is_empty() {
                return Err(Failure::Usage(
                    "the torus pairing needs a positive integer kappa".into(),
                ));
            }
            let reports = suite::jack_norms(&kappas, n, w);
            if args.format == Format::Json {
                return emit_reports(reports);
            }
            let rows: Vec<Vec<String>> = suite::jack_norm_rows(&kappas, n, w)?
                .into_iter()
                .map(Vec::from)
                .collect();
            print_csv(&["kappa", "lambda", "norm"], &rows)?;
            Ok(reports.iter().all(|r| r.passed()))
        }
        VerifyKind::Rationality => emit_reports(suite::rationality(&e, n, w)),
    }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, Failure> {
    v.clone()
        .ok_or_else(|| Failure::Usage(format!("--{flag} is required for this check")))
}

fn numeric(args: &NumericArgs) -> Outcome {
    let cfg = args.quad.config();
    let k = &args.kappa;
    let r = match args.kind {
        NumericKind::KrallFrink => {
            if args.mode == Mode::Mc {
                return Err(Failure::Usage(
                    "the contour check is quadrature only".into(),
                ));
            }
            let (l, m, a) = (
                need(&args.lambda, "lambda")?,
                need(&args.mu, "mu")?,
                need(&args.a, "a")?,
            );
            contour_orthogonality_numeric(&l, &m, args.n, &a, k, &cfg)?
        }
        NumericKind::Kadell => {
            let nu = args.lambda.clone().unwrap_or_default();
            let (alpha, beta) = (need(&args.alpha, "alpha")?, need(&args.beta, "beta")?);
            kadell_numeric(&nu, args.n, &alpha, &beta, k, &cfg, args.mode)?
        }
        NumericKind::Laguerre => {
            let nu = args.lambda.clone().unwrap_or_default();
            laguerre_numeric(
                &nu,
                args.n,
                &need(&args.alpha, "alpha")?,
                k,
                &cfg,
                args.mode,
            )?
        }
        NumericKind::L2 => {
            let (l, m, a) = (
                need(&args.lambda, "lambda")?,
                need(&args.mu, "mu")?,
                need(&args.a, "a")?,
            );
            l2_orthogonality_numeric(&l, &m, args.n, &a, k, &cfg, args.mode)?
        }
    };
    let ok = r.passed();
    print_json(&r)?;
    Ok(ok)
}

#[derive(Serialize)]
struct WeightOutput {
    n: usize,
    a: String,
    kappa: String,
    x: Vec<[f64; 2]>,
    value: [f64; 2],
    truncation: u32,
    tail: f64,
}

fn weight_eval(args: &WeightArgs) -> Outcome {
    if args.x.len() != args.n {
        return Err(Failure::Usage(format!(
            "expected {} coordinates, got {}",
            args.n,
            args.x.len()
        )));
    }
    let s = match args.truncate {
        Some(t) => {
            WeightSeriesEvaluator::new(args.n, &args.a, &args.kappa).eval_truncated(&args.x, t)?
        }
        None => {
            let cfg = QuadratureConfig {
                tolerance: args.tolerance,
                ..Default::default()
            };
            mvbessel_core::eval_weight_series(&args.x, &args.a, &args.kappa, &cfg)?
        }
    };
    print_json(&WeightOutput {
        n: args.n,
        a: args.a.to_string(),
        kappa: args.kappa.to_string(),
        x: args.x.iter().map(|z| [z.re, z.im]).collect(),
        value: [s.value.re, s.value.im],
        truncation: s.truncation,
        tail: s.tail,
    })?;
    Ok(true)
}

fn load_config(path: Option<&Path>) -> Result<SuiteConfig, Failure> {
    let Some(path) = path else {
        return Ok(SuiteConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let cfg: SuiteConfig =
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    cfg.validate()?;
    Ok(cfg)
}

fn run_suite(args: &SuiteArgs) -> Outcome {
    let mut cfg = load_config(args.config.as_deref())?;
    if args.output.is_some() {
        cfg.output = args.output.clone();
    }
    let report = suite::run_suite(&cfg)?;
    let ok = report.summary.all_pass();
    let text =
        serde_json::to_string_pretty(&report).map_err(|e| Failure::Runtime(e.to_string()))? + "\n";
    match &cfg.output {
        Some(p) => {
            std::fs::write(p, &text)
                .map_err(|e| Failure::Runtime(format!("{}: {e}", p.display())))?;
            let s = &report.summary;
            eprintln!(
                "{} of {} checks pass; report written to {}",
                s.pass,
                s.total,
                p.display()
            );
        }
        None => emit(&text)?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Poly(a) => poly(a),
        Command::Verify(a) => verify(a),
        Command::Numeric(a) => numeric(a),
        Command::Weight {
            command: WeightCommand::Eval(a),
        } => weight_eval(a),
        Command::Suite(a) => run_suite(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
