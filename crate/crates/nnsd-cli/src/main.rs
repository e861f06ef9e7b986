//! `nnsd` — level-spacing densities, Monte Carlo sampling, and
//! verification reports from the command line.
//!
//! Exit codes are a stable contract: 0 success, 1 usage error, 2 numeric
//! failure, 3 verification failure.

mod output;

use clap::{Args, Parser, Subcommand};
use nnsd::analysis::{cdf_from_pdf, histogram, ks_statistic, moment_audit, DEFAULT_KS_THRESHOLD};
use nnsd::chebfit::{refit, validate_fit, ChebCoeffs, DomainConvention, ADOPTED_CONVENTION};
use nnsd::checks;
use nnsd::ensemble::{run_ensemble, SampleMethod};
use nnsd::oracle::QuadratureSpec;
use nnsd::surmise::SurmiseBeta;
use nnsd::transition::{pdf_normalized, pdf_table, transition_mean, transition_pdf, Family};
use nnsd::{Alpha, AlphaVec, Error, GridSpec, Scale, TransitionKind, ZMode};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

const EXIT_USAGE: i32 = 1;
const EXIT_NUMERIC: i32 = 2;
const EXIT_VERIFICATION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "nnsd",
    version,
    about = "Nearest-neighbor level-spacing distributions of a 4x4 matrix model",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a spacing density on a grid and emit a plot-ready table
    Pdf(PdfArgs),
    /// Report a family's exact mean against quadrature of s*F(s)
    Mean(MeanArgs),
    /// Draw Monte Carlo spacings, with a JSON summary
    Sample(SampleArgs),
    /// Kolmogorov-Smirnov comparison of samples against the analytic law
    Compare(CompareArgs),
    /// Validate the stock Chebyshev kernel fit and refit from scratch
    Fit(FitArgs),
    /// Run the verification suites and report JSON results
    Check(CheckArgs),
}

#[derive(Args)]
struct PdfArgs {
    /// Transitional family (gue-ginibre, ginibre-gse, goe-ginibre)
    #[arg(long, conflicts_with = "surmise")]
    transition: Option<TransitionKind>,
    /// Pure surmise density (goe/gue/ginibre/gse or 1-4)
    #[arg(long)]
    surmise: Option<SurmiseBeta>,
    /// Interpolation parameter in [0, 1]
    #[arg(long, conflicts_with = "alphas")]
    alpha: Option<f64>,
    /// Comma-separated list of parameters; one output file per value
    #[arg(long, requires = "output")]
    alphas: Option<String>,
    /// Evaluation grid start:stop:step
    #[arg(long, default_value = "0:5:0.01")]
    grid: GridSpec,
    /// Abscissa scale (raw-s or unit-mean)
    #[arg(long, default_value = "unit-mean")]
    scale: Scale,
    /// Kernel mode for goe-ginibre (exact or cheb)
    #[arg(long, default_value = "exact")]
    z_mode: ZMode,
    /// Divide the emitted table by its trapezoid norm (for cheb mode)
    #[arg(long)]
    renormalize: bool,
    /// Output format (csv or json)
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output path (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MeanArgs {
    #[arg(long)]
    transition: TransitionKind,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// Transitional family; alternative to --alpha-vec
    #[arg(long, requires = "alpha", conflicts_with = "alpha_vec")]
    transition: Option<TransitionKind>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Explicit parameter triple a1,a2,a3
    #[arg(long)]
    alpha_vec: Option<AlphaVec>,
    /// Number of spacings
    #[arg(long)]
    n: usize,
    /// RNG seed (default: NNSD_SEED env var, else 42)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "formula")]
    method: SampleMethod,
    /// Spacing CSV path (stdout when omitted; summary then goes to stderr)
    #[arg(long)]
    output: Option<PathBuf>,
    /// Optional histogram bin count
    #[arg(long)]
    bins: Option<usize>,
    /// Histogram CSV path (requires --bins)
    #[arg(long, requires = "bins")]
    histogram_out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    transition: TransitionKind,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "formula")]
    method: SampleMethod,
    /// KS pass threshold
    #[arg(long, default_value_t = DEFAULT_KS_THRESHOLD)]
    threshold: f64,
    /// Scale samples by their empirical mean instead of the analytic one
    #[arg(long)]
    empirical_mean: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Number of even-Chebyshev coefficients to fit
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Number of Chebyshev-node samples (must be at least 4*order)
    #[arg(long, default_value_t = 512)]
    points: usize,
    /// Argument convention for the refit
    #[arg(long, default_value = "direct-y")]
    convention: DomainConvention,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name (all, kernels, oracle, means, endpoints, cheb,
    /// montecarlo, peak, small-s, general)
    #[arg(long, default_value = "all")]
    suite: String,
    /// Monte Carlo sample count for the montecarlo suite
    #[arg(long, default_value_t = 1_000_000)]
    mc_n: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    std::process::exit(code);
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Domain(_) => EXIT_USAGE,
        Error::Quadrature { .. } | Error::Numeric(_) | Error::Integrity(_) => EXIT_NUMERIC,
    }
}

fn run(command: Command) -> nnsd::Result<i32> {
    match command {
        Command::Pdf(args) => cmd_pdf(args),
        Command::Mean(args) => cmd_mean(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn default_seed() -> u64 {
    std::env::var("NNSD_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(42)
}

fn command_line() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn parse_alpha(value: f64) -> nnsd::Result<Alpha> {
    Alpha::new(value)
}

fn cmd_pdf(args: PdfArgs) -> nnsd::Result<i32> {
    args.grid.validate()?;
    let family = match (args.transition, args.surmise) {
        (Some(kind), None) => Family::Transition(kind),
        (None, Some(beta)) => Family::Surmise(beta),
        _ => {
            return Err(Error::Usage(
                "exactly one of --transition or --surmise is required".into(),
            ))
        }
    };

    let alphas: Vec<Option<Alpha>> = match (&family, args.alpha, &args.alphas) {
        (Family::Surmise(_), None, None) => vec![None],
        (Family::Surmise(_), _, _) => {
            return Err(Error::Usage("surmise densities take no alpha".into()))
        }
        (Family::Transition(_), Some(a), None) => vec![Some(parse_alpha(a)?)],
        (Family::Transition(_), None, Some(list)) => list
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Usage(format!("invalid alpha '{part}'")))
                    .and_then(parse_alpha)
                    .map(Some)
            })
            .collect::<nnsd::Result<_>>()?,
        (Family::Transition(_), None, None) => {
            return Err(Error::Usage(
                "transitional densities need --alpha or --alphas".into(),
            ))
        }
        (Family::Transition(_), Some(_), Some(_)) => unreachable!("clap conflict"),
    };

    let multi = alphas.len() > 1;
    for alpha in alphas {
        let table = pdf_table(family, alpha, args.grid, args.scale, args.z_mode, args.renormalize)?;
        let path = match (&args.output, multi) {
            (Some(path), true) => Some(with_alpha_suffix(path, alpha.map(|a| a.get()))),
            (Some(path), false) => Some(path.clone()),
            (None, _) => None,
        };
        let meta = output::RunMeta { command: command_line(), version: env!("CARGO_PKG_VERSION") };
        match args.format.as_str() {
            "csv" => write_out(path.as_deref(), |w| output::write_pdf_csv(w, &table, &meta))?,
            "json" => write_out(path.as_deref(), |w| output::write_pdf_json(w, &table, &meta))?,
            other => return Err(Error::Usage(format!("unknown format '{other}'"))),
        }
    }
    Ok(0)
}

fn with_alpha_suffix(path: &Path, alpha: Option<f64>) -> PathBuf {
    let alpha = alpha.unwrap_or(f64::NAN);
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}.alpha-{alpha}.{ext}"))
}

fn write_out<F>(path: Option<&Path>,body: F) -> nnsd::Result<()>
where
    F: FnOnce(&mut dyn Write) -> std::io::Result<()>,
{
    let io_err = |e: std::io::Error| Error::Usage(format!("io error: {e}"));
    match path {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(io_err)?;
            body(&mut file).map_err(io_err)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock).map_err(io_err)
        }
    }
}

#[derive(Serialize)]
struct MeanReport {
    kind: TransitionKind,
    alpha: f64,
    mean_closed_form: f64,
    mean_quadrature: f64,
    abs_diff: f64,
}

fn cmd_mean(args: MeanArgs) -> nnsd::Result<i32> {
    let alpha = parse_alpha(args.alpha)?;
    let exact = transition_mean(args.transition, alpha);
    let spec = QuadratureSpec::default();
    let (_, quad) = moment_audit(
        |s| transition_pdf(args.transition, s, alpha, ZMode::ExactQuadrature).unwrap_or(f64::NAN),
        &spec,
    )?;
    let report = MeanReport {
        kind: args.transition,
        alpha: alpha.get(),
        mean_closed_form: exact,
        mean_quadrature: quad,
        abs_diff: (exact - quad).abs(),
    };
    write_out(args.output.as_deref(), |w| output::write_json(w, &report))?;
    Ok(0)
}

#[derive(Serialize)]
struct SampleSummary {
    alpha_vec: AlphaVec,
    n: usize,
    seed: u64,
    method: SampleMethod,
    empirical_mean: f64,
    analytic_mean: Option<f64>,
    abs_diff: Option<f64>,
}

/// Closed-form mean when the triple realizes one of the three families.
fn analytic_mean_for(av: &AlphaVec) -> Option<f64> {
    let pick = |kind: TransitionKind, a: f64| Some(transition_mean(kind, Alpha::new(a).ok()?));
    if av.a1 == 1.0 && av.a3 == 0.0 {
        return pick(TransitionKind::GueToGinibre, av.a2);
    }
    if av.a1 == 1.0 && av.a2 == 1.0 {
        return pick(TransitionKind::GinibreToGse, av.a3);
    }
    if av.a1 == av.a2 && av.a3 == 0.0 {
        return pick(TransitionKind::GoeToGinibre, av.a1);
    }
    None
}

fn cmd_sample(args: SampleArgs) -> nnsd::Result<i32> {
    let alpha_vec = match (args.alpha_vec, args.transition, args.alpha) {
        (Some(av), None, _) => av,
        (None, Some(kind), Some(a)) => kind.alpha_vec(parse_alpha(a)?),
        _ => {
            return Err(Error::Usage(
                "need --alpha-vec or --transition with --alpha".into(),
            ))
        }
    };
    let seed = args.seed.unwrap_or_else(default_seed);
    let set = run_ensemble(&alpha_vec, args.n, seed, args.method)?;

    // analytic mean: closed form for the named families, quadrature of
    // the shell integral otherwise
    let analytic = analytic_mean_for(&alpha_vec).or_else(|| {
        nnsd::oracle::mean_numeric_general(&alpha_vec, &QuadratureSpec::default()).ok()
    });
    let summary = SampleSummary {
        alpha_vec,
        n: args.n,
        seed,
        method: args.method,
        empirical_mean: set.empirical_mean(),
        analytic_mean: analytic,
        abs_diff: analytic.map(|m| (m - set.empirical_mean()).abs()),
    };

    let meta = output::RunMeta { command: command_line(), version: env!("CARGO_PKG_VERSION") };
    if let Some(bins) = args.bins {
        let hi = set.spacings.iter().cloned().fold(0.0f64, f64::max);
        let hist = histogram(&set.spacings, bins, (0.0, hi.max(1e-12)))?;
        if let Some(path) = &args.histogram_out {
            write_out(Some(path), |w| output::write_histogram_csv(w, &hist, &meta))?;
        }
    }

    match &args.output {
        Some(path) => {
            write_out(Some(path), |w| output::write_samples_csv(w, &set, &meta))?;
            write_out(None, |w| output::write_json(w, &summary))?;
        }
        None => {
            write_out(None, |w| output::write_samples_csv(w, &set, &meta))?;
            // keep stdout pure CSV; summary goes to stderr
            let mut err = std::io::stderr();
            output::write_json(&mut err, &summary)
                .map_err(|e| Error::Usage(format!("io error: {e}")))?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct CompareReport {
    kind: TransitionKind,
    alpha: f64,
    n: usize,
    seed: u64,
    method: SampleMethod,
    scaling: &'static str,
    statistic: f64,
    threshold: f64,
    pass: bool,
}

fn cmd_compare(args: CompareArgs) -> nnsd::Result<i32> {
    let alpha = parse_alpha(args.alpha)?;
    let seed = args.seed.unwrap_or_else(default_seed);
    let set = run_ensemble(&args.transition.alpha_vec(alpha), args.n, seed, args.method)?;

    let (scaling, scale): (&'static str, f64) = if args.empirical_mean {
        ("empirical-mean", set.empirical_mean())
    } else {
        ("analytic-mean", transition_mean(args.transition, alpha))
    };
    let scaled: Vec<f64> = set.spacings.iter().map(|s| s / scale).collect();

    let grid = GridSpec::new(0.0, 8.0, 1.0 / 1024.0)?;
    let kind = args.transition;
    let cdf = cdf_from_pdf(|r| pdf_normalized(kind, r, alpha).unwrap_or(f64::NAN), grid)?;
    let ks = ks_statistic(&scaled, |x| cdf.eval(x), args.threshold)?;

    let report = CompareReport {
        kind,
        alpha: alpha.get(),
        n: args.n,
        seed,
        method: args.method,
        scaling,
        statistic: ks.statistic,
        threshold: ks.threshold,
        pass: ks.pass,
    };
    write_out(args.output.as_deref(), |w| output::write_json(w, &report))?;
    Ok(if ks.pass { 0 } else { EXIT_VERIFICATION })
}

#[derive(Serialize)]
struct StockValidation {
    convention: DomainConvention,
    max_rel_err: f64,
    max_abs_err: f64,
    max_abs_over_peak: f64,
}

#[derive(Serialize)]
struct FitOutput {
    refit_convention: DomainConvention,
    refit_order: usize,
    refit_points: usize,
    refit_coefficients: Vec<f64>,
    refit_max_rel_err: f64,
    refit_max_abs_err: f64,
    refit_max_abs_over_peak: f64,
    stock_coefficients: Vec<f64>,
    stock_validation: Vec<StockValidation>,
    adopted_convention: DomainConvention,
}

fn cmd_fit(args: FitArgs) -> nnsd::Result<i32> {
    let spec = QuadratureSpec::default();
    let (set, report) = refit(args.order, args.points, &spec, args.convention)?;

    let mut stock_validation = Vec::new();
    for convention in DomainConvention::BOTH {
        let v = validate_fit(&ChebCoeffs::stock(convention), &spec)?;
        stock_validation.push(StockValidation {
            convention,
            max_rel_err: v.max_rel_err,
            max_abs_err: v.max_abs_err,
            max_abs_over_peak: v.max_abs_over_peak,
        });
    }

    let out = FitOutput {
        refit_convention: args.convention,
        refit_order: args.order,
        refit_points: args.points,
        refit_coefficients: set.coeffs.clone(),
        refit_max_rel_err: report.max_rel_err,
        refit_max_abs_err: report.max_abs_err,
        refit_max_abs_over_peak: report.max_abs_over_peak,
        stock_coefficients: nnsd::chebfit::STOCK_COEFFS.to_vec(),
        stock_validation,
        adopted_convention: ADOPTED_CONVENTION,
    };
    write_out(args.output.as_deref(), |w| output::write_json(w, &out))?;
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> nnsd::Result<i32> {
    let reports = checks::run_suite(&args.suite, args.mc_n)?;
    let all_pass = reports.iter().all(|r| r.pass);
    write_out(args.output.as_deref(), |w| output::write_json(w, &reports))?;
    for report in &reports {
        eprintln!(
            "[{}] {} — {}",
            if report.pass { "PASS" } else { "FAIL" },
            report.id,
            report.title
        );
        if let Some(failure) = report.first_failure() {
            eprintln!("       first failure: {} ({})", failure.name, failure.detail);
        }
    }
    Ok(if all_pass { 0 } else { EXIT_VERIFICATION })
}
