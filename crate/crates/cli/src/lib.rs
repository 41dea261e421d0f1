//! Front end for the `polyfactor` binary.
//!
//! [`run`] does all the work and returns the text to emit, so nothing is
//! written before a subcommand has fully succeeded.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyfactor::{
    capacity_via_norm, constant_disk, constant_for_set, constant_segment, equilibrium_for, exec, fekete_for,
    sharpness_experiment, CompactSet, Complex64, Error, Geometry, MonicPolynomial, SetKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "polyfactor", version, about = "Sharp sup-norm bounds for factors of monic polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Best constant C_E for a set
    Constant,
    /// C_E over a range of radii or half-lengths
    Sweep,
    /// Factor-to-polynomial norm ratios for Fekete polynomials
    Sharpness,
    /// Randomized audit of ‖q‖ ≤ C^n ‖p‖
    Check,
    /// Capacity and equilibrium-measure estimates
    Capacity,
    /// Sup norm of a monic polynomial on a set
    Norm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Set descriptor: disk:r=<f>, segment:a=<f>, union:[l,u];..., cloud:@<path>
    #[arg(long, global = true)]
    pub set: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Equilibrium-measure nodes
    #[arg(long, global = true, default_value_t = 1024)]
    pub nodes: usize,
    /// Boundary candidates scanned by the general path
    #[arg(long, global = true, default_value_t = 256)]
    pub candidates: usize,
    #[arg(long, global = true, value_delimiter = ',', default_value = "32,64,128,256")]
    pub degrees: Vec<usize>,
    #[arg(long, global = true, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write output here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Sweep range `lo:hi`
    #[arg(long, global = true, default_value = "0.1:4")]
    pub range: String,
    #[arg(long, global = true, default_value_t = 0.05)]
    pub step: f64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Polynomial: @<root file> or chebyshev:n=<int>[,a=<f>]
    #[arg(long, global = true)]
    pub poly: Option<String>,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

/// Text to emit and the exit status (0, or 1 when `check` finds a violation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: 0 }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn run(command: Command, config: &RunConfig) -> CliResult<Output> {
    validate(config)?;
    match command {
        Command::Constant => cmd_constant(config),
        Command::Sweep => cmd_sweep(config),
        Command::Sharpness => cmd_sharpness(config),
        Command::Check => cmd_check(config),
        Command::Capacity => cmd_capacity(config),
        Command::Norm => cmd_norm(config),
    }
}

/// Parses a full argument list (program name first) and runs it.
pub fn run_args<I, T>(args: I) -> CliResult<Output>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| usage(e.to_string()))?;
    run(cli.command, &cli.config)
}

fn validate(config: &RunConfig) -> CliResult<()> {
    if !(config.tol > 0.0 && config.tol.is_finite()) {
        return Err(usage(format!("--tol must be positive, got {}", config.tol)));
    }
    if config.nodes < 2 {
        return Err(usage(format!("--nodes must be at least 2, got {}", config.nodes)));
    }
    if config.candidates < 16 {
        return Err(usage(format!("--candidates must be at least 16, got {}", config.candidates)));
    }
    Ok(())
}

fn require_set(config: &RunConfig) -> CliResult<CompactSet> {
    let text = config.set.as_deref().ok_or_else(|| usage("--set is required"))?;
    Ok(CompactSet::parse(text)?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable output");
    s.push('\n');
    s
}

fn cmd_constant(config: &RunConfig) -> CliResult<Output> {
    let set = require_set(config)?;
    let result = constant_for_set(&set, config.tol, config.nodes, config.candidates)?;
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&result),
        Format::Csv => format!(
            "value,maximizer_re,maximizer_im,method,error_estimate\n{},{},{},{:?},{}\n",
            result.value, result.maximizer.re, result.maximizer.im, result.method, result.error_estimate
        ),
    };
    Ok(Output::ok(text))
}

/// Parses `lo:hi` with `0 < lo ≤ hi`.
pub fn parse_range(text: &str) -> CliResult<(f64, f64)> {
    let (lo, hi) = text.split_once(':').ok_or_else(|| usage(format!("range must be lo:hi, got {text:?}")))?;
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| usage(format!("bad range bound {s:?}")));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(usage(format!("range needs 0 < lo <= hi, got {lo}:{hi}")));
    }
    Ok((lo, hi))
}

/// `lo, lo + step, …` up to `hi`, with grid values rounded to 12 decimals.
pub fn sweep_grid(lo: f64, hi: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(usage(format!("--step must be positive, got {step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(usage(format!("sweep of {count} points is too large")));
    }
    Ok((0..count).map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12).collect())
}

fn sweep_kind(config: &RunConfig) -> CliResult<SetKind> {
    let text = config.set.as_deref().ok_or_else(|| usage("--set is required"))?;
    match text.split(':').next().unwrap_or("").trim() {
        "disk" => Ok(SetKind::Disk),
        "segment" => Ok(SetKind::Segment),
        other => Err(usage(format!("sweep supports disk and segment, got {other:?}"))),
    }
}

#[derive(Serialize)]
struct SweepPoint {
    param: f64,
    value: f64,
}

fn cmd_sweep(config: &RunConfig) -> CliResult<Output> {
    let kind = sweep_kind(config)?;
    let (lo, hi) = parse_range(&config.range)?;
    let grid = sweep_grid(lo, hi, config.step)?;
    let values = exec::map(&grid, |&x| match kind {
        SetKind::Disk => constant_disk(x, config.tol),
        _ => constant_segment(x, config.tol),
    });
    let mut points = Vec::with_capacity(grid.len());
    for (&param, v) in grid.iter().zip(values) {
        points.push(SweepPoint { param, value: v?.value });
    }
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Json => json_line(&points),
        Format::Csv => {
            let mut s = format!("# set={kind}\nparam,value\n");
            for p in &points {
                let _ = writeln!(s, "{},{}", p.param, p.value);
            }
            s
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct SharpnessReport {
    set: String,
    u: [f64; 2],
    constant: f64,
    rows: Vec<SharpnessJsonRow>,
}

#[derive(Serialize)]
struct SharpnessJsonRow {
    n: usize,
    ratio: f64,
    log_norm_p: f64,
    log_norm_q: f64,
    factor_degree: usize,
}

fn cmd_sharpness(config: &RunConfig) -> CliResult<Output> {
    let set = require_set(config)?;
    let c = constant_for_set(&set, config.tol, config.nodes, config.candidates)?;
    let u = c.maximizer;
    let rows = sharpness_experiment(&set, u, &config.degrees, config.tol)?;
    let text = match config.format.unwrap_or(Format::Csv) {
        Format::Json => json_line(&SharpnessReport {
            set: set.kind().to_string(),
            u: [u.re, u.im],
            constant: c.value,
            rows: rows
                .iter()
                .map(|r| SharpnessJsonRow {
                    n: r.n,
                    ratio: r.ratio,
                    log_norm_p: r.log_norm_p,
                    log_norm_q: r.log_norm_q,
                    factor_degree: r.factor_degree,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut s = format!("# set={} u={} C_E={}\n", set.kind(), u, c.value);
            // norms are logarithms so that large degrees stay representable
            s.push_str("n,ratio,norm_p,norm_q\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.n, r.ratio, r.log_norm_p, r.log_norm_q);
            }
            s
        }
    };
    Ok(Output::ok(text))
}

/// Outcome of one randomized trial of `‖q‖_E ≤ C_E^n ‖p‖_E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub kind: SetKind,
    pub size: f64,
    pub degree: usize,
    pub factor_degree: usize,
    /// `n·log C + log‖p‖ + log(1 + 1e−9) − log‖q‖`; negative means violation.
    pub log_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub violations: usize,
    pub worst_log_margin: f64,
    pub worst_trial: usize,
}

const CHECK_NORM_TOL: f64 = 1e-10;
const CHECK_SLACK: f64 = 1e-9;

/// Trial `index` draws from its own ChaCha stream under the master seed, so
/// outcomes do not depend on scheduling.
pub fn run_trial(seed: u64, index: usize) -> polyfactor::Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let disk = rng.random_bool(0.5);
    let size = rng.random_range(0.3..=4.0);
    let degree = rng.random_range(1..=12usize);
    let mut roots = Vec::with_capacity(degree);
    for _ in 0..degree {
        let z = if disk {
            loop {
                let z = Complex64::new(rng.random_range(-size..=size), rng.random_range(-size..=size));
                if z.norm() <= size {
                    break z;
                }
            }
        } else {
            Complex64::new(rng.random_range(-size..=size), 0.0)
        };
        roots.push(z);
    }
    let keep: Vec<bool> = (0..degree).map(|_| rng.random_bool(0.5)).collect();
    let p = MonicPolynomial::new(roots.clone());
    let q = MonicPolynomial::new(roots.iter().zip(&keep).filter(|(_, &k)| k).map(|(z, _)| *z).collect());

    let (set, c) = if disk {
        (CompactSet::disk(size)?, constant_disk(size, 1e-12)?)
    } else {
        (CompactSet::segment(size)?, constant_segment(size, 1e-12)?)
    };
    let log_p = p.sup_norm(&set, CHECK_NORM_TOL)?.log_value;
    let log_q = q.sup_norm(&set, CHECK_NORM_TOL)?.log_value;
    Ok(TrialOutcome {
        trial: index,
        kind: set.kind(),
        size,
        degree,
        factor_degree: q.degree(),
        log_margin: degree as f64 * c.value.ln() + log_p + CHECK_SLACK.ln_1p() - log_q,
    })
}

fn cmd_check(config: &RunConfig) -> CliResult<Output> {
    if config.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let outcomes = exec::map_range(config.trials, |i| run_trial(config.seed, i));
    let mut worst: Option<TrialOutcome> = None;
    let mut violations = 0;
    for o in outcomes {
        let o = o?;
        if o.log_margin < 0.0 {
            violations += 1;
        }
        if worst.is_none_or(|w| o.log_margin < w.log_margin) {
            worst = Some(o);
        }
    }
    let worst = worst.expect("at least one trial");
    let summary = CheckSummary {
        trials: config.trials,
        seed: config.seed,
        passed: config.trials - violations,
        violations,
        worst_log_margin: worst.log_margin,
        worst_trial: worst.trial,
    };
    Ok(Output { text: json_line(&summary), status: if violations == 0 { 0 } else { 1 } })
}

#[derive(Serialize)]
struct CapacityReport {
    set: String,
    capacity: f64,
    source: String,
    ensemble_size: usize,
    pair_product: f64,
    via_norm: f64,
}

fn cmd_capacity(config: &RunConfig) -> CliResult<Output> {
    let set = require_set(config)?;
    let measure = equilibrium_for(&set, config.nodes)?;
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Csv => measure.to_csv(),
        Format::Json => {
            let ensemble = fekete_for(&set, config.nodes)?;
            json_line(&CapacityReport {
                set: set.kind().to_string(),
                capacity: measure.capacity(),
                source: measure.source().to_string(),
                ensemble_size: ensemble.degree(),
                pair_product: ensemble.pair_product_capacity(),
                via_norm: capacity_via_norm(&ensemble, config.tol)?,
            })
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct NormReport {
    degree: usize,
    log_norm: f64,
    norm: f64,
    argmax: [f64; 2],
}

fn cmd_norm(config: &RunConfig) -> CliResult<Output> {
    let set = require_set(config)?;
    let spec = config.poly.as_deref().ok_or_else(|| usage("--poly is required"))?;
    let default_a = match set.geometry() {
        Geometry::Segment { half_length } => *half_length,
        Geometry::Disk { radius, .. } => *radius,
        _ => 1.0,
    };
    let p = MonicPolynomial::parse_spec(spec, default_a)?;
    let norm = p.sup_norm(&set, config.tol)?;
    let report =
        NormReport { degree: p.degree(), log_norm: norm.log_value, norm: norm.value(), argmax: [norm.argmax.re, norm.argmax.im] };
    let text = match config.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&report),
        Format::Csv => format!(
            "degree,log_norm,norm,argmax_re,argmax_im\n{},{},{},{},{}\n",
            report.degree, report.log_norm, report.norm, report.argmax[0], report.argmax[1]
        ),
    };
    Ok(Output::ok(text))
}
