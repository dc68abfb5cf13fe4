//! Command-line front end: subcommands, TOML configuration, data CSV and JSON
//! reports.
//!
//! Exit codes: 0 on success, 2 on usage or configuration errors, 3 on
//! numerical failures. Output files are written to a temporary file in the
//! target directory and renamed into place.

use crate::bootstrap::{self, BlockLength, BootstrapConfig, BootstrapError};
use crate::diagnostics::{self, DiagnosticsError, Theorem};
use crate::linalg::{LinalgError, Matrix, Vector};
use crate::model::{self, DesignSpec, ModelError};
use crate::montecarlo::{self, ExperimentConfig, McError, McReport};
use crate::process::{ErrorMatrixSpec, ErrorProcessSpec};
use crate::stats::{self, StatsError};
use crate::tls::{self, TlsError};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;
use statrs::distribution::{ContinuousCDF, Normal};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Overrides the thread count when `--threads` is absent.
pub const THREADS_ENV: &str = "EIVTLS_THREADS";

const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<TlsError> for CliError {
    fn from(e: TlsError) -> Self {
        match e {
            TlsError::DimensionMismatch(_) | TlsError::TooFewObservations { .. } => usage(e),
            TlsError::Linalg(LinalgError::DimensionMismatch(_) | LinalgError::NonFinite | LinalgError::Empty) => {
                usage(e)
            }
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<BootstrapError> for CliError {
    fn from(e: BootstrapError) -> Self {
        match e {
            BootstrapError::Tls(t) => t.into(),
            BootstrapError::TooManyRefitFailures { .. } => CliError::Numerical(e.to_string()),
            other => usage(other),
        }
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::SingularCovariance | StatsError::DegenerateVariance(_) => CliError::Numerical(e.to_string()),
            StatsError::Linalg(LinalgError::NoConvergence { .. }) => CliError::Numerical(e.to_string()),
            other => usage(other),
        }
    }
}

impl From<McError> for CliError {
    fn from(e: McError) -> Self {
        match e {
            McError::NoSuccesses(_) => CliError::Numerical(e.to_string()),
            McError::Stats(s) => s.into(),
            other => usage(other),
        }
    }
}

impl From<DiagnosticsError> for CliError {
    fn from(e: DiagnosticsError) -> Self {
        usage(e)
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        usage(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "eivtls", version, about = "Total least squares for errors-in-variables models with dependent errors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Master seed (overrides the config file).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output path; reports go to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: EIVTLS_THREADS or all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exemplar {
    /// AR(1) columns, α-mixing.
    Alpha,
    /// MA(2) columns, φ-mixing.
    Phi,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    /// Built-in exemplar used when the config file gives no design/errors.
    #[arg(long, value_enum)]
    pub exemplar: Option<Exemplar>,
    /// Comma-separated ascending sample sizes.
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    #[arg(long)]
    pub replications: Option<usize>,
    /// AN-alpha, AN-phi, CON-alpha or CON-phi.
    #[arg(long)]
    pub theorem: Option<Theorem>,
    /// Run even if the assumption check fails; recorded in the report.
    #[arg(long)]
    pub override_assumptions: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize an EIV dataset and write it as CSV.
    Gen {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Number of rows (default: largest n of the grid).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Fit TLS (and OLS) to a data CSV.
    Fit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: PathBuf,
    },
    /// Evaluate the assumption system of a theorem on declared metadata.
    CheckAssumptions {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Consistency experiment over the n grid.
    McConsistency {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Normality experiment at the largest n of the grid.
    McNormality {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Monte Carlo CLT check for a single error process.
    CltCheck {
        #[command(flatten)]
        common: Common,
        /// Moving-average weights, e.g. 1,1 (default process: iid Gaussian).
        #[arg(long, value_delimiter = ',', conflicts_with = "ar")]
        ma: Option<Vec<f64>>,
        /// AR(1) coefficient.
        #[arg(long)]
        ar: Option<f64>,
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        replications: Option<usize>,
    },
    /// Contracted long-run covariance of the cross-product score over the n grid.
    LongRunCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        exp: ExperimentArgs,
        /// Contraction vector of length p + 1 (default: normalized ones).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Option<Vec<f64>>,
    },
    /// Moving-block bootstrap percentile intervals for a data CSV.
    BootstrapCi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        data: PathBuf,
        /// Block length or "auto".
        #[arg(long)]
        block_length: Option<BlockArg>,
        #[arg(long)]
        n_boot: Option<usize>,
        #[arg(long)]
        level: Option<f64>,
    },
}

/// `--block-length` value: a positive integer or `auto`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BlockArg {
    Fixed(usize),
    Named(AutoTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoTag {
    Auto,
}

impl std::str::FromStr for BlockArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(BlockArg::Named(AutoTag::Auto));
        }
        s.parse().map(BlockArg::Fixed).map_err(|_| format!("expected a positive integer or 'auto', got '{s}'"))
    }
}

impl From<BlockArg> for BlockLength {
    fn from(b: BlockArg) -> Self {
        match b {
            BlockArg::Fixed(l) => BlockLength::Fixed(l),
            BlockArg::Named(AutoTag::Auto) => BlockLength::Auto,
        }
    }
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub exemplar: Option<Exemplar>,
    pub design: Option<DesignSpec>,
    pub beta: Option<Vec<f64>>,
    pub errors: Option<ErrorMatrixSpec>,
    pub n_grid: Option<Vec<usize>>,
    pub replications: Option<usize>,
    pub master_seed: Option<u64>,
    pub theorem: Option<Theorem>,
    pub override_assumptions: Option<bool>,
    /// Row count for `gen`, sequence length for `clt-check`.
    pub n: Option<usize>,
    /// Process for `clt-check`.
    pub process: Option<ErrorProcessSpec>,
    /// Contraction vector for `long-run-check`.
    pub t: Option<Vec<f64>>,
    pub bootstrap: Option<BootstrapFile>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BootstrapFile {
    pub block_length: Option<BlockArg>,
    pub n_boot: Option<usize>,
    pub level: Option<f64>,
}

pub fn load_config(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else { return Ok(FileConfig::default()) };
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
}

/// Resolves an experiment from defaults, the config file and flags, in that
/// order of increasing precedence.
pub fn resolve_experiment(
    file: &FileConfig,
    exp: &ExperimentArgs,
    seed: Option<u64>,
) -> Result<ExperimentConfig, CliError> {
    let exemplar = exp.exemplar.or(file.exemplar).unwrap_or(Exemplar::Phi);
    let base = match exemplar {
        Exemplar::Alpha => ExperimentConfig::alpha_exemplar(vec![250, 1000, 4000], 500, DEFAULT_SEED),
        Exemplar::Phi => ExperimentConfig::phi_exemplar(vec![250, 1000, 4000], 500, DEFAULT_SEED),
    };
    let beta = match &file.beta {
        Some(b) => Vector::new(b.clone()).map_err(|e| usage(format!("beta: {e}")))?,
        None => base.beta,
    };
    Ok(ExperimentConfig {
        design: file.design.clone().unwrap_or(base.design),
        beta,
        errors: file.errors.clone().unwrap_or(base.errors),
        n_grid: exp.n_grid.clone().or_else(|| file.n_grid.clone()).unwrap_or(base.n_grid),
        replications: exp.replications.or(file.replications).unwrap_or(base.replications),
        master_seed: seed.or(file.master_seed).unwrap_or(base.master_seed),
        theorem: exp.theorem.or(file.theorem).unwrap_or(base.theorem),
        override_assumptions: exp.override_assumptions || file.override_assumptions.unwrap_or(false),
    })
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Data CSV: header `x1,…,xp,y`, LF line endings, shortest round-trip floats.
pub fn data_csv(x: &Matrix, y: &Vector) -> String {
    let p = x.cols();
    let mut out = String::new();
    let header: Vec<String> = (1..=p).map(|j| format!("x{j}")).chain(std::iter::once("y".into())).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..x.rows() {
        for v in x.row(i) {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{}\n", y[i]));
    }
    out
}

pub fn write_data(path: &Path, x: &Matrix, y: &Vector) -> Result<(), CliError> {
    write_atomic(path, data_csv(x, y).as_bytes())
}

pub fn read_data(path: &Path) -> Result<(Matrix, Vector), CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| usage(format!("cannot read data {}: {e}", path.display())))?;
    let header = rdr.headers().map_err(usage)?.clone();
    let k = header.len();
    let expected: Vec<String> = (1..k).map(|j| format!("x{j}")).chain(std::iter::once("y".into())).collect();
    if k < 2 || header.iter().ne(expected.iter().map(String::as_str)) {
        return Err(usage(format!(
            "data header must be x1,...,xp,y with p >= 1, got {}",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(usage)?;
        if rec.len() != k {
            return Err(usage(format!("data row {} has {} fields, expected {k}", line + 1, rec.len())));
        }
        for (j, field) in rec.iter().enumerate() {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| usage(format!("data row {} column {}: '{field}' is not a number", line + 1, j + 1)))?;
            if j + 1 < k {
                xs.push(v)
            } else {
                ys.push(v)
            }
        }
    }
    if ys.is_empty() {
        return Err(usage("data file has no rows"));
    }
    let x = Matrix::new(ys.len(), k - 1, xs).map_err(|e| usage(format!("data: {e}")))?;
    let y = Vector::new(ys).map_err(|e| usage(format!("data: {e}")))?;
    Ok((x, y))
}

/// `report.json` → `report.<suffix>.csv`.
pub fn companion_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}.{suffix}.csv"))
}

#[derive(Debug, Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    seed: u64,
    config: serde_json::Value,
    assumption_verdict: String,
    result: T,
}

fn emit<T: Serialize>(
    common: &Common,
    command: &str,
    seed: u64,
    config: serde_json::Value,
    verdict: String,
    result: T,
    companions: Vec<(&str, String)>,
) -> Result<(), CliError> {
    let env =
        Envelope { command, version: env!("CARGO_PKG_VERSION"), seed, config, assumption_verdict: verdict, result };
    let mut text = serde_json::to_string_pretty(&env).map_err(usage)?;
    text.push('\n');
    match &common.out {
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            for (suffix, body) in companions {
                write_atomic(&companion_path(path, suffix), body.as_bytes())?;
            }
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value, CliError> {
    serde_json::to_value(v).map_err(usage)
}

/// Long-format per-n table: `n,statistic,value`.
fn cells_csv(report: &McReport) -> String {
    let mut s = String::from("n,statistic,value\n");
    for c in &report.cells {
        let mut row = |name: &str, v: f64| s.push_str(&format!("{},{name},{v}\n", c.n));
        row("replications", c.replications as f64);
        row("successes", c.successes as f64);
        row("non_generic", c.non_generic as f64);
        row("ill_conditioned", c.ill_conditioned as f64);
        row("other_failures", c.other_failures as f64);
        row("median_err_inf", c.median_err_inf);
        row("iqr_err_inf", c.iqr_err_inf);
        row("sqrt_n_median_err_inf", c.sqrt_n_median_err_inf);
        row("median_sigma2_err", c.median_sigma2_err);
        row("ols_median_err_inf", c.ols_median_err_inf);
        for (j, (t, o)) in c.tls_median_beta.iter().zip(&c.ols_median_beta).enumerate() {
            row(&format!("tls_median_beta{}", j + 1), *t);
            row(&format!("ols_median_beta{}", j + 1), *o);
        }
    }
    s
}

fn matrix_csv(m: &Matrix, prefix: &str) -> String {
    let header: Vec<String> = (1..=m.cols()).map(|j| format!("{prefix}{j}")).collect();
    let mut s = header.join(",");
    s.push('\n');
    for i in 0..m.rows() {
        s.push_str(&m.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

/// Studentized projections against normal quantiles at `(i − ½)/R`.
fn qq_csv(dev: &Matrix, report: &stats::NormalityReport) -> String {
    let normal = Normal::standard();
    let d = dev.cols();
    let mut s = String::from("direction,theoretical,empirical\n");
    let mut dirs: Vec<(String, Vec<f64>)> = (0..d)
        .map(|j| {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            (format!("axis-{}", j + 1), e)
        })
        .collect();
    if d > 1 {
        dirs.push(("ones".into(), vec![1.0 / (d as f64).sqrt(); d]));
    }
    for (label, u) in dirs {
        let m: f64 = u.iter().zip(report.sample_mean.iter()).map(|(a, b)| a * b).sum();
        let var: f64 = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| u[a] * u[b] * report.sample_cov[(a, b)])
            .sum();
        let z = stats::sorted(
            &(0..dev.rows())
                .map(|i| (dev.row(i).iter().zip(&u).map(|(x, w)| x * w).sum::<f64>() - m) / var.sqrt())
                .collect::<Vec<_>>(),
        );
        let r = z.len() as f64;
        for (i, v) in z.iter().enumerate() {
            s.push_str(&format!("{label},{},{v}\n", normal.inverse_cdf((i as f64 + 0.5) / r)));
        }
    }
    s
}

fn thread_count(common: &Common) -> Result<Option<usize>, CliError> {
    if let Some(t) = common.threads {
        return Ok(Some(t));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.parse().map(Some).map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        Err(_) => Ok(None),
    }
}

fn common_of(cmd: &Command) -> &Common {
    match cmd {
        Command::Gen { common, .. }
        | Command::Fit { common, .. }
        | Command::CheckAssumptions { common, .. }
        | Command::McConsistency { common, .. }
        | Command::McNormality { common, .. }
        | Command::CltCheck { common, .. }
        | Command::LongRunCheck { common, .. }
        | Command::BootstrapCi { common, .. } => common,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> Result<(), CliError> {
    let common = common_of(cmd);
    match thread_count(common)? {
        Some(0) => Err(usage("--threads must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(usage)?.install(|| dispatch(cmd)),
        None => dispatch(cmd),
    }
}

fn dispatch(cmd: &Command) -> Result<(), CliError> {
    let common = common_of(cmd);
    let file = load_config(common.config.as_deref())?;
    match cmd {
        Command::Gen { exp, n, .. } => {
            let cfg = resolve_experiment(&file, exp, common.seed)?;
            let n = n.or(file.n).unwrap_or(*cfg.n_grid.last().unwrap_or(&1000));
            let inst = model::synthesize(&cfg.design, &cfg.beta, &cfg.errors, n, cfg.master_seed)?;
            let out = common.out.as_ref().ok_or_else(|| usage("gen requires --out <data.csv>"))?;
            write_data(out, &inst.x, &inst.y)
        }
        Command::Fit { data, .. } => {
            let (x, y) = read_data(data)?;
            let fit = tls::tls_fit(&x, &y)?;
            let ols = tls::ols_fit(&x, &y).ok();
            let config = json!({ "data": data, "n": x.rows(), "p": x.cols() });
            let result = json!({
                "beta_hat": fit.beta_hat,
                "lambda": fit.lambda,
                "sigma2_hat": fit.sigma2_hat,
                "delta_n": fit.delta_n,
                "ols_beta": ols,
                "n": fit.n,
            });
            emit(common, "fit", common.seed.unwrap_or(DEFAULT_SEED), config, "not-evaluated".into(), result, vec![])
        }
        Command::CheckAssumptions { exp, .. } => {
            let cfg = resolve_experiment(&file, exp, common.seed)?;
            let report = diagnostics::check_assumptions(cfg.theorem, &cfg.design, &cfg.errors)?;
            emit(
                common,
                "check-assumptions",
                cfg.master_seed,
                to_value(&cfg)?,
                report.verdict().into(),
                &report,
                vec![],
            )
        }
        Command::McConsistency { exp, .. } => {
            let cfg = resolve_experiment(&file, exp, common.seed)?;
            let report = montecarlo::run_consistency(&cfg)?;
            let cells = cells_csv(&report);
            emit(
                common,
                "mc-consistency",
                cfg.master_seed,
                to_value(&cfg)?,
                report.assumption_verdict.clone(),
                &report,
                vec![("cells", cells)],
            )
        }
        Command::McNormality { exp, .. } => {
            let cfg = resolve_experiment(&file, exp, common.seed)?;
            let report = montecarlo::run_normality(&cfg)?;
            let mut companions = vec![("cells", cells_csv(&report))];
            if let (Some(dev), Some(sec)) = (&report.deviations, &report.normality) {
                companions.push(("deviations", matrix_csv(dev, "d")));
                companions.push(("qq", qq_csv(dev, &sec.report)));
            }
            emit(
                common,
                "mc-normality",
                cfg.master_seed,
                to_value(&cfg)?,
                report.assumption_verdict.clone(),
                &report,
                companions,
            )
        }
        Command::CltCheck { ma, ar, scale, n, replications, .. } => {
            let mut process = file.process.clone().unwrap_or_else(|| ErrorProcessSpec::iid(1.0));
            if let Some(c) = ma {
                process = ErrorProcessSpec::ma(c.clone(), process.scale);
            }
            if let Some(a) = ar {
                process = ErrorProcessSpec::ar1(*a, process.scale, process.delta.unwrap_or(1.0));
            }
            if let Some(s) = scale {
                process.scale = *s;
            }
            let n = n.or(file.n).unwrap_or(2000);
            let r = replications.or(file.replications).unwrap_or(2000);
            let seed = common.seed.or(file.master_seed).unwrap_or(DEFAULT_SEED);
            process.validate().map_err(usage)?;
            let report = stats::clt_check(&process, n, r, seed)?;
            let config = json!({ "process": process, "n": n, "replications": r, "master_seed": seed });
            let samples = std::iter::once("s_over_sigma".to_string())
                .chain(report.s_over_sigma.iter().map(|v| v.to_string()))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n";
            emit(common, "clt-check", seed, config, "not-evaluated".into(), &report, vec![("samples", samples)])
        }
        Command::LongRunCheck { exp, t, .. } => {
            let cfg = resolve_experiment(&file, exp, common.seed)?;
            let k = cfg.p() + 1;
            let t = match t.clone().or_else(|| file.t.clone()) {
                Some(v) => Vector::new(v).map_err(|e| usage(format!("t: {e}")))?,
                None => Vector::new(vec![1.0 / (k as f64).sqrt(); k]).expect("finite"),
            };
            let report = montecarlo::run_long_run_check(&cfg, &t)?;
            let table = std::iter::once("n,t_long_run_t".to_string())
                .chain(report.rows.iter().map(|r| format!("{},{}", r.n, r.t_long_run_t)))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n";
            emit(
                common,
                "long-run-check",
                cfg.master_seed,
                to_value(&cfg)?,
                report.assumption_verdict.clone(),
                &report,
                vec![("long_run", table)],
            )
        }
        Command::BootstrapCi { data, block_length, n_boot, level, .. } => {
            let (x, y) = read_data(data)?;
            let bf = file.bootstrap.clone().unwrap_or_default();
            let cfg = BootstrapConfig {
                block_length: block_length.or(bf.block_length).map(BlockLength::from).unwrap_or(BlockLength::Auto),
                n_boot: n_boot.or(bf.n_boot).unwrap_or(999),
                level: level.or(bf.level).unwrap_or(0.95),
                seed: common.seed.or(file.master_seed).unwrap_or(DEFAULT_SEED),
            };
            let ci = bootstrap::block_bootstrap_ci(&x, &y, &cfg)?;
            let config = json!({ "data": data, "bootstrap": cfg });
            emit(common, "bootstrap-ci", cfg.seed, config, "not-evaluated".into(), &ci, vec![])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_csv_round_trips_bitwise() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let x = Matrix::new(3, 2, vec![0.1, -1e-300, 1.0 / 3.0, 2.5e10, f64::MIN_POSITIVE, -0.0]).unwrap();
        let y = Vector::new(vec![std::f64::consts::PI, 1e-7, -123.456]).unwrap();
        write_data(&path, &x, &y).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("x1,x2,y\n") && !text.contains('\r'));
        let (x2, y2) = read_data(&path).unwrap();
        assert!(x.as_slice().iter().zip(x2.as_slice()).all(|(a, b)| a.to_bits() == b.to_bits()));
        assert!(y.iter().zip(y2.iter()).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn bad_headers_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        std::fs::write(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(read_data(&path), Err(CliError::Usage(_))));
        std::fs::write(&path, "x1,y\n1,zz\n").unwrap();
        assert!(matches!(read_data(&path), Err(CliError::Usage(_))));
    }

    #[test]
    fn companion_names() {
        assert_eq!(companion_path(Path::new("out/r.json"), "cells"), PathBuf::from("out/r.cells.csv"));
    }

    #[test]
    fn config_precedence() {
        let file: FileConfig =
            toml::from_str("n_grid = [100, 200]\nreplications = 300\nmaster_seed = 9\nexemplar = \"alpha\"").unwrap();
        let exp = ExperimentArgs {
            exemplar: None,
            n_grid: None,
            replications: Some(150),
            theorem: None,
            override_assumptions: false,
        };
        let cfg = resolve_experiment(&file, &exp, Some(4)).unwrap();
        assert_eq!(cfg.n_grid, vec![100, 200]);
        assert_eq!(cfg.replications, 150);
        assert_eq!(cfg.master_seed, 4);
        assert_eq!(cfg.theorem, Theorem::AnAlpha);
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }

    #[test]
    fn full_config_file_parses() {
        let text = r#"
beta = [1.0, -2.0]
n_grid = [250, 1000]
replications = 200
master_seed = 7
theorem = "CON-alpha"

[design]
kind = "repeating-block"
block = [[2.0, 0.0], [0.0, 2.0], [2.0, 2.0], [2.0, -2.0]]

[errors]
sigma2 = 1.0

[[errors.columns]]
kind = "ar1"
a = 0.5
delta = 3.0
q = 2.0

[[errors.columns]]
kind = "ma-q"
coeffs = [1.0, 0.6, 0.3]

[[errors.columns]]
kind = "iid-gaussian"

[bootstrap]
block_length = "auto"
n_boot = 399
"#;
        let file: FileConfig = toml::from_str(text).unwrap();
        let exp = ExperimentArgs {
            exemplar: None,
            n_grid: None,
            replications: None,
            theorem: None,
            override_assumptions: false,
        };
        let cfg = resolve_experiment(&file, &exp, None).unwrap();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.errors.columns.len(), 3);
        assert!(diagnostics::check_assumptions(cfg.theorem, &cfg.design, &cfg.errors).unwrap().passes());
        assert_eq!(file.bootstrap.unwrap().block_length, Some(BlockArg::Named(AutoTag::Auto)));
    }

    #[test]
    fn block_arg_parsing() {
        assert_eq!("auto".parse::<BlockArg>().unwrap(), BlockArg::Named(AutoTag::Auto));
        assert_eq!("12".parse::<BlockArg>().unwrap(), BlockArg::Fixed(12));
        assert!("x".parse::<BlockArg>().is_err());
    }
}
