//! Monte Carlo experiments for consistency, asymptotic normality, the
//! long-run variance condition and the expected cross-product identity.
//!
//! Replication `r` of grid cell `c` draws its errors with
//! `derive_subseed(master_seed, r, c)`. Replications run in parallel and are
//! merged in replication order, so reports do not depend on the thread count.

use crate::diagnostics::{self, AssumptionReport, DiagnosticsError, Theorem};
use crate::linalg::{Matrix, Vector};
use crate::model::{self, DesignSpec, ModelError};
use crate::process::{self, ErrorMatrixSpec, ErrorProcessSpec};
use crate::rng;
use crate::stats::{self, NormalityReport, StatsError};
use crate::tls::{self, TlsError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MIN_REPLICATIONS: usize = 100;

/// Reported with every experiment.
pub const CONVERGENCE_NOTE: &str = "almost-sure convergence is not distinguishable from convergence in \
probability by simulation; the experiment checks the observable consequence at finite n";
pub const STUDENTIZATION_NOTE: &str = "normality is tested against the normal law with the sample mean \
and covariance of sqrt(n)(beta_hat - beta); the limit covariance is left unspecified";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum McError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error("too few replications: need at least {need}, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("assumptions of {} not met: {}", .0.theorem, .0.violations().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", "))]
    AssumptionsNotMet(Box<AssumptionReport>),
    #[error("no successful replication at n = {0}")]
    NoSuccesses(usize),
    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

fn default_theorem() -> Theorem {
    Theorem::AnAlpha
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub design: DesignSpec,
    pub beta: Vector,
    pub errors: ErrorMatrixSpec,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    pub master_seed: u64,
    #[serde(default = "default_theorem")]
    pub theorem: Theorem,
    /// Run even when the assumption report has violations.
    #[serde(default)]
    pub override_assumptions: bool,
}

/// p = 2 design with `n⁻¹ZᵀZ = 3I` whenever 4 divides n.
pub fn exemplar_design() -> DesignSpec {
    DesignSpec::RepeatingBlock { block: vec![vec![2.0, 0.0], vec![0.0, 2.0], vec![2.0, 2.0], vec![2.0, -2.0]] }
}

pub fn exemplar_beta() -> Vector {
    Vector::new(vec![1.0, -2.0]).expect("finite")
}

/// AR(1) columns with a = 0.5, declared δ = 3, ω = 1, q = 2.
pub fn alpha_path_process() -> ErrorProcessSpec {
    ErrorProcessSpec::ar1(0.5, 1.0, 3.0).with_omega(1.0).with_q(2.0)
}

/// MA(2) columns with weights (1, 0.6, 0.3).
pub fn phi_path_process() -> ErrorProcessSpec {
    ErrorProcessSpec::ma(vec![1.0, 0.6, 0.3], 1.0)
}

impl ExperimentConfig {
    /// α-path exemplar: [`exemplar_design`], β = (1, −2), σ² = 1, AR(1) errors.
    pub fn alpha_exemplar(n_grid: Vec<usize>, replications: usize, master_seed: u64) -> Self {
        Self::exemplar(alpha_path_process(), Theorem::AnAlpha, n_grid, replications, master_seed)
    }

    /// φ-path exemplar: [`exemplar_design`], β = (1, −2), σ² = 1, MA(2) errors.
    pub fn phi_exemplar(n_grid: Vec<usize>, replications: usize, master_seed: u64) -> Self {
        Self::exemplar(phi_path_process(), Theorem::AnPhi, n_grid, replications, master_seed)
    }

    fn exemplar(
        process: ErrorProcessSpec,
        theorem: Theorem,
        n_grid: Vec<usize>,
        replications: usize,
        master_seed: u64,
    ) -> Self {
        ExperimentConfig {
            design: exemplar_design(),
            beta: exemplar_beta(),
            errors: ErrorMatrixSpec::uniform(process, 2, 1.0),
            n_grid,
            replications,
            master_seed,
            theorem,
            override_assumptions: false,
        }
    }

    pub fn p(&self) -> usize {
        self.design.p()
    }

    pub fn validate(&self) -> Result<(), McError> {
        let p = self.p();
        if self.beta.len() != p || self.errors.p() != p {
            return Err(McError::Config(format!(
                "design has p = {p}, beta has {} entries, errors declare {} columns (need p + 1)",
                self.beta.len(),
                self.errors.columns.len()
            )));
        }
        self.errors.validate().map_err(|e| McError::Config(e.to_string()))?;
        if self.n_grid.is_empty() {
            return Err(McError::Config("n_grid is empty".into()));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(McError::Config(format!("n_grid must be strictly ascending, got {:?}", self.n_grid)));
        }
        if self.n_grid[0] < p + 2 {
            return Err(McError::Config(format!("every n must be at least p + 2 = {}, got {}", p + 2, self.n_grid[0])));
        }
        if self.replications < MIN_REPLICATIONS {
            return Err(McError::TooFewSamples { need: MIN_REPLICATIONS, got: self.replications });
        }
        model::build_design(&self.design, self.n_grid[0])?;
        Ok(())
    }

    /// Validates and evaluates the assumption report, honouring the override.
    pub fn preflight(&self) -> Result<AssumptionReport, McError> {
        self.validate()?;
        let report = diagnostics::check_assumptions(self.theorem, &self.design, &self.errors)?;
        if !report.passes() && !self.override_assumptions {
            return Err(McError::AssumptionsNotMet(Box::new(report)));
        }
        Ok(report)
    }
}

/// Outcome of one replication.
#[derive(Debug, Clone, PartialEq)]
pub enum Replicate {
    Fit { beta_hat: Vector, lambda: f64, ols: Option<Vector> },
    NonGeneric,
    IllConditioned,
    OtherFailure(String),
}

/// Draws replication `rep` of cell `cell` at size `n` and fits TLS and OLS.
pub fn replicate(cfg: &ExperimentConfig, z: &Matrix, rep: u64, cell: u64) -> Result<Replicate, McError> {
    let n = z.rows();
    let seed = rng::derive_subseed(cfg.master_seed, rep, cell);
    let errs = process::generate_error_matrix(&cfg.errors, n, seed).map_err(ModelError::from)?;
    let inst = model::assemble(z.clone(), cfg.beta.clone(), cfg.errors.sigma2, &errs);
    let gram = inst.data().gram();
    Ok(match tls::tls_fit_gram(&gram, n) {
        Ok(fit) => Replicate::Fit { beta_hat: fit.beta_hat, lambda: fit.lambda, ols: tls::ols_fit_gram(&gram).ok() },
        Err(TlsError::NonGeneric { .. }) => Replicate::NonGeneric,
        Err(TlsError::IllConditioned(_)) => Replicate::IllConditioned,
        Err(e) => Replicate::OtherFailure(e.to_string()),
    })
}

fn run_cell(cfg: &ExperimentConfig, n: usize, cell: u64) -> Result<Vec<Replicate>, McError> {
    let z = model::build_design(&cfg.design, n)?.z;
    (0..cfg.replications as u64).into_par_iter().map(|r| replicate(cfg, &z, r, cell)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub n: usize,
    pub replications: usize,
    pub successes: usize,
    pub non_generic: usize,
    pub ill_conditioned: usize,
    pub other_failures: usize,
    /// Median of ‖β̂ − β‖∞ over successful replications.
    pub median_err_inf: f64,
    /// Interquartile range (type 7) of ‖β̂ − β‖∞.
    pub iqr_err_inf: f64,
    /// `√n · median_err_inf`.
    pub sqrt_n_median_err_inf: f64,
    /// Median of |λ/n − σ²|.
    pub median_sigma2_err: f64,
    /// Coordinate-wise medians of β̂.
    pub tls_median_beta: Vec<f64>,
    /// Coordinate-wise medians of the OLS estimate.
    pub ols_median_beta: Vec<f64>,
    /// Median of ‖β̂_OLS − β‖∞.
    pub ols_median_err_inf: f64,
}

impl CellSummary {
    pub fn failures(&self) -> usize {
        self.non_generic + self.ill_conditioned + self.other_failures
    }

    pub fn failure_fraction(&self) -> f64 {
        self.failures() as f64 / self.replications as f64
    }
}

fn summarize(cfg: &ExperimentConfig, n: usize, reps: &[Replicate]) -> Result<CellSummary, McError> {
    let p = cfg.p();
    let (mut errs, mut sig, mut ols_errs) = (Vec::new(), Vec::new(), Vec::new());
    let mut tls_coords = vec![Vec::new(); p];
    let mut ols_coords = vec![Vec::new(); p];
    let (mut non_generic, mut ill_conditioned, mut other_failures) = (0, 0, 0);
    for r in reps {
        match r {
            Replicate::Fit { beta_hat, lambda, ols } => {
                errs.push(max_abs_diff(beta_hat, &cfg.beta));
                sig.push((lambda / n as f64 - cfg.errors.sigma2).abs());
                for (c, b) in tls_coords.iter_mut().zip(beta_hat.iter()) {
                    c.push(*b);
                }
                if let Some(o) = ols {
                    ols_errs.push(max_abs_diff(o, &cfg.beta));
                    for (c, b) in ols_coords.iter_mut().zip(o.iter()) {
                        c.push(*b);
                    }
                }
            }
            Replicate::NonGeneric => non_generic += 1,
            Replicate::IllConditioned => ill_conditioned += 1,
            Replicate::OtherFailure(_) => other_failures += 1,
        }
    }
    if errs.is_empty() {
        return Err(McError::NoSuccesses(n));
    }
    let sorted_errs = stats::sorted(&errs);
    let median_err_inf = stats::quantile_sorted(&sorted_errs, 0.5);
    let med = |v: &Vec<f64>| if v.is_empty() { f64::NAN } else { stats::median(v) };
    Ok(CellSummary {
        n,
        replications: reps.len(),
        successes: errs.len(),
        non_generic,
        ill_conditioned,
        other_failures,
        median_err_inf,
        iqr_err_inf: stats::quantile_sorted(&sorted_errs, 0.75) - stats::quantile_sorted(&sorted_errs, 0.25),
        sqrt_n_median_err_inf: (n as f64).sqrt() * median_err_inf,
        median_sigma2_err: stats::median(&sig),
        tls_median_beta: tls_coords.iter().map(med).collect(),
        ols_median_beta: ols_coords.iter().map(med).collect(),
        ols_median_err_inf: med(&ols_errs),
    })
}

fn max_abs_diff(a: &Vector, b: &Vector) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalitySection {
    pub n: usize,
    pub report: NormalityReport,
    /// Largest `|mean_j| / (sd_j / √R)` over coordinates.
    pub max_abs_mean_z: f64,
    /// Centered mean within 4 standard errors of zero in every coordinate.
    pub mean_within_4se: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    pub master_seed: u64,
    pub version: String,
    pub assumptions: AssumptionReport,
    pub assumption_verdict: String,
    pub override_assumptions: bool,
    pub cells: Vec<CellSummary>,
    pub normality: Option<NormalitySection>,
    pub note: String,
    /// Rows of `√n(β̂ − β)` behind the normality section.
    #[serde(skip)]
    pub deviations: Option<Matrix>,
}

impl McReport {
    fn new(experiment: &str, cfg: &ExperimentConfig, assumptions: AssumptionReport) -> Self {
        McReport {
            experiment: experiment.into(),
            config: cfg.clone(),
            master_seed: cfg.master_seed,
            version: env!("CARGO_PKG_VERSION").into(),
            assumption_verdict: assumptions.verdict().into(),
            assumptions,
            override_assumptions: cfg.override_assumptions,
            cells: Vec::new(),
            normality: None,
            note: CONVERGENCE_NOTE.into(),
            deviations: None,
        }
    }
}

/// TLS and OLS over every `n` of the grid; cell `c` is the grid index.
pub fn run_consistency(cfg: &ExperimentConfig) -> Result<McReport, McError> {
    let assumptions = cfg.preflight()?;
    let mut report = McReport::new("consistency", cfg, assumptions);
    for (c, &n) in cfg.n_grid.iter().enumerate() {
        let reps = run_cell(cfg, n, c as u64)?;
        report.cells.push(summarize(cfg, n, &reps)?);
    }
    Ok(report)
}

/// Normality battery on `√n(β̂ − β)` at the largest `n` of the grid.
pub fn run_normality(cfg: &ExperimentConfig) -> Result<McReport, McError> {
    let assumptions = cfg.preflight()?;
    let p = cfg.p();
    if cfg.replications < 20 * p {
        return Err(StatsError::TooFewSamples { need: 20 * p, got: cfg.replications }.into());
    }
    let mut report = McReport::new("normality", cfg, assumptions);
    let c = cfg.n_grid.len() - 1;
    let n = cfg.n_grid[c];
    let reps = run_cell(cfg, n, c as u64)?;
    report.cells.push(summarize(cfg, n, &reps)?);
    let root_n = (n as f64).sqrt();
    let data: Vec<f64> = reps
        .iter()
        .filter_map(|r| match r {
            Replicate::Fit { beta_hat, .. } => Some(beta_hat),
            _ => None,
        })
        .flat_map(|b| b.iter().zip(cfg.beta.iter()).map(|(h, t)| root_n * (h - t)).collect::<Vec<_>>())
        .collect();
    let rows = data.len() / p;
    let deviations = Matrix::new(rows, p, data).map_err(|e| McError::Config(e.to_string()))?;
    let nr = stats::normality_report(&deviations)?;
    let se_scale = (rows as f64 / (rows as f64 - 1.0)).sqrt() / (rows as f64).sqrt();
    let max_abs_mean_z =
        (0..p).map(|j| nr.sample_mean[j].abs() / (nr.sample_cov[(j, j)].sqrt() * se_scale)).fold(0.0, f64::max);
    report.normality = Some(NormalitySection {
        n,
        report: nr,
        max_abs_mean_z,
        mean_within_4se: max_abs_mean_z <= 4.0,
        note: STUDENTIZATION_NOTE.into(),
    });
    report.deviations = Some(deviations);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LongRunRow {
    pub n: usize,
    /// `tᵀℶ̂t` with `ℶ̂ = n⁻¹ Var([X,Y]ᵀ[X,Y][β; −1])` across replications.
    pub t_long_run_t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongRunReport {
    pub config: ExperimentConfig,
    pub master_seed: u64,
    pub version: String,
    pub assumptions: AssumptionReport,
    pub assumption_verdict: String,
    pub t: Vector,
    pub rows: Vec<LongRunRow>,
}

/// Cross-replication covariance (divisor `R − 1`) of `[X,Y]ᵀ[X,Y][β; −1]`,
/// divided by `n` and contracted with `t`, for every `n` of the grid.
pub fn run_long_run_check(cfg: &ExperimentConfig, t: &Vector) -> Result<LongRunReport, McError> {
    let assumptions = cfg.preflight()?;
    let k = cfg.p() + 1;
    if t.len() != k {
        return Err(McError::Config(format!("t needs p + 1 = {k} entries, got {}", t.len())));
    }
    let b = model::augmented_beta(&cfg.beta);
    let mut rows = Vec::with_capacity(cfg.n_grid.len());
    for (c, &n) in cfg.n_grid.iter().enumerate() {
        let z = model::build_design(&cfg.design, n)?.z;
        // tᵀ M b per replication; its variance is tᵀ Var(Mb) t
        let draws: Vec<f64> = (0..cfg.replications as u64)
            .into_par_iter()
            .map(|r| {
                let seed = rng::derive_subseed(cfg.master_seed, r, c as u64);
                let errs = process::generate_error_matrix(&cfg.errors, n, seed).map_err(ModelError::from)?;
                let m = model::assemble(z.clone(), cfg.beta.clone(), cfg.errors.sigma2, &errs).data().gram();
                Ok(t.dot(&m.mul_vec(&b).expect("square Gram")))
            })
            .collect::<Result<_, McError>>()?;
        let rf = draws.len() as f64;
        let mean = draws.iter().sum::<f64>() / rf;
        let var = draws.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (rf - 1.0);
        rows.push(LongRunRow { n, t_long_run_t: var / n as f64 });
    }
    Ok(LongRunReport {
        config: cfg.clone(),
        master_seed: cfg.master_seed,
        version: env!("CARGO_PKG_VERSION").into(),
        assumption_verdict: assumptions.verdict().into(),
        assumptions,
        t: t.clone(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossProductCheck {
    pub n: usize,
    pub replications: usize,
    /// `[I,β]ᵀZᵀZ[I,β] + nσ²I`.
    pub expected: Matrix,
    /// Monte Carlo mean of `[X,Y]ᵀ[X,Y]`.
    pub mean: Matrix,
    /// Standard error of each entry of `mean`.
    pub std_error: Matrix,
    /// Largest `|mean − expected| / std_error` over entries.
    pub max_abs_z: f64,
}

/// Monte Carlo mean of `[X,Y]ᵀ[X,Y]` at size `n` against its closed form.
pub fn run_cross_product_check(
    cfg: &ExperimentConfig,
    n: usize,
    replications: usize,
) -> Result<CrossProductCheck, McError> {
    cfg.validate()?;
    if replications < 2 {
        return Err(McError::TooFewSamples { need: 2, got: replications });
    }
    let z = model::build_design(&cfg.design, n)?.z;
    let expected = model::expected_cross_product(&z, &cfg.beta, cfg.errors.sigma2)?;
    let grams: Vec<Matrix> = (0..replications as u64)
        .into_par_iter()
        .map(|r| {
            let seed = rng::derive_subseed(cfg.master_seed, r, 0);
            let errs = process::generate_error_matrix(&cfg.errors, n, seed).map_err(ModelError::from)?;
            Ok(model::assemble(z.clone(), cfg.beta.clone(), cfg.errors.sigma2, &errs).data().gram())
        })
        .collect::<Result<_, McError>>()?;
    let k = expected.rows();
    let rf = replications as f64;
    let mut mean = Matrix::zeros(k, k);
    let mut std_error = Matrix::zeros(k, k);
    let mut max_abs_z = 0.0_f64;
    for a in 0..k {
        for b in 0..k {
            let m = grams.iter().map(|g| g[(a, b)]).sum::<f64>() / rf;
            let v = grams.iter().map(|g| (g[(a, b)] - m).powi(2)).sum::<f64>() / (rf - 1.0);
            let se = (v / rf).sqrt();
            mean[(a, b)] = m;
            std_error[(a, b)] = se;
            max_abs_z = max_abs_z.max((m - expected[(a, b)]).abs() / se);
        }
    }
    Ok(CrossProductCheck { n, replications, expected, mean, std_error, max_abs_z })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(process: ErrorProcessSpec, sigma2: f64) -> ExperimentConfig {
        ExperimentConfig {
            errors: ErrorMatrixSpec::uniform(process, 2, sigma2),
            ..ExperimentConfig::phi_exemplar(vec![100, 400], 100, 17)
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::phi_exemplar(vec![400, 100], 200, 1);
        assert!(matches!(cfg.validate(), Err(McError::Config(_))));
        cfg.n_grid = vec![3, 100];
        assert!(matches!(cfg.validate(), Err(McError::Config(_))));
        cfg.n_grid = vec![100, 400];
        cfg.replications = 50;
        assert_eq!(cfg.validate(), Err(McError::TooFewSamples { need: 100, got: 50 }));
        cfg.replications = 100;
        assert!(cfg.validate().is_ok());
        cfg.beta = Vector::new(vec![1.0]).unwrap();
        assert!(matches!(cfg.validate(), Err(McError::Config(_))));
    }

    #[test]
    fn assumption_gate_and_override() {
        let mut cfg = ExperimentConfig::alpha_exemplar(vec![100], 100, 1);
        cfg.theorem = Theorem::AnPhi;
        assert!(matches!(run_consistency(&cfg), Err(McError::AssumptionsNotMet(_))));
        cfg.override_assumptions = true;
        let rep = run_consistency(&cfg).unwrap();
        assert_eq!(rep.assumption_verdict, "fail");
        assert!(rep.override_assumptions);
    }

    #[test]
    fn near_noiseless_limit() {
        // β̂ − β scales like σ / √(nΔ): ~5e-6 at n = 1000
        let cfg = ExperimentConfig { n_grid: vec![1000, 4000], ..small(ErrorProcessSpec::iid(1.0), 1e-8) };
        let rep = run_consistency(&cfg).unwrap();
        for c in &rep.cells {
            assert!(c.median_err_inf < 1e-5, "{c:?}");
            assert_eq!(c.successes + c.failures(), c.replications);
        }
    }

    #[test]
    fn ols_attenuates_tls_does_not() {
        let cfg = ExperimentConfig { n_grid: vec![2000], ..small(ErrorProcessSpec::iid(1.0), 1.0) };
        let c = &run_consistency(&cfg).unwrap().cells[0];
        // Δ = 3I, σ² = 1: OLS limit is 3/4 of β
        assert!((c.ols_median_beta[0] - 0.75).abs() < 0.05);
        assert!((c.ols_median_beta[1] + 1.5).abs() < 0.05);
        assert!((c.tls_median_beta[0] - 1.0).abs() < 0.05);
        assert!(c.median_err_inf < c.ols_median_err_inf);
    }

    #[test]
    fn reports_independent_of_thread_count() {
        let cfg = small(phi_path_process(), 1.0);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_consistency(&cfg).unwrap())
        };
        let (a, b) = (run(1), run(4));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn normality_needs_replications() {
        let mut cfg = ExperimentConfig::phi_exemplar(vec![200], 50, 3);
        assert!(matches!(run_normality(&cfg), Err(McError::TooFewSamples { .. })));
        cfg.replications = 200;
        let rep = run_normality(&cfg).unwrap();
        let sec = rep.normality.unwrap();
        assert_eq!(sec.report.dim, 2);
        assert_eq!(rep.deviations.unwrap().rows(), rep.cells[0].successes);
    }

    #[test]
    fn long_run_trivial_cases() {
        let cfg = small(phi_path_process(), 1.0);
        let zero = run_long_run_check(&cfg, &Vector::zeros(3)).unwrap();
        assert!(zero.rows.iter().all(|r| r.t_long_run_t == 0.0));
        let quiet = small(phi_path_process(), 1e-12);
        let t = Vector::new(vec![1.0, 1.0, 1.0]).unwrap();
        let rows = run_long_run_check(&quiet, &t).unwrap().rows;
        assert!(rows.iter().all(|r| r.t_long_run_t < 1e-8), "{rows:?}");
        assert!(matches!(run_long_run_check(&cfg, &Vector::zeros(2)), Err(McError::Config(_))));
    }

    #[test]
    fn cross_product_within_noise() {
        let cfg = small(alpha_path_process(), 1.0);
        let chk = run_cross_product_check(&cfg, 100, 2000).unwrap();
        assert!(chk.max_abs_z < 4.5, "{}", chk.max_abs_z);
    }
}
