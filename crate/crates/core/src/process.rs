//! Weakly dependent error generators.
//!
//! Three Gaussian-driven exemplars:
//!
//! - `IidGaussian`: independent, so α(n) = φ(n) = 0 for every n ≥ 1.
//! - `MaQ`: `x_t = scale · Σ_j c_j η_{t−j} / ‖c‖₂`. It is q-dependent, hence
//!   φ-mixing with φ(n) = 0 (and α(n) = 0) for n > q.
//! - `Ar1`: stationary Gaussian AR(1), started from its marginal
//!   N(0, scale²). Geometric α-mixing; the declared rate exponent `delta` is a
//!   polynomial envelope `n^(−1−δ)` used only by the assumption checker.
//!
//! All moments of these processes are finite, so any moment surplus ω holds.

use crate::linalg::Matrix;
use crate::rng;
use rand::RngExt;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProcessError {
    #[error("invalid process parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProcessKind {
    IidGaussian,
    /// Moving average of order `coeffs.len() - 1`.
    MaQ {
        coeffs: Vec<f64>,
    },
    Ar1 {
        a: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixingClass {
    Alpha,
    Phi,
    Independent,
}

/// Declarative description of one error column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorProcessSpec {
    #[serde(flatten)]
    pub kind: ProcessKind,
    /// Marginal standard deviation.
    #[serde(default = "one")]
    pub scale: f64,
    /// Declared α rate exponent: α(n) = O(n^(−1−δ)).
    #[serde(default)]
    pub delta: Option<f64>,
    /// Declared moment surplus: sup E|ξ|^(4+ω) < ∞.
    #[serde(default)]
    pub omega: Option<f64>,
    /// Declared moment order q ∈ (1, 2] for the α-mixing consistency rate.
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default = "yes")]
    pub stationary: bool,
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

/// Value of the declared mixing-rate envelope at a lag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixingBound {
    Value(f64),
    /// Lag inside the dependence range of a finite-range process; the
    /// coefficient is not bounded by the declaration there.
    UnboundedBelowRange,
}

impl ErrorProcessSpec {
    pub fn iid(scale: f64) -> Self {
        Self::with_kind(ProcessKind::IidGaussian, scale)
    }

    pub fn ma(coeffs: Vec<f64>, scale: f64) -> Self {
        Self::with_kind(ProcessKind::MaQ { coeffs }, scale)
    }

    pub fn ar1(a: f64, scale: f64, delta: f64) -> Self {
        ErrorProcessSpec { delta: Some(delta), ..Self::with_kind(ProcessKind::Ar1 { a }, scale) }
    }

    fn with_kind(kind: ProcessKind, scale: f64) -> Self {
        ErrorProcessSpec { kind, scale, delta: None, omega: None, q: None, stationary: true }
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = Some(omega);
        self
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn mixing_class(&self) -> MixingClass {
        match self.kind {
            ProcessKind::IidGaussian => MixingClass::Independent,
            ProcessKind::MaQ { .. } => MixingClass::Phi,
            ProcessKind::Ar1 { .. } => MixingClass::Alpha,
        }
    }

    /// Dependence range `q` of a finite-range process (0 for independence).
    pub fn finite_range(&self) -> Option<usize> {
        match &self.kind {
            ProcessKind::IidGaussian => Some(0),
            ProcessKind::MaQ { coeffs } => Some(coeffs.len().saturating_sub(1)),
            ProcessKind::Ar1 { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<(), ProcessError> {
        if !self.scale.is_finite() || self.scale <= 0.0 {
            return Err(ProcessError::InvalidParams(format!("scale must be positive, got {}", self.scale)));
        }
        match &self.kind {
            ProcessKind::IidGaussian => {}
            ProcessKind::MaQ { coeffs } => {
                if coeffs.len() < 2 {
                    return Err(ProcessError::InvalidParams(
                        "moving average needs order q >= 1 (at least two coefficients)".into(),
                    ));
                }
                if coeffs.iter().any(|c| !c.is_finite()) || coeffs.iter().all(|&c| c == 0.0) {
                    return Err(ProcessError::InvalidParams(
                        "moving-average coefficients must be finite and not all zero".into(),
                    ));
                }
            }
            ProcessKind::Ar1 { a } => {
                if a.is_nan() || a.abs() >= 1.0 {
                    return Err(ProcessError::InvalidParams(format!("AR(1) needs |a| < 1, got {a}")));
                }
            }
        }
        for (name, v) in [("delta", self.delta), ("omega", self.omega)] {
            if let Some(v) = v {
                if v.is_nan() || v <= 0.0 {
                    return Err(ProcessError::InvalidParams(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if let Some(q) = self.q {
            if !(q > 1.0 && q <= 2.0) {
                return Err(ProcessError::InvalidParams(format!("q must lie in (1, 2], got {q}")));
            }
        }
        if !self.stationary {
            return Err(ProcessError::InvalidParams("only stationary generators are available".into()));
        }
        Ok(())
    }
}

/// Draws `n` values of the process. Deterministic in `(spec, n, seed)`.
pub fn generate_sequence(spec: &ErrorProcessSpec, n: usize, seed: u64) -> Result<Vec<f64>, ProcessError> {
    spec.validate()?;
    if n == 0 {
        return Err(ProcessError::InvalidParams("sequence length must be at least 1".into()));
    }
    let mut rng = rng::stream(seed);
    let mut normal = move || -> f64 { rng.sample(StandardNormal) };
    let scale = spec.scale;
    let out = match &spec.kind {
        ProcessKind::IidGaussian => (0..n).map(|_| scale * normal()).collect(),
        ProcessKind::MaQ { coeffs } => {
            let q = coeffs.len() - 1;
            let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
            let w: Vec<f64> = coeffs.iter().map(|c| scale * c / norm).collect();
            // eta[k] holds η_{k−q}
            let eta: Vec<f64> = (0..n + q).map(|_| normal()).collect();
            (0..n).map(|t| w.iter().enumerate().map(|(j, wj)| wj * eta[t + q - j]).sum()).collect()
        }
        ProcessKind::Ar1 { a } => {
            let innov = scale * (1.0 - a * a).sqrt();
            let mut x = scale * normal();
            let mut out = Vec::with_capacity(n);
            out.push(x);
            for _ in 1..n {
                x = a * x + innov * normal();
                out.push(x);
            }
            out
        }
    };
    Ok(out)
}

/// Declarative spec of the error matrix `[Θ, ε]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorMatrixSpec {
    /// `p + 1` columns; the last one is ε.
    pub columns: Vec<ErrorProcessSpec>,
    /// Common marginal variance σ² of every column.
    pub sigma2: f64,
}

impl ErrorMatrixSpec {
    pub fn new(columns: Vec<ErrorProcessSpec>, sigma2: f64) -> Self {
        ErrorMatrixSpec { columns, sigma2 }
    }

    /// Same process for all `p + 1` columns.
    pub fn uniform(process: ErrorProcessSpec, p: usize, sigma2: f64) -> Self {
        ErrorMatrixSpec { columns: vec![process; p + 1], sigma2 }
    }

    /// Number of regressors `p`.
    pub fn p(&self) -> usize {
        self.columns.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<(), ProcessError> {
        if !self.sigma2.is_finite() || self.sigma2 <= 0.0 {
            return Err(ProcessError::InvalidParams(format!("sigma2 must be positive, got {}", self.sigma2)));
        }
        if self.columns.len() < 2 {
            return Err(ProcessError::InvalidParams("error matrix needs p + 1 >= 2 columns".into()));
        }
        for c in &self.columns {
            c.validate()?;
        }
        Ok(())
    }

    /// Column specs with `scale` set to `sqrt(sigma2)`.
    pub fn resolved_columns(&self) -> Vec<ErrorProcessSpec> {
        let sd = self.sigma2.sqrt();
        self.columns.iter().map(|c| c.clone().with_scale(sd)).collect()
    }
}

/// Draws the `n × (p+1)` error matrix. Column `j` (0-based) comes from an
/// independent stream seeded with [`rng::column_seed`]`(seed, j)` and every
/// column has marginal variance `sigma2`.
pub fn generate_error_matrix(spec: &ErrorMatrixSpec, n: usize, seed: u64) -> Result<Matrix, ProcessError> {
    spec.validate()?;
    let cols: Vec<Vec<f64>> = spec
        .resolved_columns()
        .iter()
        .enumerate()
        .map(|(j, c)| generate_sequence(c, n, rng::column_seed(seed, j as u64)))
        .collect::<Result<_, _>>()?;
    let k = cols.len();
    let mut data = Vec::with_capacity(n * k);
    for i in 0..n {
        data.extend(cols.iter().map(|c| c[i]));
    }
    Ok(Matrix::from_vec_unchecked(n, k, data))
}

/// Declared envelope of the dependence coefficient at lag `n`.
pub fn theoretical_mixing_bound(spec: &ErrorProcessSpec, n: usize) -> MixingBound {
    match (&spec.kind, spec.finite_range()) {
        (ProcessKind::IidGaussian, _) => MixingBound::Value(0.0),
        (_, Some(q)) if n > q => MixingBound::Value(0.0),
        (_, Some(_)) => MixingBound::UnboundedBelowRange,
        (_, None) => {
            let delta = spec.delta.unwrap_or(0.0);
            MixingBound::Value((n as f64).powf(-1.0 - delta))
        }
    }
}
