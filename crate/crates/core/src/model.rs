//! Errors-in-variables data synthesis.
//!
//! `Y = Zβ + ε`, `X = Z + Θ` with a deterministic design `Z` whose normalized
//! Gram matrix `n⁻¹ZᵀZ` has a positive definite limit Δ.

use crate::linalg::{self, LinalgError, Matrix, Vector};
use crate::process::{self, ErrorMatrixSpec, ProcessError};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("design block has rank below p = {p}")]
    RankDeficientDesign { p: usize },
    #[error("invalid design: {0}")]
    InvalidDesign(String),
    #[error("need n >= p + 2 = {need}, got n = {n}")]
    TooFewRows { n: usize, need: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Process(#[from] ProcessError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DesignSpec {
    /// `Z[i][j] = √2 cos(2π f_j i)` for `i = 1..n`. With distinct
    /// frequencies in (0, ½) the limit Δ is the identity.
    SinusoidalBounded { frequencies: Vec<f64> },
    /// A fixed `k × p` block tiled vertically; Δ = k⁻¹ blockᵀblock.
    RepeatingBlock { block: Vec<Vec<f64>> },
}

/// A design matrix together with its limit Δ.
#[derive(Debug, Clone, PartialEq)]
pub struct Design {
    pub z: Matrix,
    pub delta: Matrix,
    /// `n⁻¹ZᵀZ = Δ` holds exactly for this `n`.
    pub delta_exact: bool,
    /// Bound on `|Z[i][j]|` valid for every `n`.
    pub entry_bound: f64,
}

impl DesignSpec {
    pub fn p(&self) -> usize {
        match self {
            DesignSpec::SinusoidalBounded { frequencies } => frequencies.len(),
            DesignSpec::RepeatingBlock { block } => block.first().map_or(0, Vec::len),
        }
    }

    fn block_matrix(block: &[Vec<f64>]) -> Result<Matrix, ModelError> {
        Matrix::from_rows(block).map_err(|e| ModelError::InvalidDesign(e.to_string()))
    }

    /// The limit Δ of `n⁻¹ZᵀZ`, validating the design on the way.
    pub fn delta(&self) -> Result<Matrix, ModelError> {
        match self {
            DesignSpec::SinusoidalBounded { frequencies } => {
                if frequencies.is_empty() {
                    return Err(ModelError::InvalidDesign("no frequencies".into()));
                }
                for (i, &f) in frequencies.iter().enumerate() {
                    if !(f > 0.0 && f < 0.5) {
                        return Err(ModelError::InvalidDesign(format!("frequency {f} outside (0, 1/2)")));
                    }
                    if frequencies[..i].contains(&f) {
                        return Err(ModelError::RankDeficientDesign { p: frequencies.len() });
                    }
                }
                Ok(Matrix::identity(frequencies.len()))
            }
            DesignSpec::RepeatingBlock { block } => {
                let b = Self::block_matrix(block)?;
                let delta = b.gram().scale(1.0 / b.rows() as f64);
                if linalg::cholesky(&delta).is_err() {
                    return Err(ModelError::RankDeficientDesign { p: b.cols() });
                }
                Ok(delta)
            }
        }
    }

    pub fn entry_bound(&self) -> f64 {
        match self {
            DesignSpec::SinusoidalBounded { .. } => 2f64.sqrt(),
            DesignSpec::RepeatingBlock { block } => block.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs())),
        }
    }
}

/// Builds the `n × p` design.
pub fn build_design(spec: &DesignSpec, n: usize) -> Result<Design, ModelError> {
    let delta = spec.delta()?;
    let p = spec.p();
    if n < p + 2 {
        return Err(ModelError::TooFewRows { n, need: p + 2 });
    }
    let (z, delta_exact) = match spec {
        DesignSpec::SinusoidalBounded { frequencies } => {
            let mut data = Vec::with_capacity(n * p);
            for i in 1..=n {
                data.extend(frequencies.iter().map(|f| 2f64.sqrt() * (2.0 * PI * f * i as f64).cos()));
            }
            (Matrix::from_vec_unchecked(n, p, data), false)
        }
        DesignSpec::RepeatingBlock { block } => {
            let k = block.len();
            let mut data = Vec::with_capacity(n * p);
            for i in 0..n {
                data.extend_from_slice(&block[i % k]);
            }
            (Matrix::from_vec_unchecked(n, p, data), n.is_multiple_of(k))
        }
    };
    if linalg::cholesky(&z.gram()).is_err() {
        return Err(ModelError::RankDeficientDesign { p });
    }
    Ok(Design { z, delta, delta_exact, entry_bound: spec.entry_bound() })
}

/// One synthesized dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct EivInstance {
    pub z: Matrix,
    pub beta: Vector,
    pub sigma2: f64,
    pub theta: Matrix,
    pub eps: Vector,
    pub x: Matrix,
    pub y: Vector,
}

impl EivInstance {
    pub fn n(&self) -> usize {
        self.z.rows()
    }

    pub fn p(&self) -> usize {
        self.z.cols()
    }

    /// `[X, Y]`.
    pub fn data(&self) -> Matrix {
        self.x.hstack_vec(&self.y).expect("x and y share n")
    }

    /// Row `i` of `[Θ, ε]`.
    pub fn error_row(&self, i: usize) -> Vec<f64> {
        let mut r = self.theta.row(i).to_vec();
        r.push(self.eps[i]);
        r
    }
}

pub fn synthesize(
    design: &DesignSpec,
    beta: &Vector,
    errors: &ErrorMatrixSpec,
    n: usize,
    seed: u64,
) -> Result<EivInstance, ModelError> {
    let p = design.p();
    if beta.len() != p || errors.p() != p {
        return Err(ModelError::DimensionMismatch(format!(
            "design has p = {p}, beta has {} entries, error spec has {} columns",
            beta.len(),
            errors.columns.len()
        )));
    }
    let Design { z, .. } = build_design(design, n)?;
    let e = process::generate_error_matrix(errors, n, seed)?;
    Ok(assemble(z, beta.clone(), errors.sigma2, &e))
}

/// Forms `X = Z + Θ` and `Y = Zβ + ε` from a drawn `n × (p+1)` error matrix.
pub fn assemble(z: Matrix, beta: Vector, sigma2: f64, errors: &Matrix) -> EivInstance {
    let (n, p) = (z.rows(), z.cols());
    let mut theta = Vec::with_capacity(n * p);
    let mut eps = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n * p);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        let zr = z.row(i);
        let er = errors.row(i);
        theta.extend_from_slice(&er[..p]);
        x.extend(zr.iter().zip(&er[..p]).map(|(a, b)| a + b));
        eps.push(er[p]);
        y.push(linalg::dot(zr, beta.as_slice()) + er[p]);
    }
    EivInstance {
        theta: Matrix::from_vec_unchecked(n, p, theta),
        eps: Vector::from_vec_unchecked(eps),
        x: Matrix::from_vec_unchecked(n, p, x),
        y: Vector::from_vec_unchecked(y),
        z,
        beta,
        sigma2,
    }
}

/// `[β; −1]`.
pub fn augmented_beta(beta: &Vector) -> Vector {
    let mut b = beta.as_slice().to_vec();
    b.push(-1.0);
    Vector::from_vec_unchecked(b)
}

/// `[Z, Zβ]`, i.e. `Z[I, β]`.
fn signal_matrix(z: &Matrix, beta: &Vector) -> Result<Matrix, ModelError> {
    let zb = z.mul_vec(beta)?;
    Ok(z.hstack_vec(&zb)?)
}

/// `E [X,Y]ᵀ[X,Y] = [I,β]ᵀZᵀZ[I,β] + nσ²I`.
pub fn expected_cross_product(z: &Matrix, beta: &Vector, sigma2: f64) -> Result<Matrix, ModelError> {
    let w = signal_matrix(z, beta)?;
    let n = z.rows() as f64;
    let mut m = w.gram();
    for i in 0..m.rows() {
        m[(i, i)] += n * sigma2;
    }
    Ok(m)
}

/// Per-row scores
/// `ρ_i = tᵀ([Z, Zβ]_iᵀ[Θ, ε]_i + [Θ, ε]_iᵀ[Θ, ε]_i − σ²I)[β; −1]`.
///
/// Their sum is `tᵀ([X,Y]ᵀ[X,Y] − E[X,Y]ᵀ[X,Y])[β; −1]`.
pub fn score_sequence(inst: &EivInstance, t: &Vector) -> Result<Vector, ModelError> {
    let p = inst.p();
    if t.len() != p + 1 {
        return Err(ModelError::DimensionMismatch(format!("t needs {} entries, got {}", p + 1, t.len())));
    }
    let b = augmented_beta(&inst.beta);
    let tb = t.dot(&b);
    let rho = (0..inst.n())
        .map(|i| {
            let zr = inst.z.row(i);
            let e = inst.error_row(i);
            let eb = linalg::dot(&e, b.as_slice());
            // tᵀ[Z_i, Z_iβ]ᵀ = Z_i·t_{1..p} + (Z_i·β) t_{p+1}
            let tw = linalg::dot(zr, &t.as_slice()[..p]) + linalg::dot(zr, inst.beta.as_slice()) * t[p];
            let te = linalg::dot(&e, t.as_slice());
            (tw + te) * eb - inst.sigma2 * tb
        })
        .collect();
    Ok(Vector::from_vec_unchecked(rho))
}
