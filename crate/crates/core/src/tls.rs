//! Total least squares fit.
//!
//! With `M = [X,Y]ᵀ[X,Y]`, λ is the (p+1)-st largest eigenvalue of `M` and
//! `v` its eigenvector. When `v_{p+1} ≠ 0`,
//! `β̂ = −v_{1..p} / v_{p+1} = (XᵀX − λI)⁻¹XᵀY`. Both routes are computed and
//! must agree. Only the `(p+1) × (p+1)` Gram matrix is decomposed, so the cost
//! in `n` is a single accumulation pass.

use crate::linalg::{self, LinalgError, Matrix, Vector, DEFAULT_EIG_TOL, DEFAULT_MAX_SWEEPS};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative threshold on `|v_{p+1}| / ‖v‖∞` below which the fit is non-generic.
pub const NONGENERIC_TOL: f64 = 1e-10;
/// Relative gap `(λ_p − λ_{p+1}) / ‖M‖_F` below which β̂ is not identifiable.
pub const EIGEN_GAP_TOL: f64 = 1e-10;
/// Agreement required between the eigenvector and closed-form estimates.
pub const CROSS_CHECK_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TlsError {
    #[error("non-generic data: last eigenvector entry {last:e} is numerically zero")]
    NonGeneric { last: f64 },
    #[error("ill-conditioned TLS problem: {0}")]
    IllConditioned(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("need n >= p + 1 = {need} observations, got {n}")]
    TooFewObservations { n: usize, need: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TlsFit {
    pub beta_hat: Vector,
    pub lambda: f64,
    /// λ / n.
    pub sigma2_hat: f64,
    /// Eigenvector for λ scaled so its last entry is −1, i.e. `[β̂; −1]`.
    pub v: Vector,
    /// `n⁻¹(XᵀX − λI)`.
    pub delta_n: Matrix,
    pub n: usize,
}

fn check_xy(x: &Matrix, y: &Vector) -> Result<(), TlsError> {
    if x.rows() != y.len() {
        return Err(TlsError::DimensionMismatch(format!("X has {} rows but Y has {} entries", x.rows(), y.len())));
    }
    Ok(())
}

pub fn tls_fit(x: &Matrix, y: &Vector) -> Result<TlsFit, TlsError> {
    check_xy(x, y)?;
    let gram = x.hstack_vec(y)?.gram();
    tls_fit_gram(&gram, x.rows())
}

/// TLS fit from a precomputed `[X,Y]ᵀ[X,Y]` over `n` rows.
pub fn tls_fit_gram(gram: &Matrix, n: usize) -> Result<TlsFit, TlsError> {
    if !gram.is_square() || gram.rows() < 2 {
        return Err(TlsError::DimensionMismatch(format!(
            "Gram matrix must be square of size p + 1 >= 2, got {}x{}",
            gram.rows(),
            gram.cols()
        )));
    }
    let p = gram.rows() - 1;
    if n < p + 1 {
        return Err(TlsError::TooFewObservations { n, need: p + 1 });
    }
    let eig = linalg::sym_eig(gram, DEFAULT_EIG_TOL, DEFAULT_MAX_SWEEPS)?;
    let norm = linalg::frobenius_norm(gram);
    let lambda_raw = eig.eigenvalues[p];
    let gap = eig.eigenvalues[p - 1] - lambda_raw;
    if gap < EIGEN_GAP_TOL * norm {
        return Err(TlsError::IllConditioned(format!("two smallest eigenvalues coincide (gap {gap:e})")));
    }
    // Gram matrices are PSD; clip round-off below zero.
    let lambda = lambda_raw.max(0.0);
    let v = eig.eigenvector(p);
    let last = v[p];
    if last.abs() <= NONGENERIC_TOL * v.norm_inf() {
        return Err(TlsError::NonGeneric { last });
    }
    let beta_eig: Vec<f64> = (0..p).map(|i| -v[i] / last).collect();

    let mut xtx = Matrix::zeros(p, p);
    let mut xty = Vec::with_capacity(p);
    for i in 0..p {
        for j in 0..p {
            xtx[(i, j)] = gram[(i, j)];
        }
        xty.push(gram[(i, p)]);
    }
    let mut shifted = xtx;
    for i in 0..p {
        shifted[(i, i)] -= lambda;
    }
    let beta_closed = linalg::solve_spd(&shifted, &Vector::from_vec_unchecked(xty)).map_err(|e| match e {
        LinalgError::NotPositiveDefinite { .. } => TlsError::IllConditioned("XᵀX − λI is not positive definite".into()),
        other => TlsError::Linalg(other),
    })?;
    let scale = 1.0 + beta_closed.norm_inf();
    let disagreement = (0..p).map(|i| (beta_closed[i] - beta_eig[i]).abs()).fold(0.0, f64::max);
    if disagreement > CROSS_CHECK_TOL * scale {
        return Err(TlsError::IllConditioned(format!(
            "eigenvector and closed-form estimates disagree by {disagreement:e}"
        )));
    }
    let mut aug = beta_closed.as_slice().to_vec();
    aug.push(-1.0);
    Ok(TlsFit {
        sigma2_hat: lambda / n as f64,
        delta_n: shifted.scale(1.0 / n as f64),
        v: Vector::from_vec_unchecked(aug),
        beta_hat: beta_closed,
        lambda,
        n,
    })
}

/// Ordinary least squares `(XᵀX)⁻¹XᵀY`.
pub fn ols_fit(x: &Matrix, y: &Vector) -> Result<Vector, TlsError> {
    check_xy(x, y)?;
    let gram = x.hstack_vec(y)?.gram();
    ols_fit_gram(&gram)
}

pub(crate) fn ols_fit_gram(gram: &Matrix) -> Result<Vector, TlsError> {
    let p = gram.rows() - 1;
    let mut xtx = Matrix::zeros(p, p);
    let mut xty = Vec::with_capacity(p);
    for i in 0..p {
        for j in 0..p {
            xtx[(i, j)] = gram[(i, j)];
        }
        xty.push(gram[(i, p)]);
    }
    Ok(linalg::solve_spd(&xtx, &Vector::from_vec_unchecked(xty))?)
}

/// Frobenius norm of the smallest correction `[Θ̂, ε̂]` after which the data
/// satisfy `Y = Xβ` exactly: `sqrt(Σ (y_i − x_iβ)² / (1 + ‖β‖²))`.
pub fn orthogonal_residual_norm(x: &Matrix, y: &Vector, beta: &Vector) -> Result<f64, TlsError> {
    check_xy(x, y)?;
    if beta.len() != x.cols() {
        return Err(TlsError::DimensionMismatch(format!("beta has {} entries for {} columns", beta.len(), x.cols())));
    }
    let fitted = x.mul_vec(beta)?;
    let ss: f64 = (0..y.len()).map(|i| (y[i] - fitted[i]).powi(2)).sum();
    Ok((ss / (1.0 + beta.dot(beta))).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matmul;
    use crate::rng;
    use approx::assert_relative_eq;
    use rand::RngExt;

    fn col(x: &[f64]) -> Matrix {
        Matrix::new(x.len(), 1, x.to_vec()).unwrap()
    }

    fn v(x: &[f64]) -> Vector {
        Vector::new(x.to_vec()).unwrap()
    }

    #[test]
    fn noiseless_line() {
        let f = tls_fit(&col(&[1.0, 2.0]), &v(&[1.0, 2.0])).unwrap();
        assert!(f.lambda.abs() < 1e-12);
        assert_relative_eq!(f.beta_hat[0], 1.0, max_relative = 1e-12);
        assert!(f.sigma2_hat.abs() < 1e-12);
    }

    #[test]
    fn hand_derived_fixture() {
        // M = [[5, 8], [8, 13]], λ = 9 − 4√5, β̂ = 8 / (5 − λ) = (1 + √5) / 2
        let gram = Matrix::from_rows(&[vec![5.0, 8.0], vec![8.0, 13.0]]).unwrap();
        let f = tls_fit_gram(&gram, 2).unwrap();
        assert_relative_eq!(f.lambda, 9.0 - 4.0 * 5f64.sqrt(), max_relative = 1e-9);
        assert_relative_eq!(f.beta_hat[0], (1.0 + 5f64.sqrt()) / 2.0, max_relative = 1e-9);
        assert_eq!(f.v[1], -1.0);
        let ols = ols_fit_gram(&gram).unwrap();
        assert_relative_eq!(ols[0], 1.6, max_relative = 1e-14);
    }

    #[test]
    fn non_generic_direction() {
        // M = diag(0, 2): the eigenvector of the smaller eigenvalue is (1, 0)
        let gram = Matrix::from_rows(&[vec![0.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert!(matches!(tls_fit_gram(&gram, 3), Err(TlsError::NonGeneric { .. })));
        let x = col(&[0.0, 0.0, 0.0]);
        let y = v(&[1.0, -1.0, 0.0]);
        assert!(matches!(tls_fit(&x, &y), Err(TlsError::NonGeneric { .. })));
    }

    #[test]
    fn repeated_smallest_eigenvalue_is_ill_conditioned() {
        let gram = Matrix::from_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(tls_fit_gram(&gram, 10), Err(TlsError::IllConditioned(_))));
    }

    #[test]
    fn too_few_rows() {
        let x = Matrix::new(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(tls_fit(&x, &v(&[1.0, 2.0])), Err(TlsError::TooFewObservations { n: 2, need: 3 }));
    }

    #[test]
    fn dimension_errors() {
        assert!(matches!(tls_fit(&col(&[1.0, 2.0, 3.0]), &v(&[1.0, 2.0])), Err(TlsError::DimensionMismatch(_))));
        assert!(matches!(
            orthogonal_residual_norm(&col(&[1.0, 2.0]), &v(&[1.0, 2.0]), &v(&[1.0, 1.0])),
            Err(TlsError::DimensionMismatch(_))
        ));
        let singular = Matrix::new(3, 2, vec![1.0, 2.0, 2.0, 4.0, 3.0, 6.0]).unwrap();
        assert!(matches!(
            ols_fit(&singular, &v(&[1.0, 2.0, 3.0])),
            Err(TlsError::Linalg(LinalgError::NotPositiveDefinite { .. }))
        ));
    }

    #[test]
    fn ols_noiseless() {
        let x = Matrix::new(4, 2, vec![1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0, -1.0]).unwrap();
        let beta = v(&[0.5, -1.5]);
        let y = x.mul_vec(&beta).unwrap();
        let b = ols_fit(&x, &y).unwrap();
        assert!((b[0] - 0.5).abs() < 1e-10 && (b[1] + 1.5).abs() < 1e-10);
        let t = tls_fit(&x, &y).unwrap();
        assert!((t.beta_hat[0] - 0.5).abs() < 1e-10 && (t.beta_hat[1] + 1.5).abs() < 1e-10);
        assert_eq!(orthogonal_residual_norm(&x, &y, &beta).unwrap(), 0.0);
    }

    #[test]
    fn orthogonal_residual_at_fixture() {
        let x = col(&[1.0, 2.0]);
        let y = v(&[2.0, 3.0]);
        let f = tls_fit(&x, &y).unwrap();
        let r = orthogonal_residual_norm(&x, &y, &f.beta_hat).unwrap();
        assert_relative_eq!(r, (9.0 - 4.0 * 5f64.sqrt()).sqrt(), max_relative = 1e-7);
    }

    fn random_problem(seed: u64, p: usize, n: usize) -> (Matrix, Vector) {
        let mut r = rng::stream(seed);
        let x = Matrix::new(n, p, (0..n * p).map(|_| r.random_range(-2.0..2.0)).collect()).unwrap();
        let beta: Vec<f64> = (0..p).map(|_| r.random_range(-2.0..2.0)).collect();
        let y = (0..n).map(|i| linalg::dot(x.row(i), &beta) + r.random_range(-0.5..0.5)).collect();
        (x, Vector::new(y).unwrap())
    }

    #[test]
    fn orthogonal_distance_minimal_on_grid() {
        for seed in 0..10 {
            let (x, y) = random_problem(seed, 1, 30);
            let f = tls_fit(&x, &y).unwrap();
            let best = f.lambda.sqrt();
            for k in -400..=400 {
                let b = f.beta_hat[0] + k as f64 * 0.01;
                let r = orthogonal_residual_norm(&x, &y, &v(&[b])).unwrap();
                assert!(r >= best * (1.0 - 1e-9), "beta {b}: {r} < {best}");
            }
        }
    }

    #[test]
    fn identities_and_scale_equivariance() {
        for seed in 0..40 {
            let p = 1 + (seed as usize % 3);
            let (x, y) = random_problem(seed, p, 25);
            let f = tls_fit(&x, &y).unwrap();
            let xtx = matmul(&x.transpose(), &x).unwrap();
            let xty = x.transpose().mul_vec(&y).unwrap();
            let lhs = xty.clone();
            let mut shifted = xtx.clone();
            for i in 0..p {
                shifted[(i, i)] -= f.lambda;
            }
            let rhs = shifted.mul_vec(&f.beta_hat).unwrap();
            for i in 0..p {
                assert!((lhs[i] - rhs[i]).abs() <= 1e-7 * (1.0 + lhs.norm_inf()));
            }
            let yty = y.dot(&y);
            assert!((yty - (xty.dot(&f.beta_hat) + f.lambda)).abs() <= 1e-7 * (1.0 + yty));

            let c = 3.7;
            let g = tls_fit(&x.scale(c), &Vector::new(y.iter().map(|v| v * c).collect()).unwrap()).unwrap();
            for i in 0..p {
                assert!((g.beta_hat[i] - f.beta_hat[i]).abs() <= 1e-9 * (1.0 + f.beta_hat.norm_inf()));
            }
            assert!((g.lambda - c * c * f.lambda).abs() <= 1e-9 * (1.0 + c * c * f.lambda));
        }
    }
}
