//! Distributional checks: Mardia's multivariate normality tests, the
//! one-sample Kolmogorov–Smirnov test, a Monte Carlo CLT check for generated
//! sequences and a Bartlett-kernel long-run covariance estimator.

use crate::linalg::{self, LinalgError, Matrix, Vector};
use crate::process::{self, ErrorProcessSpec, ProcessError};
use crate::rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("sample covariance is singular")]
    SingularCovariance,
    #[error("too few samples: need at least {need}, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("empty sample")]
    EmptySample,
    #[error("variance of the normalized sum is not positive ({0:e})")]
    DegenerateVariance(f64),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error(transparent)]
    Process(#[from] ProcessError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub fn standard_normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// Type-7 sample quantile of ascending `sorted`: linear interpolation
/// between order statistics at position `(m − 1)·prob`.
pub fn quantile_sorted(sorted: &[f64], prob: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let h = (sorted.len() - 1) as f64 * prob.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Sorted copy of a sample.
pub fn sorted(sample: &[f64]) -> Vec<f64> {
    let mut v = sample.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

pub fn median(sample: &[f64]) -> f64 {
    quantile_sorted(&sorted(sample), 0.5)
}

/// Mean (divisor `n`) and covariance (divisor `n`) of the rows.
pub fn mean_and_covariance(samples: &Matrix) -> (Vector, Matrix) {
    let (r, d) = (samples.rows(), samples.cols());
    let mut mean = vec![0.0; d];
    for i in 0..r {
        for (m, v) in mean.iter_mut().zip(samples.row(i)) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= r as f64);
    let mut cov = Matrix::zeros(d, d);
    for i in 0..r {
        let row = samples.row(i);
        for a in 0..d {
            let da = row[a] - mean[a];
            for b in a..d {
                cov[(a, b)] += da * (row[b] - mean[b]);
            }
        }
    }
    for a in 0..d {
        for b in a..d {
            let v = cov[(a, b)] / r as f64;
            cov[(a, b)] = v;
            cov[(b, a)] = v;
        }
    }
    (Vector::from_vec_unchecked(mean), cov)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MardiaResult {
    /// Mardia's multivariate skewness b₁,d.
    pub b1: f64,
    /// Mardia's multivariate kurtosis b₂,d.
    pub b2: f64,
    /// `R b₁ / 6`, referred to χ² with `d(d+1)(d+2)/6` degrees of freedom.
    pub skewness_stat: f64,
    pub skewness_pvalue: f64,
    /// `(b₂ − d(d+2)) / sqrt(8d(d+2)/R)`, referred to N(0, 1), two-sided.
    pub kurtosis_stat: f64,
    pub kurtosis_pvalue: f64,
}

/// Rows whitened by the biased sample covariance: `u_i = L⁻¹(x_i − x̄)`.
fn whitened(samples: &Matrix) -> Result<Vec<Vec<f64>>, StatsError> {
    let (mean, cov) = mean_and_covariance(samples);
    let l = linalg::cholesky(&cov).map_err(|_| StatsError::SingularCovariance)?;
    Ok((0..samples.rows())
        .map(|i| {
            let centered: Vec<f64> = samples.row(i).iter().zip(mean.iter()).map(|(x, m)| x - m).collect();
            linalg::forward_substitute(&l, &centered)
        })
        .collect())
}

/// Mardia's skewness and kurtosis tests on the rows of `samples` (R × d).
///
/// `b₁ = R⁻² Σ_{i,j} (u_i·u_j)³` is evaluated through the third-moment tensor
/// `T_abc = Σ_i u_ia u_ib u_ic`, using `Σ_{i,j} (u_i·u_j)³ = Σ_abc T_abc²`.
pub fn mardia_tests(samples: &Matrix) -> Result<MardiaResult, StatsError> {
    let (r, d) = (samples.rows(), samples.cols());
    if r < 20 * d {
        return Err(StatsError::TooFewSamples { need: 20 * d, got: r });
    }
    let u = whitened(samples)?;
    let mut tensor = vec![0.0; d * d * d];
    let mut kurt = 0.0;
    for ui in &u {
        for a in 0..d {
            for b in 0..d {
                let ab = ui[a] * ui[b];
                for c in 0..d {
                    tensor[(a * d + b) * d + c] += ab * ui[c];
                }
            }
        }
        let sq: f64 = ui.iter().map(|v| v * v).sum();
        kurt += sq * sq;
    }
    let rf = r as f64;
    let df = d as f64;
    let b1 = tensor.iter().map(|t| t * t).sum::<f64>() / (rf * rf);
    let b2 = kurt / rf;
    let skewness_stat = rf * b1 / 6.0;
    let chi = ChiSquared::new(df * (df + 1.0) * (df + 2.0) / 6.0).expect("positive degrees of freedom");
    let skewness_pvalue = chi.sf(skewness_stat).clamp(0.0, 1.0);
    let kurtosis_stat = (b2 - df * (df + 2.0)) / (8.0 * df * (df + 2.0) / rf).sqrt();
    let kurtosis_pvalue = (2.0 * Normal::standard().sf(kurtosis_stat.abs())).clamp(0.0, 1.0);
    Ok(MardiaResult { b1, b2, skewness_stat, skewness_pvalue, kurtosis_stat, kurtosis_pvalue })
}

/// Kolmogorov distribution survival function `P(K > x)`.
///
/// Asymptotic law of `√n·D`; two series are used so both tails converge fast.
pub fn kolmogorov_sf(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.18 {
        // P(K ≤ x) = √(2π)/x Σ_{k≥1} exp(−(2k−1)²π²/(8x²))
        let w = std::f64::consts::PI * std::f64::consts::PI / (8.0 * x * x);
        let cdf: f64 = (1..=20)
            .map(|k| {
                let m = (2 * k - 1) as f64;
                (-m * m * w).exp()
            })
            .sum::<f64>()
            * (2.0 * std::f64::consts::PI).sqrt()
            / x;
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let s: f64 = (1..=100)
            .map(|k| {
                let kf = k as f64;
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * kf * kf * x * x).exp()
            })
            .sum();
        (2.0 * s).clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub d: f64,
    /// Asymptotic p-value `kolmogorov_sf(√n D)`; reliable for n ≥ 35.
    pub p_value: f64,
}

/// Exact one-sample Kolmogorov–Smirnov statistic against `cdf`.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult, StatsError> {
    if sample.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(KsResult { d, p_value: kolmogorov_sf(n.sqrt() * d) })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionKs {
    pub direction: String,
    pub d: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub n_samples: usize,
    pub dim: usize,
    pub mardia_skewness_stat: f64,
    pub mardia_skewness_pvalue: f64,
    pub mardia_kurtosis_stat: f64,
    pub mardia_kurtosis_pvalue: f64,
    /// KS of the studentized projection on each coordinate axis and on the
    /// normalized all-ones direction, against N(0, 1).
    pub ks_projection_stats: Vec<ProjectionKs>,
    pub sample_mean: Vector,
    pub sample_cov: Matrix,
}

impl NormalityReport {
    pub fn min_pvalue(&self) -> f64 {
        self.ks_projection_stats
            .iter()
            .map(|k| k.p_value)
            .fold(self.mardia_skewness_pvalue.min(self.mardia_kurtosis_pvalue), f64::min)
    }

    /// Every test keeps its null at `level`.
    pub fn passes(&self, level: f64) -> bool {
        self.min_pvalue() > level
    }
}

/// Mardia tests plus per-direction KS tests with mean and variance taken from
/// the sample.
pub fn normality_report(samples: &Matrix) -> Result<NormalityReport, StatsError> {
    let mardia = mardia_tests(samples)?;
    let (mean, cov) = mean_and_covariance(samples);
    let d = samples.cols();
    let mut directions: Vec<(String, Vec<f64>)> = (0..d)
        .map(|j| {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            (format!("axis-{}", j + 1), e)
        })
        .collect();
    if d > 1 {
        directions.push(("ones".into(), vec![1.0 / (d as f64).sqrt(); d]));
    }
    let ks_projection_stats = directions
        .into_iter()
        .map(|(label, u)| {
            let proj: Vec<f64> = (0..samples.rows()).map(|i| linalg::dot(samples.row(i), &u)).collect();
            let m = linalg::dot(mean.as_slice(), &u);
            let var = linalg::dot(&u, cov.mul_vec(&Vector::from_vec_unchecked(u.clone()))?.as_slice());
            let sd = var.sqrt();
            let z: Vec<f64> = proj.iter().map(|p| (p - m) / sd).collect();
            let ks = ks_statistic(&z, standard_normal_cdf)?;
            Ok(ProjectionKs { direction: label, d: ks.d, p_value: ks.p_value })
        })
        .collect::<Result<Vec<_>, StatsError>>()?;
    Ok(NormalityReport {
        n_samples: samples.rows(),
        dim: d,
        mardia_skewness_stat: mardia.skewness_stat,
        mardia_skewness_pvalue: mardia.skewness_pvalue,
        mardia_kurtosis_stat: mardia.kurtosis_stat,
        mardia_kurtosis_pvalue: mardia.kurtosis_pvalue,
        ks_projection_stats,
        sample_mean: mean,
        sample_cov: cov,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltCheckReport {
    pub n: usize,
    pub replications: usize,
    /// `S_n / ς̂_n` per replication.
    pub s_over_sigma: Vec<f64>,
    pub ks_vs_standard_normal: KsResult,
    /// `ς̂_n² / n`.
    pub varsigma2_estimate: f64,
}

/// Monte Carlo check of the CLT for partial sums of a generated process.
///
/// Replication `r` uses seed `derive_subseed(seed, r, 0)`. `ς_n` is the
/// cross-replication standard deviation (divisor `R − 1`) of `S_n`.
pub fn clt_check(
    spec: &ErrorProcessSpec,
    n: usize,
    replications: usize,
    seed: u64,
) -> Result<CltCheckReport, StatsError> {
    spec.validate()?;
    clt_check_with(n, replications, seed, |len, s| process::generate_sequence(spec, len, s))
}

/// [`clt_check`] over an arbitrary sequence source.
pub fn clt_check_with<F>(n: usize, replications: usize, seed: u64, source: F) -> Result<CltCheckReport, StatsError>
where
    F: Fn(usize, u64) -> Result<Vec<f64>, ProcessError> + Sync,
{
    if replications < 500 {
        return Err(StatsError::TooFewSamples { need: 500, got: replications });
    }
    if n < 500 {
        return Err(StatsError::InsufficientData(format!("sequence length must be at least 500, got {n}")));
    }
    let sums: Vec<f64> = (0..replications as u64)
        .into_par_iter()
        .map(|r| source(n, rng::derive_subseed(seed, r, 0)).map(|x| x.iter().sum::<f64>()))
        .collect::<Result<_, _>>()?;
    let rf = replications as f64;
    let mean = sums.iter().sum::<f64>() / rf;
    let var = sums.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (rf - 1.0);
    if !var.is_finite() || var <= 0.0 {
        return Err(StatsError::DegenerateVariance(var));
    }
    let sd = var.sqrt();
    let s_over_sigma: Vec<f64> = sums.iter().map(|s| s / sd).collect();
    let ks = ks_statistic(&s_over_sigma, standard_normal_cdf)?;
    Ok(CltCheckReport { n, replications, s_over_sigma, ks_vs_standard_normal: ks, varsigma2_estimate: var / n as f64 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bandwidth {
    Fixed(usize),
    /// `floor(n^(1/3))`.
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongRunVariance {
    pub matrix: Matrix,
    pub bandwidth: usize,
    /// Negative eigenvalues were clipped to zero.
    pub projected: bool,
    pub positive_definite: bool,
}

/// `floor(cbrt(n))` in exact integer arithmetic.
pub fn integer_cbrt(n: usize) -> usize {
    let mut r = (n as f64).cbrt().round() as usize;
    while r * r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Bartlett-kernel estimate `Γ̂₀ + Σ_{k=1..b} (1 − k/(b+1)) (Γ̂_k + Γ̂_kᵀ)` of
/// the long-run covariance of the row sequence, with
/// `Γ̂_k = n⁻¹ Σ_t (x_t − x̄)(x_{t−k} − x̄)ᵀ`.
///
/// The result is symmetrized. An indefinite estimate is projected onto the
/// PSD cone by clipping eigenvalues at zero, and `projected` is set.
pub fn long_run_variance(rows: &Matrix, bandwidth: Bandwidth) -> Result<LongRunVariance, StatsError> {
    let (n, d) = (rows.rows(), rows.cols());
    let b = match bandwidth {
        Bandwidth::Fixed(b) => b,
        Bandwidth::Auto => integer_cbrt(n),
    };
    if n < 10 * (b + 1) {
        return Err(StatsError::InsufficientData(format!(
            "bandwidth {b} needs at least {} rows, got {n}",
            10 * (b + 1)
        )));
    }
    let (mean, _) = mean_and_covariance(rows);
    let centered: Vec<f64> =
        (0..n).flat_map(|i| rows.row(i).iter().zip(mean.iter()).map(|(x, m)| x - m).collect::<Vec<_>>()).collect();
    let at = |t: usize, a: usize| centered[t * d + a];
    let mut s = Matrix::zeros(d, d);
    for k in 0..=b {
        let w = if k == 0 { 1.0 } else { 1.0 - k as f64 / (b as f64 + 1.0) };
        let mut gamma = Matrix::zeros(d, d);
        for t in k..n {
            for a in 0..d {
                let xa = at(t, a);
                for c in 0..d {
                    gamma[(a, c)] += xa * at(t - k, c);
                }
            }
        }
        let gamma = gamma.scale(1.0 / n as f64);
        for a in 0..d {
            for c in 0..d {
                s[(a, c)] += if k == 0 { gamma[(a, c)] } else { w * (gamma[(a, c)] + gamma[(c, a)]) };
            }
        }
    }
    let s = s.add(&s.transpose())?.scale(0.5);
    let eig = linalg::sym_eig(&s, linalg::DEFAULT_EIG_TOL, linalg::DEFAULT_MAX_SWEEPS)?;
    let min_eig = eig.eigenvalues[d - 1];
    let tol = 1e-12 * linalg::frobenius_norm(&s);
    if min_eig >= 0.0 {
        return Ok(LongRunVariance { positive_definite: min_eig > tol, matrix: s, bandwidth: b, projected: false });
    }
    let mut clipped = Matrix::zeros(d, d);
    for j in 0..d {
        let lam = eig.eigenvalues[j].max(0.0);
        for a in 0..d {
            for c in 0..d {
                clipped[(a, c)] += lam * eig.eigenvectors[(a, j)] * eig.eigenvectors[(c, j)];
            }
        }
    }
    Ok(LongRunVariance { matrix: clipped, bandwidth: b, projected: true, positive_definite: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngExt;
    use rand_distr::StandardNormal;

    fn normal_matrix(r: usize, d: usize, seed: u64) -> Matrix {
        let mut g = rng::stream(seed);
        Matrix::new(r, d, (0..r * d).map(|_| g.sample(StandardNormal)).collect()).unwrap()
    }

    /// Brute-force O(R²) Mardia skewness with an explicit inverse covariance.
    fn mardia_b1_bruteforce(samples: &Matrix) -> f64 {
        let (mean, cov) = mean_and_covariance(samples);
        let d = samples.cols();
        let mut inv = Matrix::zeros(d, d);
        for j in 0..d {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            let col = linalg::solve_spd(&cov, &Vector::new(e).unwrap()).unwrap();
            for i in 0..d {
                inv[(i, j)] = col[i];
            }
        }
        let c: Vec<Vector> = (0..samples.rows())
            .map(|i| Vector::new(samples.row(i).iter().zip(mean.iter()).map(|(x, m)| x - m).collect()).unwrap())
            .collect();
        let mut s = 0.0;
        for a in &c {
            let ia = inv.mul_vec(a).unwrap();
            for b in &c {
                s += ia.dot(b).powi(3);
            }
        }
        s / (c.len() as f64).powi(2)
    }

    #[test]
    fn mardia_tensor_route_matches_bruteforce() {
        let mut m = normal_matrix(120, 3, 5);
        for i in 0..120 {
            m[(i, 0)] = m[(i, 0)].powi(3);
        }
        let r = mardia_tests(&m).unwrap();
        let brute = mardia_b1_bruteforce(&m);
        assert!((r.b1 - brute).abs() <= 1e-10 * (1.0 + brute));
    }

    #[test]
    fn mardia_symmetric_two_point_has_zero_skewness() {
        let data: Vec<f64> = (0..200).map(|i| if i % 2 == 0 { -1.0 } else { 1.0 }).collect();
        let r = mardia_tests(&Matrix::new(200, 1, data).unwrap()).unwrap();
        assert_eq!(r.b1, 0.0);
        assert_eq!(r.skewness_pvalue, 1.0);
    }

    #[test]
    fn mardia_null_calibration() {
        let rejections = (0..200u64)
            .filter(|&s| {
                let r = mardia_tests(&normal_matrix(5000, 2, 1000 + s)).unwrap();
                r.skewness_pvalue < 0.01 || r.kurtosis_pvalue < 0.01
            })
            .count();
        assert!(rejections as f64 / 200.0 <= 0.04, "{rejections} rejections");
    }

    #[test]
    fn mardia_detects_cubed_coordinate() {
        let mut m = normal_matrix(5000, 2, 77);
        for i in 0..5000 {
            m[(i, 1)] = m[(i, 1)].powi(3);
        }
        assert!(mardia_tests(&m).unwrap().skewness_pvalue < 1e-6);
    }

    #[test]
    fn mardia_errors() {
        assert_eq!(mardia_tests(&normal_matrix(30, 2, 1)), Err(StatsError::TooFewSamples { need: 40, got: 30 }));
        let mut m = normal_matrix(100, 2, 1);
        for i in 0..100 {
            m[(i, 1)] = 2.0 * m[(i, 0)];
        }
        assert_eq!(mardia_tests(&m), Err(StatsError::SingularCovariance));
    }

    #[test]
    fn ks_examples() {
        let r = ks_statistic(&[0.0], standard_normal_cdf).unwrap();
        assert_eq!(r.d, 0.5);
        // stratified placement at the uniform quantiles (i − ½)/n
        let n = 50;
        let xs: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) / n as f64).collect();
        let r = ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((r.d - 1.0 / (2.0 * n as f64)).abs() < 1e-15);
        assert_eq!(ks_statistic(&[], standard_normal_cdf), Err(StatsError::EmptySample));
    }

    #[test]
    fn kolmogorov_series_branches_agree() {
        // both series are valid everywhere; they must meet at the switch point
        for x in [1.1, 1.18, 1.25] {
            let w = std::f64::consts::PI.powi(2) / (8.0 * x * x);
            let cdf: f64 = (1..=40).map(|k| (-((2 * k - 1) as f64).powi(2) * w).exp()).sum::<f64>()
                * (2.0 * std::f64::consts::PI).sqrt()
                / x;
            let alt: f64 = 2.0
                * (1..=100)
                    .map(|k| {
                        let s = if k % 2 == 1 { 1.0 } else { -1.0 };
                        s * (-2.0 * (k as f64).powi(2) * x * x).exp()
                    })
                    .sum::<f64>();
            assert!((1.0 - cdf - alt).abs() < 1e-12);
        }
        // critical values of the Kolmogorov distribution
        assert!((kolmogorov_sf(1.3581) - 0.05).abs() < 1e-4);
        assert!((kolmogorov_sf(1.6276) - 0.01).abs() < 1e-4);
        assert_eq!(kolmogorov_sf(0.0), 1.0);
    }

    #[test]
    fn ks_null_calibration_large_sample() {
        let mut ok = 0;
        for s in 0..100u64 {
            let mut g = rng::stream(500 + s);
            let xs: Vec<f64> = (0..100_000).map(|_| g.sample(StandardNormal)).collect();
            let r = ks_statistic(&xs, standard_normal_cdf).unwrap();
            if r.d <= 0.006 && r.p_value > 0.01 {
                ok += 1;
            }
        }
        assert!(ok >= 99, "{ok}/100");
    }

    #[test]
    fn normality_report_shapes() {
        let rep = normality_report(&normal_matrix(2000, 2, 3)).unwrap();
        assert_eq!(rep.ks_projection_stats.len(), 3);
        assert_eq!(rep.ks_projection_stats[2].direction, "ones");
        assert!(rep.sample_cov[(0, 1)] == rep.sample_cov[(1, 0)]);
        for k in &rep.ks_projection_stats {
            assert!((0.0..=1.0).contains(&k.p_value));
        }
        let rep1 = normality_report(&normal_matrix(100, 1, 3)).unwrap();
        assert_eq!(rep1.ks_projection_stats.len(), 1);
    }

    #[test]
    fn clt_iid_is_standard_normal() {
        let rep = clt_check(&ErrorProcessSpec::iid(1.0), 500, 1000, 4).unwrap();
        assert_eq!(rep.s_over_sigma.len(), 1000);
        assert!(rep.ks_vs_standard_normal.p_value > 0.01);
        assert!((rep.varsigma2_estimate - 1.0).abs() < 0.15);
    }

    #[test]
    fn clt_errors() {
        let zero = |n: usize, _s: u64| Ok(vec![0.0; n]);
        assert_eq!(clt_check_with(500, 500, 0, zero), Err(StatsError::DegenerateVariance(0.0)));
        assert!(matches!(clt_check_with(500, 100, 0, zero), Err(StatsError::TooFewSamples { .. })));
        assert!(matches!(clt_check_with(100, 500, 0, zero), Err(StatsError::InsufficientData(_))));
    }

    #[test]
    fn long_run_bandwidth_zero_is_sample_covariance() {
        let m = normal_matrix(300, 3, 8);
        let lrv = long_run_variance(&m, Bandwidth::Fixed(0)).unwrap();
        let (_, cov) = mean_and_covariance(&m);
        assert_eq!(lrv.matrix, cov);
        assert!(lrv.positive_definite && !lrv.projected);
    }

    #[test]
    fn long_run_ma1() {
        let x = process::generate_sequence(&ErrorProcessSpec::ma(vec![1.0, 1.0], 1.0), 100_000, 12).unwrap();
        let lrv = long_run_variance(&Matrix::new(x.len(), 1, x).unwrap(), Bandwidth::Auto).unwrap();
        assert_eq!(lrv.bandwidth, 46);
        assert!((lrv.matrix[(0, 0)] / 2.0 - 1.0).abs() < 0.05, "{}", lrv.matrix[(0, 0)]);
    }

    #[test]
    fn long_run_constant_rows() {
        let m = Matrix::new(100, 2, [1.5, -2.0].repeat(100)).unwrap();
        let lrv = long_run_variance(&m, Bandwidth::Fixed(2)).unwrap();
        assert_eq!(lrv.matrix, Matrix::zeros(2, 2));
        assert!(!lrv.positive_definite);
    }

    #[test]
    fn long_run_projection_flagged() {
        // alternating series has negative lag-1 autocovariance large enough to go indefinite
        // in the bivariate case with a perfectly anti-correlated second column at lag 1
        let n = 200;
        let data: Vec<f64> = (0..n)
            .flat_map(|t| {
                let a = if t % 2 == 0 { 1.0 } else { -1.0 };
                let b = if t % 3 == 0 { 1.0 } else { -0.5 };
                [a, b]
            })
            .collect();
        let lrv = long_run_variance(&Matrix::new(n, 2, data).unwrap(), Bandwidth::Fixed(1)).unwrap();
        let eig = linalg::sym_eig(&lrv.matrix, 1e-12, 100).unwrap();
        assert!(eig.eigenvalues[1] >= -1e-12);
        if lrv.projected {
            assert!(!lrv.positive_definite);
        }
    }

    #[test]
    fn long_run_insufficient() {
        let m = normal_matrix(50, 1, 1);
        assert!(matches!(long_run_variance(&m, Bandwidth::Fixed(5)), Err(StatsError::InsufficientData(_))));
    }

    #[test]
    fn type7_quantiles() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&x, 0.5), 2.5);
        assert_eq!(quantile_sorted(&x, 0.0), 1.0);
        assert_eq!(quantile_sorted(&x, 1.0), 4.0);
        assert_eq!(quantile_sorted(&x, 0.25), 1.75);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(quantile_sorted(&[7.0], 0.9), 7.0);
    }

    #[test]
    fn cube_roots() {
        assert_eq!(integer_cbrt(1000), 10);
        assert_eq!(integer_cbrt(999), 9);
        assert_eq!(integer_cbrt(27_000), 30);
        assert_eq!(integer_cbrt(8), 2);
        assert_eq!(integer_cbrt(100_000), 46);
    }
}
