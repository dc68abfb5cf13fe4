//! Moving-block bootstrap percentile intervals for the TLS coefficients.
//!
//! Rows of `[X, Y]` are resampled jointly in overlapping blocks of length `ℓ`:
//! `ceil(n/ℓ)` block starts are drawn uniformly from `0..=n−ℓ` with
//! replacement, concatenated and truncated to `n` rows. Each resample is
//! refitted and the interval is read off the type-7 quantiles of the
//! successful refits.

use crate::linalg::{Matrix, Vector};
use crate::rng;
use crate::stats;
use crate::tls::{self, TlsError};
use rand::RngExt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MIN_BOOT: usize = 199;
/// Largest tolerated fraction of failed refits.
pub const MAX_FAILURE_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BootstrapError {
    #[error("block length {block} is invalid for n = {n}")]
    BlockTooLong { block: usize, n: usize },
    #[error("{failures} of {n_boot} refits failed (more than 10%)")]
    TooManyRefitFailures { failures: usize, n_boot: usize },
    #[error("invalid bootstrap config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Tls(#[from] TlsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockLength {
    Fixed(usize),
    /// [`choose_block_length`].
    Auto,
}

fn default_level() -> f64 {
    0.95
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub block_length: BlockLength,
    pub n_boot: usize,
    #[serde(default = "default_level")]
    pub level: f64,
    pub seed: u64,
}

impl BootstrapConfig {
    pub fn new(block_length: BlockLength, n_boot: usize, seed: u64) -> Self {
        BootstrapConfig { block_length, n_boot, level: default_level(), seed }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCi {
    pub intervals: Vec<Interval>,
    pub beta_hat: Vector,
    pub level: f64,
    pub block_length: usize,
    /// Successful refits.
    pub n_boot_effective: usize,
    pub failures: usize,
}

/// `floor(n^(1/3))` clamped to `[1, n/4]`.
pub fn choose_block_length(n: usize) -> usize {
    stats::integer_cbrt(n).min(n / 4).max(1)
}

/// Row indices of one moving-block resample.
pub fn resample_indices(n: usize, block: usize, seed: u64) -> Vec<usize> {
    let mut g = rng::stream(seed);
    let mut idx = Vec::with_capacity(n + block);
    while idx.len() < n {
        let start = g.random_range(0..=n - block);
        idx.extend(start..start + block);
    }
    idx.truncate(n);
    idx
}

fn resampled_gram(data: &Matrix, idx: &[usize]) -> Matrix {
    let k = data.cols();
    let mut g = Matrix::zeros(k, k);
    for &i in idx {
        let r = data.row(i);
        for a in 0..k {
            for b in a..k {
                g[(a, b)] += r[a] * r[b];
            }
        }
    }
    for a in 0..k {
        for b in 0..a {
            g[(a, b)] = g[(b, a)];
        }
    }
    g
}

/// Percentile interval for each coefficient. Resample `b` uses seed
/// `derive_subseed(cfg.seed, b, 0)`.
pub fn block_bootstrap_ci(x: &Matrix, y: &Vector, cfg: &BootstrapConfig) -> Result<BootstrapCi, BootstrapError> {
    let n = x.rows();
    let block = match cfg.block_length {
        BlockLength::Fixed(b) => b,
        BlockLength::Auto if n < 8 => {
            return Err(BootstrapError::InvalidConfig(format!("automatic block length needs n >= 8, got {n}")))
        }
        BlockLength::Auto => choose_block_length(n),
    };
    if block == 0 || block > n {
        return Err(BootstrapError::BlockTooLong { block, n });
    }
    if cfg.n_boot < MIN_BOOT {
        return Err(BootstrapError::InvalidConfig(format!("n_boot must be at least {MIN_BOOT}, got {}", cfg.n_boot)));
    }
    if !(cfg.level > 0.0 && cfg.level < 1.0) {
        return Err(BootstrapError::InvalidConfig(format!("level must lie in (0, 1), got {}", cfg.level)));
    }
    let fit = tls::tls_fit(x, y)?;
    let data = x.hstack_vec(y).map_err(TlsError::from)?;
    let refits: Vec<Option<Vector>> = (0..cfg.n_boot as u64)
        .into_par_iter()
        .map(|b| {
            let idx = resample_indices(n, block, rng::derive_subseed(cfg.seed, b, 0));
            tls::tls_fit_gram(&resampled_gram(&data, &idx), n).ok().map(|f| f.beta_hat)
        })
        .collect();
    let failures = refits.iter().filter(|r| r.is_none()).count();
    if failures as f64 > MAX_FAILURE_FRACTION * cfg.n_boot as f64 {
        return Err(BootstrapError::TooManyRefitFailures { failures, n_boot: cfg.n_boot });
    }
    let ok: Vec<&Vector> = refits.iter().flatten().collect();
    let tail = (1.0 - cfg.level) / 2.0;
    let intervals = (0..x.cols())
        .map(|j| {
            let s = stats::sorted(&ok.iter().map(|b| b[j]).collect::<Vec<_>>());
            Interval { lower: stats::quantile_sorted(&s, tail), upper: stats::quantile_sorted(&s, 1.0 - tail) }
        })
        .collect();
    Ok(BootstrapCi {
        intervals,
        beta_hat: fit.beta_hat,
        level: cfg.level,
        block_length: block,
        n_boot_effective: ok.len(),
        failures,
    })
}
