//! Total least squares for errors-in-variables regression with weakly
//! dependent (α- or φ-mixing) errors.
//!
//! The model is `Y = Zβ + ε`, `X = Z + Θ` with the design `Z` unobserved.
//! [`tls::tls_fit`] estimates `β` from the smallest eigenpair of
//! `[X,Y]ᵀ[X,Y]`. The remaining modules generate dependent errors, check the
//! theorem assumption systems on declared metadata, and run the Monte Carlo
//! and bootstrap experiments that probe consistency and asymptotic normality.
//!
//! ```
//! use eivtls::linalg::{Matrix, Vector};
//! use eivtls::tls::tls_fit;
//!
//! let x = Matrix::new(2, 1, vec![1.0, 2.0]).unwrap();
//! let y = Vector::new(vec![2.0, 3.0]).unwrap();
//! let fit = tls_fit(&x, &y).unwrap();
//! assert!((fit.beta_hat[0] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
//! ```

pub mod bootstrap;
pub mod cli;
pub mod diagnostics;
pub mod linalg;
pub mod model;
pub mod montecarlo;
pub mod process;
pub mod rng;
pub mod stats;
pub mod tls;

pub use linalg::{Matrix, Vector};
pub use tls::{tls_fit, TlsFit};
