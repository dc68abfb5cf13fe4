//! Monte Carlo consistency of TLS along both exemplar paths.

use eivtls::montecarlo::{run_consistency, ExperimentConfig};

fn main() {
    for cfg in [
        ExperimentConfig::alpha_exemplar(vec![250, 1000, 4000], 300, 1),
        ExperimentConfig::phi_exemplar(vec![250, 1000, 4000], 300, 1),
    ] {
        let report = run_consistency(&cfg).unwrap();
        println!("{} (assumptions: {})", report.experiment, report.assumption_verdict);
        for c in &report.cells {
            println!(
                "  n={:>5}  median |err|inf {:.4}  sqrt(n)*median {:.3}  OLS median |err|inf {:.4}  failures {}",
                c.n,
                c.median_err_inf,
                c.sqrt_n_median_err_inf,
                c.ols_median_err_inf,
                c.failures()
            );
        }
    }
}
