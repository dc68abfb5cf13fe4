//! Long-run variance of projected scores along a growing n grid, plus a direct
//! Bartlett estimate on an MA(1) series.

use eivtls::montecarlo::{run_long_run_check, ExperimentConfig};
use eivtls::process::{generate_sequence, ErrorProcessSpec};
use eivtls::stats::{long_run_variance, Bandwidth};
use eivtls::{Matrix, Vector};

fn main() {
    let t = Vector::new(vec![1.0 / 3f64.sqrt(); 3]).unwrap();
    let report = run_long_run_check(&ExperimentConfig::alpha_exemplar(vec![1000, 4000, 16000], 500, 2), &t).unwrap();
    for row in &report.rows {
        println!("n={:>6}  t'Sigma t = {:.3}", row.n, row.t_long_run_t);
    }
    let x = generate_sequence(&ErrorProcessSpec::ma(vec![1.0, 1.0], 1.0), 100_000, 5).unwrap();
    let rows = Matrix::new(x.len(), 1, x).unwrap();
    let lrv = long_run_variance(&rows, Bandwidth::Auto).unwrap();
    println!("MA(1) Bartlett estimate {:.3} (true 2) with bandwidth {}", lrv.matrix[(0, 0)], lrv.bandwidth);
}
