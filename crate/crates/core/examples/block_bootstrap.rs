//! Moving-block bootstrap intervals for a fit with serially dependent errors.

use eivtls::bootstrap::{block_bootstrap_ci, BlockLength, BootstrapConfig};
use eivtls::model::synthesize;
use eivtls::montecarlo::{exemplar_beta, exemplar_design, phi_path_process};
use eivtls::process::ErrorMatrixSpec;

fn main() {
    let errors = ErrorMatrixSpec::uniform(phi_path_process(), 2, 1.0);
    let inst = synthesize(&exemplar_design(), &exemplar_beta(), &errors, 2000, 8).unwrap();
    for block in [BlockLength::Fixed(1), BlockLength::Auto] {
        let ci = block_bootstrap_ci(&inst.x, &inst.y, &BootstrapConfig::new(block, 999, 4)).unwrap();
        println!("block length {} ({} refits):", ci.block_length, ci.n_boot_effective);
        for (j, iv) in ci.intervals.iter().enumerate() {
            println!("  beta[{j}] = {:+.4}  95% [{:+.4}, {:+.4}]", ci.beta_hat[j], iv.lower, iv.upper);
        }
    }
}
