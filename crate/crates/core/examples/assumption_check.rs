//! Checks a design and error specification against each limit theorem.

use eivtls::diagnostics::{check_assumptions, Theorem};
use eivtls::montecarlo::{alpha_path_process, exemplar_design, phi_path_process};
use eivtls::process::ErrorMatrixSpec;

fn main() {
    let design = exemplar_design();
    for (label, process) in [("AR(1) errors", alpha_path_process()), ("MA(2) errors", phi_path_process())] {
        let errors = ErrorMatrixSpec::uniform(process, 2, 1.0);
        for theorem in Theorem::ALL {
            let report = check_assumptions(theorem, &design, &errors).unwrap();
            println!("{label} under {theorem}: {}", report.verdict());
            for c in &report.checks {
                println!("    {:<26} {:?}  {}", c.name, c.status, c.detail);
            }
        }
    }
}
