//! Exact α and φ for finite joint laws, plus the empirical α of a series.

use eivtls::diagnostics::{alpha_between, empirical_alpha_lag, phi_between, FiniteJoint, EMPIRICAL_ALPHA_CAVEAT};
use eivtls::process::{generate_sequence, ErrorProcessSpec};

fn main() {
    let joints = [
        ("independent", FiniteJoint::independent(&[0.5, 0.5], &[0.2, 0.8]).unwrap()),
        ("perfectly coupled", FiniteJoint::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap()),
        ("skewed", FiniteJoint::from_rows(&[vec![0.6, 0.1], vec![0.05, 0.25]]).unwrap()),
    ];
    for (label, j) in &joints {
        println!(
            "{label:<18} alpha {:.4}  phi(U->V) {:.4}  phi(V->U) {:.4}",
            alpha_between(j).unwrap(),
            phi_between(j).unwrap(),
            phi_between(&j.transposed()).unwrap()
        );
    }
    let x = generate_sequence(&ErrorProcessSpec::ar1(0.8, 1.0, 3.0), 50_000, 7).unwrap();
    for lag in [1, 2, 5, 10] {
        println!("AR(1) a=0.8 lag {lag:>2}: empirical alpha {:.4}", empirical_alpha_lag(&x, lag, 4).unwrap());
    }
    println!("{EMPIRICAL_ALPHA_CAVEAT}");
}
