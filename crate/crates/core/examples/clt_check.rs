//! Studentized partial sums of a unit-variance MA(1) series against N(0, 1).

use eivtls::process::ErrorProcessSpec;
use eivtls::stats::clt_check;

fn main() {
    let spec = ErrorProcessSpec::ma(vec![1.0, 1.0], 1.0);
    let report = clt_check(&spec, 2000, 2000, 1).unwrap();
    println!("variance of S_n / n: {:.4} (long-run variance 2, finite-n value 2 - 1/n)", report.varsigma2_estimate);
    println!(
        "KS vs N(0,1): D = {:.4}, p = {:.3}",
        report.ks_vs_standard_normal.d, report.ks_vs_standard_normal.p_value
    );
}
