//! Draws from the two dependent error families and reports sample moments.

use eivtls::process::{generate_sequence, ErrorProcessSpec};

fn lag_corr(x: &[f64], h: usize) -> f64 {
    let n = x.len();
    let m = x.iter().sum::<f64>() / n as f64;
    let var: f64 = x.iter().map(|v| (v - m).powi(2)).sum();
    (0..n - h).map(|i| (x[i] - m) * (x[i + h] - m)).sum::<f64>() / var
}

fn main() {
    let specs = [
        ("AR(1), a = 0.5", ErrorProcessSpec::ar1(0.5, 1.0, 3.0)),
        ("MA(2), c = (1, 0.6, 0.3)", ErrorProcessSpec::ma(vec![1.0, 0.6, 0.3], 1.0)),
    ];
    for (label, spec) in specs {
        let x = generate_sequence(&spec, 200_000, 42).unwrap();
        let var = x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64;
        let rho: Vec<String> = (1..=4).map(|h| format!("{:+.3}", lag_corr(&x, h))).collect();
        println!(
            "{label:<26} {:?} | variance {var:.3} | autocorrelation lags 1-4: {}",
            spec.mixing_class(),
            rho.join(" ")
        );
    }
}
