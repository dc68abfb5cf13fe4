//! Normality battery on sqrt(n)-scaled TLS deviations.

use eivtls::montecarlo::{run_normality, ExperimentConfig};

fn main() {
    let report = run_normality(&ExperimentConfig::phi_exemplar(vec![2000], 1000, 3)).unwrap();
    let sec = report.normality.expect("normality section");
    let r = &sec.report;
    println!("n = {}, {} replications", sec.n, r.n_samples);
    println!("Mardia skewness {:.3} (p = {:.3})", r.mardia_skewness_stat, r.mardia_skewness_pvalue);
    println!("Mardia kurtosis {:.3} (p = {:.3})", r.mardia_kurtosis_stat, r.mardia_kurtosis_pvalue);
    for ks in &r.ks_projection_stats {
        println!("KS along {:<7} D = {:.4}, p = {:.3}", ks.direction, ks.d, ks.p_value);
    }
    println!("largest |mean| in standard errors: {:.2}", sec.max_abs_mean_z);
    println!("{}", sec.note);
}
