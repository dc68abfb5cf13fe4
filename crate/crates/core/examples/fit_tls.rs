//! Orthogonal regression on a small data set, next to ordinary least squares.

use eivtls::tls::{ols_fit, tls_fit};
use eivtls::{Matrix, Vector};

fn main() {
    let x = Matrix::new(6, 1, vec![0.9, 2.1, 2.9, 4.2, 5.0, 6.1]).unwrap();
    let y = Vector::new(vec![2.1, 3.9, 6.2, 7.8, 10.1, 12.2]).unwrap();
    let fit = tls_fit(&x, &y).unwrap();
    println!("TLS slope     {:.6}", fit.beta_hat[0]);
    println!("OLS slope     {:.6}", ols_fit(&x, &y).unwrap()[0]);
    println!("lambda        {:.6}", fit.lambda);
    println!("sigma2 (λ/n)  {:.6}", fit.sigma2_hat);
}
