//! Sample-moment bounds derived from the mean-direction projection: the
//! product bound, the covariance bound, its squared form, and the
//! population-moment variant.
//!
//! ```bash
//! cargo run -p cs-sharp --example covariance_bounds
//! ```

use cs_sharp::{
    expectation_variant_bound, sample_cov_bound, sample_cov_squared_bound, sample_mean_bound,
    Series,
};

fn show(tag: &str, x: &[f64], y: &[f64]) {
    let x = Series::from_slice(x).unwrap();
    let y = Series::from_slice(y).unwrap();
    let cs = x.norm() * y.norm();

    let (p_lhs, p_rhs) = sample_mean_bound(&x, &y).unwrap();
    let (c_lhs, c_rhs) = sample_cov_bound(&x, &y).unwrap();
    let (s_lhs, s_rhs, defect) = sample_cov_squared_bound(&x, &y).unwrap();
    let (e_lhs, e_rhs) = expectation_variant_bound(&x, &y).unwrap();

    println!("{tag}");
    println!("  product:    |sum x_i y_i| = {p_lhs:.6} <= {p_rhs:.6} <= ||x||||y|| = {cs:.6}");
    println!("  covariance: |<x,y> - n mean mean| = {c_lhs:.6} <= n s(x)s(y) = {c_rhs:.6}");
    println!("  squared:    {s_lhs:.6} <= {s_rhs:.6} (slack {defect:.6})");
    println!("  moments:    (E XY)^2 = {e_lhs:.6} <= {e_rhs:.6}");
    println!();
}

fn main() {
    // anti-correlated data: the covariance bound is tight
    show(
        "x = 1..4, y = 4..1 (perfectly anti-correlated)",
        &[1.0, 2.0, 3.0, 4.0],
        &[4.0, 3.0, 2.0, 1.0],
    );

    // the worked small example
    show(
        "x = (1,2,3), y = (3,2,1)",
        &[1.0, 2.0, 3.0],
        &[3.0, 2.0, 1.0],
    );

    // centered data: the mean carries no information and the product bound
    // collapses onto plain Cauchy-Schwarz
    show(
        "zero-mean x and y",
        &[1.0, -1.0, 2.0, -2.0],
        &[0.5, 0.5, -0.5, -0.5],
    );

    // a longer noisy pair
    let x: Vec<f64> = (0..48).map(|i| (i as f64 * 0.37).sin() + 0.8).collect();
    let y: Vec<f64> = (0..48)
        .map(|i| (i as f64 * 0.37 + 0.4).sin() + 1.1)
        .collect();
    show("two shifted sine tracks with offsets", &x, &y);
}
