//! The two algebraic identities the bound chain rests on, evaluated as
//! directly computable residuals: the Lagrange cross-product identity and
//! the two-component squaring identity.
//!
//! ```bash
//! cargo run -p cs-sharp --example identity_checks
//! ```

use cs_sharp::{lagrange_defect, squaring_identity_defect, sum, ProjectionSpec, Series};

fn main() {
    let x = Series::from_slice(&[1.0, 2.0]).unwrap();
    let y = Series::from_slice(&[3.0, 4.0]).unwrap();

    // ||C||^2 with c_ij = (x_i y_j - x_j y_i)/sqrt(2), summed elementwise,
    // equals ||x||^2 ||y||^2 - <x,y>^2
    let elementwise = lagrange_defect(&x, &y).unwrap();
    let direct = sum::norm_sq(x.as_slice()) * sum::norm_sq(y.as_slice())
        - sum::dot(x.as_slice(), y.as_slice()).powi(2);
    println!("Lagrange identity on x = (1,2), y = (3,4):");
    println!("  elementwise cross-product norm = {elementwise}");
    println!("  ||x||^2 ||y||^2 - <x,y>^2      = {direct}");
    println!("  (5 * 25 - 121 = 4)\n");

    // (p(x)p(y) + q(x)q(y))^2 + (p(x)q(y) - p(y)q(x))^2
    //   = (p(x)^2 + q(x)^2)(p(y)^2 + q(y)^2), exactly
    println!("Squaring identity residuals (pure float noise):");
    for (name, spec) in [
        ("prefix k=1", ProjectionSpec::CoordinatePrefix(1)),
        ("mean direction", ProjectionSpec::MeanDirection),
        ("span of x", ProjectionSpec::span_of(x.clone()).unwrap()),
    ] {
        let defect = squaring_identity_defect(&x, &y, &spec).unwrap();
        println!("  {name:<16} defect = {defect:.3e}");
        assert!(defect <= 1e-12 * (x.norm() * y.norm()).powi(2));
    }
}
