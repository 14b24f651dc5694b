//! A refinement of the triangle inequality: for any orthogonal projection,
//! ||x+y|| <= sqrt((||Px||+||Py||)^2 + (||(I-P)x||+||(I-P)y||)^2) <= ||x||+||y||.
//!
//! ```bash
//! cargo run -p cs-sharp --example triangle_refinement
//! ```

use cs_sharp::{enhanced_triangle, ProjectionSpec, Series};

fn sum_norm(x: &Series, y: &Series) -> f64 {
    Series::new(
        x.as_slice()
            .iter()
            .zip(y.as_slice())
            .map(|(a, b)| a + b)
            .collect(),
    )
    .unwrap()
    .norm()
}

fn main() {
    let pairs = [
        (vec![1.0, 0.0], vec![0.0, 1.0]),
        (vec![1.0, 2.0], vec![3.0, 4.0]),
        (vec![2.0, -1.0, 0.5, 1.5], vec![-0.5, 2.0, 1.0, -1.0]),
    ];

    println!(
        "{:<28} {:>10} {:>10} {:>10}",
        "pair, projection", "||x+y||", "refined", "||x||+||y||"
    );
    for (xv, yv) in &pairs {
        let x = Series::from_slice(xv).unwrap();
        let y = Series::from_slice(yv).unwrap();
        for k in 1..=x.len() / 2 {
            let spec = ProjectionSpec::CoordinatePrefix(k);
            let (mid, upper) = enhanced_triangle(&x, &y, &spec).unwrap();
            let lower = sum_norm(&x, &y);
            println!(
                "{:<28} {lower:>10.6} {mid:>10.6} {upper:>10.6}",
                format!("dim {}, prefix k={k}", x.len())
            );
            assert!(lower <= mid + 1e-12 && mid <= upper + 1e-12);
        }
    }

    // the refined middle term can sit strictly between both ends
    let x = Series::from_slice(&[1.0, 2.0]).unwrap();
    let y = Series::from_slice(&[3.0, 4.0]).unwrap();
    let (mid, upper) = enhanced_triangle(&x, &y, &ProjectionSpec::CoordinatePrefix(1)).unwrap();
    println!(
        "\nFor x=(1,2), y=(3,4), prefix k=1: sqrt(52) = {mid:.6} sits between ||x+y|| = {:.6} and {upper:.6}",
        sum_norm(&x, &y)
    );
}
