//! The sharpened bound chain |<x,y>| <= D(x,y|P) <= ||x|| ||y|| under every
//! projection variant, plus the two attained extremes.
//!
//! ```bash
//! cargo run -p cs-sharp --example projection_bounds
//! ```

use cs_sharp::{d_function, extremal_bounds, gram_schmidt, Partition, ProjectionSpec, Series};

fn main() {
    let x = Series::from_slice(&[1.0, 2.0, 2.0, -1.0, 0.5, 3.0]).unwrap();
    let y = Series::from_slice(&[2.0, 2.0, 1.0, 0.5, -1.5, 2.5]).unwrap();
    let (lower, upper) = extremal_bounds(&x, &y).unwrap();

    println!("x = {:?}", x.as_slice());
    println!("y = {:?}", y.as_slice());
    println!("lower extreme |<x,y>|    = {lower:.6}");
    println!("upper extreme ||x|| ||y|| = {upper:.6}\n");

    let basis = gram_schmidt(&[
        vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 1.0, 1.0, 0.0],
    ])
    .unwrap();
    let partition = Partition::new(&[0, 0, 1, 1, 2, 2]).unwrap();

    let specs: Vec<(&str, ProjectionSpec)> = vec![
        ("identity", ProjectionSpec::Identity),
        ("zero", ProjectionSpec::Zero),
        ("prefix k=2", ProjectionSpec::CoordinatePrefix(2)),
        ("mask {1,4,6}", ProjectionSpec::coordinate_mask([0, 3, 5])),
        ("mean direction", ProjectionSpec::MeanDirection),
        ("span of x", ProjectionSpec::span_of(x.clone()).unwrap()),
        (
            "2 orthonormal cols",
            ProjectionSpec::OrthonormalColumns(basis),
        ),
        (
            "partition averaging",
            ProjectionSpec::PartitionAveraging(partition),
        ),
    ];

    println!(
        "{:<22} {:>12} {:>12} {:>12}",
        "projection", "|<x,y>|", "D(x,y|P)", "||x||||y||"
    );
    for (name, spec) in &specs {
        let r = d_function(&x, &y, spec).unwrap();
        println!(
            "{name:<22} {:>12.6} {:>12.6} {:>12.6}",
            r.abs_inner, r.d_value, r.cs_value
        );
        assert!(r.abs_inner <= r.d_value + 1e-9 * r.cs_value);
        assert!(r.d_value <= r.cs_value + 1e-9 * r.cs_value);
    }

    println!("\nEvery D lands between the two extremes; identity and zero attain");
    println!("the upper end, the span of x attains the lower end.");
}
