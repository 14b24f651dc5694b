//! Nonparametric divergence estimation from samples: basis-coefficient
//! estimates against their exact values, and the sample statistic against
//! the quadrature oracle as n grows.
//!
//! ```bash
//! cargo run -p cs-sharp --example divergence_estimation
//! ```

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cs_sharp::{
    estimate_coefficients, estimate_divergence, exact_coefficients, BasisFamily, DensityModel,
    Series,
};

fn main() {
    let basis = BasisFamily::unit_cosine();
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // X = sqrt(U) has density 2u on [0, 1]
    let draw_linear = |rng: &mut ChaCha8Rng, n: usize| -> Series {
        Series::new(
            (0..n)
                .map(|_| rng.random_range(0.0..1.0f64).sqrt())
                .collect(),
        )
        .unwrap()
    };
    let draw_uniform = |rng: &mut ChaCha8Rng, n: usize| -> Series {
        Series::new((0..n).map(|_| rng.random_range(0.0..1.0)).collect()).unwrap()
    };

    let exact = exact_coefficients(&DensityModel::linear(), &basis, 6).unwrap();
    let sample = draw_linear(&mut rng, 200_000);
    let estimated = estimate_coefficients(&sample, &basis, 6).unwrap();
    println!("cosine coefficients of the density 2u (n = 200000):");
    println!("{:>4} {:>12} {:>12}", "k", "exact", "estimated");
    for k in 0..6 {
        println!(
            "{:>4} {:>12.6} {:>12.6}",
            k + 1,
            exact.values()[k],
            estimated.values()[k]
        );
    }

    let oracle = 0.5 * (4.0f64 / 3.0).ln();
    println!("\ndivergence estimate, uniform vs 2u (oracle {oracle:.6}), N = 8:");
    println!("{:>8} {:>12} {:>12}", "n", "estimate", "error");
    for n in [500usize, 5_000, 50_000, 500_000] {
        let f = draw_uniform(&mut rng, n);
        let g = draw_linear(&mut rng, n);
        let e = estimate_divergence(&f, &g, &basis, 8).unwrap();
        println!(
            "{n:>8} {:>12.6} {:>12.6}",
            e.value,
            (e.value - oracle).abs()
        );
    }

    // diagnostics of one estimate
    let f = draw_uniform(&mut rng, 20_000);
    let g = draw_linear(&mut rng, 20_000);
    let e = estimate_divergence(&f, &g, &basis, 8).unwrap();
    println!("\ndiagnostics at n = 20000, N = {}:", e.n_coeffs);
    println!("  t_hat(f) = {:.6}  r_hat(f) = {:.6}", e.t_hat_f, e.r_hat_f);
    println!("  t_hat(g) = {:.6}  r_hat(g) = {:.6}", e.t_hat_g, e.r_hat_g);
    println!("  denom    = {:.6}  value    = {:.6}", e.denom, e.value);

    // identical samples sit exactly on the diagonal
    let same = draw_uniform(&mut rng, 1_000);
    let e = estimate_divergence(&same, &same, &basis, 8).unwrap();
    println!("\nidentical samples: value = {:?} (exact zero)", e.value);
}
