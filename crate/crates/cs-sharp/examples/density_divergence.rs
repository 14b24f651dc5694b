//! Exact Cauchy-Schwarz divergences between density models, the projected
//! variant's ordering and convergence, and the pseudo-distance caveat.
//!
//! ```bash
//! cargo run -p cs-sharp --example density_divergence
//! ```

use cs_sharp::{cs_divergence_exact, cs_p_divergence_exact, BasisFamily, DensityModel};

fn main() {
    let uniform = DensityModel::uniform();
    let linear = DensityModel::linear();
    let bump = DensityModel::truncated_normal(0.5, 0.15).unwrap();
    let basis = BasisFamily::unit_cosine();

    let closed_form = 0.5 * (4.0f64 / 3.0).ln();
    let exact = cs_divergence_exact(&uniform, &linear).unwrap();
    println!("Div(uniform, 2u) = {exact:.9}   (closed form {closed_form:.9})");
    println!(
        "Div(uniform, bump) = {:.9}",
        cs_divergence_exact(&uniform, &bump).unwrap()
    );
    println!(
        "Div(2u, bump)      = {:.9}",
        cs_divergence_exact(&linear, &bump).unwrap()
    );
    println!(
        "Div(f, f)          = {:.3e} for the bump model\n",
        cs_divergence_exact(&bump, &bump).unwrap()
    );

    println!("Projected divergence Div(uniform, 2u | P_N): never above the full");
    println!("value, converging as the truncation order N grows:");
    println!("{:>4} {:>14} {:>12}", "N", "Div(.|P_N)", "gap");
    for n in [1usize, 2, 4, 8, 16, 32, 64] {
        let projected = cs_p_divergence_exact(&uniform, &linear, &basis, n).unwrap();
        println!("{n:>4} {projected:>14.9} {:>12.3e}", exact - projected);
        assert!(projected <= exact + 1e-9);
    }

    // quadratic growth in the separation defeats the triangle inequality
    let f = DensityModel::truncated_normal(0.2, 0.08).unwrap();
    let g = DensityModel::truncated_normal(0.5, 0.08).unwrap();
    let h = DensityModel::truncated_normal(0.8, 0.08).unwrap();
    let (fh, fg, gh) = (
        cs_divergence_exact(&f, &h).unwrap(),
        cs_divergence_exact(&f, &g).unwrap(),
        cs_divergence_exact(&g, &h).unwrap(),
    );
    println!("\nPseudo-distance only: for three bumps at 0.2, 0.5, 0.8 (sigma 0.08)");
    println!("Div(f,h) = {fh:.3} > Div(f,g) + Div(g,h) = {:.3}", fg + gh);
    assert!(fh > fg + gh);
}
