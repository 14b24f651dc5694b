//! Oracle and consistency checks for the divergence module.

mod common;

use rand::RngExt;

use cs_sharp::basis::{BasisFamily, BasisKind};
use cs_sharp::{
    cs_divergence_exact, cs_p_divergence_exact, estimate_coefficients, estimate_divergence,
    exact_coefficients, DensityModel, Error, Series,
};

fn quad(f: &dyn Fn(f64) -> f64, panels: usize) -> f64 {
    // composite Simpson reference integrator, independent of the library path
    let n = panels;
    let h = 1.0 / n as f64;
    (0..n)
        .map(|i| {
            let a = h * i as f64;
            let b = h * (i + 1) as f64;
            (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
        })
        .sum()
}

#[test]
fn basis_families_are_orthonormal_up_to_order_32() {
    for kind in [BasisKind::Cosine, BasisKind::Trigonometric] {
        let basis = BasisFamily::new(kind, 0.0, 1.0).unwrap();
        for j in 1..=32usize {
            for k in j..=32usize {
                let f = |u: f64| basis.eval(j, u).unwrap() * basis.eval(k, u).unwrap();
                let v = quad(&f, 4096);
                let target = if j == k { 1.0 } else { 0.0 };
                assert!((v - target).abs() < 1e-8, "{kind:?} <e{j}, e{k}> = {v}");
            }
        }
    }
}

#[test]
fn sample_coefficients_are_unbiased_for_the_linear_density() {
    // X = sqrt(U) has density 2u on [0, 1]
    let basis = BasisFamily::unit_cosine();
    let mut rng = common::rng(271);
    let n = 100_000;
    let sample = Series::new(
        (0..n)
            .map(|_| rng.random_range(0.0..1.0f64).sqrt())
            .collect(),
    )
    .unwrap();
    let estimated = estimate_coefficients(&sample, &basis, 4).unwrap();
    let exact = exact_coefficients(&DensityModel::linear(), &basis, 4).unwrap();
    for k in 0..4 {
        // Monte Carlo standard error of the k-th coefficient
        let mean = estimated.values()[k];
        let var: f64 = sample
            .as_slice()
            .iter()
            .map(|&u| (basis.eval(k + 1, u).unwrap() - mean).powi(2))
            .sum::<f64>()
            / (n as f64 * (n as f64 - 1.0));
        let se = var.sqrt().max(1e-12);
        let dev = (mean - exact.values()[k]).abs();
        assert!(
            dev <= 3.0 * se,
            "coefficient {}: deviation {dev} exceeds 3 se = {}",
            k + 1,
            3.0 * se
        );
    }

    // uniform draws: every coefficient above the first vanishes
    let uniform = Series::new((0..n).map(|_| rng.random_range(0.0..1.0)).collect()).unwrap();
    let flat = estimate_coefficients(&uniform, &basis, 4).unwrap();
    assert_eq!(flat.values()[0], 1.0);
    for k in 1..4 {
        let se = (1.0 / n as f64).sqrt();
        assert!(
            flat.values()[k].abs() <= 3.0 * se,
            "e{}: {}",
            k + 1,
            flat.values()[k]
        );
    }
}

#[test]
fn exact_divergence_matches_the_closed_form() {
    let v = cs_divergence_exact(&DensityModel::uniform(), &DensityModel::linear()).unwrap();
    assert!((v - 0.5 * (4.0f64 / 3.0).ln()).abs() < 1e-9);
}

#[test]
fn divergences_are_symmetric_and_nonnegative() {
    let models = [
        DensityModel::uniform(),
        DensityModel::linear(),
        DensityModel::truncated_normal(0.3, 0.2).unwrap(),
        DensityModel::truncated_normal(0.7, 0.1).unwrap(),
    ];
    let basis = BasisFamily::unit_cosine();
    for f in &models {
        for g in &models {
            let fg = cs_divergence_exact(f, g).unwrap();
            let gf = cs_divergence_exact(g, f).unwrap();
            assert!(fg >= -1e-12);
            assert!((fg - gf).abs() <= 1e-9 * fg.abs().max(1.0));
            for n in [1usize, 4, 16] {
                let pfg = cs_p_divergence_exact(f, g, &basis, n).unwrap();
                let pgf = cs_p_divergence_exact(g, f, &basis, n).unwrap();
                assert!(pfg >= -1e-12);
                assert!((pfg - pgf).abs() <= 1e-9 * pfg.abs().max(1.0));
            }
        }
    }
}

#[test]
fn projected_divergence_is_dominated_and_converges() {
    let f = DensityModel::uniform();
    let g = DensityModel::linear();
    let basis = BasisFamily::unit_cosine();
    let full = cs_divergence_exact(&f, &g).unwrap();
    let mut last = f64::NEG_INFINITY;
    for n in [1usize, 2, 4, 8, 16, 32, 64] {
        let projected = cs_p_divergence_exact(&f, &g, &basis, n).unwrap();
        assert!(projected >= -1e-12);
        assert!(projected <= full + 1e-9, "N = {n}: {projected} > {full}");
        // the cosine coefficients of 2u shrink monotonically, so the
        // projected divergence increases toward the full value here
        assert!(projected >= last - 1e-12);
        last = projected;
    }
    let at_64 = cs_p_divergence_exact(&f, &g, &basis, 64).unwrap();
    assert!((at_64 - full).abs() <= 1e-6);
}

#[test]
fn projected_divergence_from_uniform_has_a_closed_form() {
    // f constant: f = e_1 projects exactly, so D = ||P_N g|| and the
    // projected divergence is -log(1 / ||P_N g||)
    let f = DensityModel::uniform();
    let g = DensityModel::linear();
    let basis = BasisFamily::unit_cosine();
    for n in [1usize, 3, 8, 17] {
        let projected = cs_p_divergence_exact(&f, &g, &basis, n).unwrap();
        let coeffs = exact_coefficients(&g, &basis, n).unwrap();
        let projected_norm = coeffs.values().iter().map(|c| c * c).sum::<f64>().sqrt();
        let expected = -(1.0 / projected_norm).ln();
        assert!(
            (projected - expected).abs() <= 1e-9,
            "N = {n}: {projected} vs {expected}"
        );
    }
}

#[test]
fn matching_uniform_samples_estimate_near_zero() {
    let basis = BasisFamily::unit_cosine();
    let mut rng = common::rng(808);
    let n = 20_000;
    let f = Series::new((0..n).map(|_| rng.random_range(0.0..1.0)).collect()).unwrap();
    let g = Series::new((0..n).map(|_| rng.random_range(0.0..1.0)).collect()).unwrap();
    let e = estimate_divergence(&f, &g, &basis, 1).unwrap();
    assert!((e.denom - 1.0).abs() < 0.05);
    assert!((e.t_hat_f - 1.0).abs() < 0.05);
    assert!(e.r_hat_f < 0.01);
    assert!(e.value.abs() < 0.01, "value {}", e.value);
}

#[test]
fn estimator_approaches_the_oracle_on_moderate_samples() {
    let basis = BasisFamily::unit_cosine();
    let oracle = 0.5 * (4.0f64 / 3.0).ln();
    for seed in 0..3u64 {
        let mut rng = common::rng(1000 + seed);
        let n = 20_000;
        let uniform = Series::new((0..n).map(|_| rng.random_range(0.0..1.0)).collect()).unwrap();
        let linear = Series::new(
            (0..n)
                .map(|_| rng.random_range(0.0..1.0f64).sqrt())
                .collect(),
        )
        .unwrap();
        let e = estimate_divergence(&uniform, &linear, &basis, 8).unwrap();
        assert!(
            (e.value - oracle).abs() <= 0.05,
            "seed {seed}: {} vs {oracle}",
            e.value
        );
    }
}

#[test]
fn identical_files_worth_of_samples_give_exact_zero() {
    let mut rng = common::rng(5150);
    let values: Vec<f64> = (0..4097).map(|_| rng.random_range(0.0..1.0)).collect();
    let sample = Series::new(values).unwrap();
    for kind in [BasisKind::Cosine, BasisKind::Trigonometric] {
        let basis = BasisFamily::new(kind, 0.0, 1.0).unwrap();
        for n in [1usize, 2, 3, 7, 8, 30] {
            let e = estimate_divergence(&sample, &sample, &basis, n).unwrap();
            assert_eq!(e.value, 0.0, "{kind:?}, N = {n}");
        }
    }
}

#[test]
fn near_orthogonal_samples_have_no_estimate() {
    let basis = BasisFamily::unit_cosine();
    let f = Series::new(vec![0.1, 0.11]).unwrap();
    let g = Series::new(vec![0.9, 0.89]).unwrap();
    let mut found = None;
    for n in 1..=16usize {
        if let Err(Error::UndefinedDivergence { denom }) = estimate_divergence(&f, &g, &basis, n) {
            found = Some((n, denom));
            break;
        }
    }
    let (_, denom) = found.expect("some truncation renders the estimate undefined");
    assert!(denom <= 0.0);
}

#[test]
fn divergence_violates_the_triangle_inequality() {
    // Demonstration that this is only a pseudo-distance: three bumps on a
    // line; the direct divergence exceeds the sum through the middle.
    let f = DensityModel::truncated_normal(0.2, 0.08).unwrap();
    let g = DensityModel::truncated_normal(0.5, 0.08).unwrap();
    let h = DensityModel::truncated_normal(0.8, 0.08).unwrap();
    let fh = cs_divergence_exact(&f, &h).unwrap();
    let fg = cs_divergence_exact(&f, &g).unwrap();
    let gh = cs_divergence_exact(&g, &h).unwrap();
    assert!(fh > fg + gh, "no violation: {fh} <= {fg} + {gh}");
}

#[test]
fn mapped_domains_preserve_the_estimate() {
    // one affine map shared by both samples leaves the statistic unchanged
    let mut rng = common::rng(77);
    let n = 2000;
    let base: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let other: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..1.0f64).sqrt())
        .collect();
    let unit = BasisFamily::unit_cosine();
    let wide = BasisFamily::new(BasisKind::Cosine, -3.0, 5.0).unwrap();
    let affine =
        |v: &[f64]| -> Series { Series::new(v.iter().map(|u| -3.0 + 8.0 * u).collect()).unwrap() };
    let e_unit = estimate_divergence(
        &Series::new(base.clone()).unwrap(),
        &Series::new(other.clone()).unwrap(),
        &unit,
        6,
    )
    .unwrap();
    let e_wide = estimate_divergence(&affine(&base), &affine(&other), &wide, 6).unwrap();
    assert!((e_unit.value - e_wide.value).abs() <= 1e-9);
}
