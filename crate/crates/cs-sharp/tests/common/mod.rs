//! Shared generators for the randomized suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use cs_sharp::{gram_schmidt, Partition, ProjectionSpec, Series};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_series(rng: &mut ChaCha8Rng, dim: usize) -> Series {
    Series::new((0..dim).map(|_| rng.random_range(-10.0..10.0)).collect()).unwrap()
}

pub fn gaussian_series(rng: &mut ChaCha8Rng, dim: usize) -> Series {
    Series::new((0..dim).map(|_| rng.sample(StandardNormal)).collect()).unwrap()
}

pub fn unit_series(rng: &mut ChaCha8Rng, dim: usize) -> Series {
    loop {
        let s = uniform_series(rng, dim);
        let norm = s.norm();
        if norm > 1e-6 {
            return Series::new(s.as_slice().iter().map(|v| v / norm).collect()).unwrap();
        }
    }
}

/// AR(1) path with unit innovations, burn-in discarded.
pub fn ar1_series(rng: &mut ChaCha8Rng, n: usize, phi: f64) -> Series {
    let mut state = 0.0;
    for _ in 0..100 {
        state = phi * state + rng.sample::<f64, _>(StandardNormal);
    }
    let values = (0..n)
        .map(|_| {
            state = phi * state + rng.sample::<f64, _>(StandardNormal);
            state
        })
        .collect();
    Series::new(values).unwrap()
}

pub const PROJECTION_VARIANTS: u32 = 8;

/// One random draw of the given projection variant (0..8), with
/// orthonormal column sets built by orthonormalizing Gaussian matrices.
pub fn projection_variant(rng: &mut ChaCha8Rng, dim: usize, variant: u32) -> ProjectionSpec {
    loop {
        match variant {
            0 => return ProjectionSpec::Identity,
            1 => return ProjectionSpec::Zero,
            2 => return ProjectionSpec::CoordinatePrefix(rng.random_range(1..=dim)),
            3 => {
                let indices: BTreeSet<usize> = (0..dim)
                    .filter(|_| rng.random_range(0..2u32) == 1)
                    .collect();
                return ProjectionSpec::CoordinateMask(indices);
            }
            4 => return ProjectionSpec::MeanDirection,
            5 => {
                if let Ok(spec) = ProjectionSpec::span_of(uniform_series(rng, dim)) {
                    return spec;
                }
            }
            6 => {
                let m = rng.random_range(1..=dim);
                let columns: Vec<Vec<f64>> = (0..m)
                    .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
                    .collect();
                if let Ok(basis) = gram_schmidt(&columns) {
                    return ProjectionSpec::OrthonormalColumns(basis);
                }
            }
            _ => {
                let groups = rng.random_range(1..=dim.min(4)) as i64;
                let labels: Vec<i64> = (0..dim).map(|_| rng.random_range(0..groups)).collect();
                return ProjectionSpec::PartitionAveraging(Partition::new(&labels).unwrap());
            }
        }
    }
}

/// One random projection covering every spec variant.
pub fn random_projection(rng: &mut ChaCha8Rng, dim: usize) -> ProjectionSpec {
    let variant = rng.random_range(0..PROJECTION_VARIANTS);
    projection_variant(rng, dim, variant)
}
