//! # cs-sharp
//!
//! Projection-sharpened Cauchy-Schwarz bounds and their statistical
//! applications.
//!
//! The classical inequality `|<x, y>| <= ||x|| ||y||` leaves a gap that an
//! orthogonal projection `P` can split: the quantity
//!
//! ```text
//! D(x, y | P) = ||Px|| ||Py|| + ||x - Px|| ||y - Py||
//! ```
//!
//! always sits between the two sides, touching the lower end when `P`
//! projects onto the span of `x` and the upper end for the identity or
//! zero projection. Choosing `P` to match the structure of a problem
//! turns that gap into sharper estimates. This crate provides:
//!
//! - [`projection`]: projection specifications on R^n, the `D` function
//!   and its bound chain, the attained extremes, the refined triangle
//!   inequality, and the two algebraic identities behind them;
//! - [`stats`]: sample mean/covariance bounds, lagged cross-covariance
//!   bounds with an optimal-split scan, conditional expectation over index
//!   partitions, and projection correlation coefficients;
//! - [`divergence`]: the Cauchy-Schwarz divergence between densities, its
//!   projection-refined variant, quadrature oracles for closed-form
//!   density models, and a nonparametric sample estimator over an
//!   orthonormal basis ([`basis`]);
//! - [`report`] and [`cli`]: the machine-readable reports and subcommand
//!   drivers behind the `cs-sharp` binary.
//!
//! Every inner product and norm is accumulated with deterministic pairwise
//! summation ([`sum`]), so all results are reproducible bit for bit.
//!
//! ## Example
//!
//! ```
//! use cs_sharp::{d_function, ProjectionSpec, Series};
//!
//! let x = Series::from_slice(&[1.0, 2.0]).unwrap();
//! let y = Series::from_slice(&[3.0, 4.0]).unwrap();
//! let r = d_function(&x, &y, &ProjectionSpec::CoordinatePrefix(1)).unwrap();
//! assert!(r.abs_inner <= r.d_value && r.d_value <= r.cs_value);
//! assert_eq!(r.d_value, 11.0); // 1*3 + 2*4
//! ```
//!
//! Runnable demonstrations of each capability live under `examples/`.

pub mod basis;
pub mod cli;
pub mod divergence;
pub mod error;
pub mod partition;
pub mod projection;
pub mod report;
pub mod series;
pub mod stats;
pub mod sum;

mod quadrature;

pub use basis::{BasisFamily, BasisKind};
pub use divergence::{
    cs_divergence_exact, cs_p_divergence_exact, estimate_coefficients, estimate_divergence,
    exact_coefficients, CoefficientVector, DensityModel, DivergenceEstimate,
};
pub use error::{Error, Result};
pub use partition::Partition;
pub use projection::{
    d_function, enhanced_triangle, extremal_bounds, gram_schmidt, lagrange_defect,
    squaring_identity_defect, BoundReport, ProjectionSpec, ORTH_TOL, PROJ_TOL, REL_TOL,
};
pub use series::Series;
pub use stats::{
    best_split, conditional_corr, conditional_expectation, cross_cov_bound,
    expectation_variant_bound, p_correlation, sample_cov_bound, sample_cov_squared_bound,
    sample_mean_bound, CorrelationReport, CrossCovBound,
};
