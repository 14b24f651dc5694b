//! Orthogonal projections on R^n and the projection-sharpened
//! Cauchy-Schwarz machinery built on them.
//!
//! For an orthogonal projection `P` the symmetric function
//!
//! ```text
//! D(x, y | P) = ||Px|| ||Py|| + ||x - Px|| ||y - Py||
//! ```
//!
//! is squeezed between the two sides of the Cauchy-Schwarz inequality:
//!
//! ```text
//! |<x, y>|  <=  D(x, y | P)  <=  ||x|| ||y||
//! ```
//!
//! with the upper end attained by the identity (or zero) projection and the
//! lower end by projecting onto the span of `x`. [`d_function`] evaluates
//! the chain for one projection, [`extremal_bounds`] returns the two
//! attained ends, and [`enhanced_triangle`] is the induced refinement of
//! the triangle inequality. [`lagrange_defect`] and
//! [`squaring_identity_defect`] expose the two algebraic identities the
//! chain rests on, as directly computable residuals.
//!
//! All norms and inner products use the deterministic pairwise summation
//! from [`crate::sum`], and `D` is evaluated in a fixed order (projected
//! norms first, then residual norms), so `D(x, y | P)` and `D(y, x | P)`
//! are computed from identical scalar sets and agree bit for bit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::series::{check_same_len, Series};
use crate::sum;

/// Relative slack for inequality chains, scaled by `||x|| ||y||`.
pub const REL_TOL: f64 = 1e-9;
/// Tolerance for projection laws (idempotence, residual orthogonality).
pub const PROJ_TOL: f64 = 1e-10;
/// Tolerance for orthonormality of user-supplied column sets.
pub const ORTH_TOL: f64 = 1e-10;

/// Declarative description of an orthogonal projection on R^n.
#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionSpec {
    /// `Px = x`.
    Identity,
    /// `Px = 0`.
    Zero,
    /// Keeps the first `k` coordinates (`1 <= k <= n`), zeroes the rest.
    CoordinatePrefix(usize),
    /// Keeps the coordinates in the set (0-based), zeroes the rest.
    /// The empty set is the zero projection.
    CoordinateMask(BTreeSet<usize>),
    /// Projection onto the span of `(1, ..., 1)`: replaces every entry by
    /// the mean of the entries.
    MeanDirection,
    /// Projection onto the span of a nonzero vector.
    SpanOf(Series),
    /// Projection onto the column space of an `n x m` matrix with
    /// orthonormal columns, stored column by column.
    OrthonormalColumns(Vec<Vec<f64>>),
    /// Group-mean averaging over an index partition: the conditional
    /// expectation with respect to the finite sigma-algebra the partition
    /// generates, under the empirical measure.
    PartitionAveraging(Partition),
}

impl ProjectionSpec {
    /// Span projection with an early nonzero check.
    pub fn span_of(v: Series) -> Result<Self> {
        if sum::norm_sq(v.as_slice()) == 0.0 {
            return Err(Error::InvalidProjection("span of the zero vector".into()));
        }
        Ok(ProjectionSpec::SpanOf(v))
    }

    /// Column-space projection with an early orthonormality check.
    pub fn orthonormal_columns(columns: Vec<Vec<f64>>) -> Result<Self> {
        check_orthonormal(&columns)?;
        Ok(ProjectionSpec::OrthonormalColumns(columns))
    }

    /// Mask projection from 0-based indices.
    pub fn coordinate_mask<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        ProjectionSpec::CoordinateMask(indices.into_iter().collect())
    }

    /// Validates the spec against a vector length.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            ProjectionSpec::Identity | ProjectionSpec::Zero | ProjectionSpec::MeanDirection => {
                Ok(())
            }
            ProjectionSpec::CoordinatePrefix(k) => {
                if *k == 0 {
                    Err(Error::InvalidProjection(
                        "coordinate prefix must keep at least one coordinate".into(),
                    ))
                } else if *k > n {
                    Err(Error::DimensionMismatch { left: *k, right: n })
                } else {
                    Ok(())
                }
            }
            ProjectionSpec::CoordinateMask(set) => match set.iter().next_back() {
                Some(&max) if max >= n => Err(Error::DimensionMismatch {
                    left: max + 1,
                    right: n,
                }),
                _ => Ok(()),
            },
            ProjectionSpec::SpanOf(v) => {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        left: v.len(),
                        right: n,
                    });
                }
                if sum::norm_sq(v.as_slice()) == 0.0 {
                    return Err(Error::InvalidProjection("span of the zero vector".into()));
                }
                Ok(())
            }
            ProjectionSpec::OrthonormalColumns(columns) => {
                check_orthonormal(columns)?;
                if columns[0].len() != n {
                    return Err(Error::DimensionMismatch {
                        left: columns[0].len(),
                        right: n,
                    });
                }
                Ok(())
            }
            ProjectionSpec::PartitionAveraging(p) => {
                if p.len() != n {
                    return Err(Error::DimensionMismatch {
                        left: p.len(),
                        right: n,
                    });
                }
                Ok(())
            }
        }
    }

    /// Applies the projection: returns `Px`.
    pub fn apply(&self, x: &Series) -> Result<Series> {
        let n = x.len();
        self.validate(n)?;
        let xs = x.as_slice();
        let values = match self {
            ProjectionSpec::Identity => xs.to_vec(),
            ProjectionSpec::Zero => vec![0.0; n],
            ProjectionSpec::CoordinatePrefix(k) => {
                let mut v = xs.to_vec();
                v[*k..].fill(0.0);
                v
            }
            ProjectionSpec::CoordinateMask(set) => {
                let mut v = vec![0.0; n];
                for &i in set {
                    v[i] = xs[i];
                }
                v
            }
            ProjectionSpec::MeanDirection => vec![sum::mean(xs); n],
            ProjectionSpec::SpanOf(v) => {
                let vs = v.as_slice();
                let scale = sum::dot(vs, xs) / sum::norm_sq(vs);
                vs.iter().map(|&vi| scale * vi).collect()
            }
            ProjectionSpec::OrthonormalColumns(columns) => {
                let coeffs: Vec<f64> = columns.iter().map(|b| sum::dot(b, xs)).collect();
                (0..n)
                    .map(|i| sum::sum_terms(columns.len(), |j| coeffs[j] * columns[j][i]))
                    .collect()
            }
            ProjectionSpec::PartitionAveraging(p) => {
                let mut means = Vec::with_capacity(p.group_count());
                for group in p.members() {
                    let vals: Vec<f64> = group.iter().map(|&i| xs[i]).collect();
                    means.push(sum::mean(&vals));
                }
                p.group_ids().iter().map(|&g| means[g]).collect()
            }
        };
        Ok(Series::from_raw(values))
    }
}

fn check_orthonormal(columns: &[Vec<f64>]) -> Result<()> {
    if columns.is_empty() {
        return Err(Error::InvalidProjection("empty column set".into()));
    }
    let n = columns[0].len();
    if n == 0 {
        return Err(Error::InvalidProjection("zero-length columns".into()));
    }
    for col in columns {
        if col.len() != n {
            return Err(Error::DimensionMismatch {
                left: col.len(),
                right: n,
            });
        }
        if col.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidProjection("non-finite column entry".into()));
        }
    }
    for i in 0..columns.len() {
        for j in i..columns.len() {
            let g = sum::dot(&columns[i], &columns[j]);
            let target = if i == j { 1.0 } else { 0.0 };
            if (g - target).abs() > ORTH_TOL {
                return Err(Error::InvalidProjection(format!(
                    "columns {i} and {j} are not orthonormal: <b{i}, b{j}> = {g}"
                )));
            }
        }
    }
    Ok(())
}

/// Orthonormalizes a spanning set by modified Gram-Schmidt with one
/// reorthogonalization pass. Rejects zero or linearly dependent columns.
pub fn gram_schmidt(columns: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if columns.is_empty() {
        return Err(Error::InvalidProjection("empty column set".into()));
    }
    let n = columns[0].len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(columns.len());
    for (idx, col) in columns.iter().enumerate() {
        if col.len() != n {
            return Err(Error::DimensionMismatch {
                left: col.len(),
                right: n,
            });
        }
        let original = sum::norm(col);
        let mut v = col.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = sum::dot(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        let remaining = sum::norm(&v);
        if !remaining.is_finite() || remaining <= 1e-12 * original.max(1.0) {
            return Err(Error::InvalidProjection(format!(
                "column {idx} is zero or linearly dependent"
            )));
        }
        for vi in &mut v {
            *vi /= remaining;
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One evaluation of the sharpened Cauchy-Schwarz chain.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Signed inner product `<x, y>`.
    pub inner: f64,
    /// `|<x, y>|`, the lower end of the chain.
    pub abs_inner: f64,
    /// `D(x, y | P)`, the projection-sharpened bound.
    pub d_value: f64,
    /// `||x|| ||y||`, the classical Cauchy-Schwarz bound.
    pub cs_value: f64,
    /// `||Px||`.
    pub p_norm_x: f64,
    /// `||Py||`.
    pub p_norm_y: f64,
    /// `||x - Px||`.
    pub residual_x: f64,
    /// `||y - Py||`.
    pub residual_y: f64,
}

fn residual(x: &Series, px: &Series) -> Vec<f64> {
    x.as_slice()
        .iter()
        .zip(px.as_slice())
        .map(|(a, b)| a - b)
        .collect()
}

/// Evaluates `D(x, y | P)` together with both ends of the chain.
pub fn d_function(x: &Series, y: &Series, spec: &ProjectionSpec) -> Result<BoundReport> {
    check_same_len(x, y)?;
    let px = spec.apply(x)?;
    let py = spec.apply(y)?;
    let p_norm_x = px.norm();
    let p_norm_y = py.norm();
    let residual_x = sum::norm(&residual(x, &px));
    let residual_y = sum::norm(&residual(y, &py));
    let inner = sum::dot(x.as_slice(), y.as_slice());
    Ok(BoundReport {
        inner,
        abs_inner: inner.abs(),
        d_value: p_norm_x * p_norm_y + residual_x * residual_y,
        cs_value: x.norm() * y.norm(),
        p_norm_x,
        p_norm_y,
        residual_x,
        residual_y,
    })
}

/// The attained extremes of `D` over all orthogonal projections:
/// `(|<x, y>|, ||x|| ||y||)`. The lower end is reached by projecting onto
/// the span of `x` (and is 0 when `x = 0`), the upper end by the identity
/// or zero projection.
pub fn extremal_bounds(x: &Series, y: &Series) -> Result<(f64, f64)> {
    check_same_len(x, y)?;
    let lower = sum::dot(x.as_slice(), y.as_slice()).abs();
    let upper = x.norm() * y.norm();
    Ok((lower, upper))
}

/// Squared L2 norm of the antisymmetric cross-product matrix
/// `c_ij = (x_i y_j - x_j y_i) / sqrt(2)`, summed elementwise.
///
/// By the Lagrange identity this equals `||x||^2 ||y||^2 - <x, y>^2`; the
/// elementwise route computed here is the independent side of that check.
pub fn lagrange_defect(x: &Series, y: &Series) -> Result<f64> {
    check_same_len(x, y)?;
    let n = x.len();
    let xs = x.as_slice();
    let ys = y.as_slice();
    Ok(sum::sum_terms(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        let c = (xs[i] * ys[j] - xs[j] * ys[i]) / std::f64::consts::SQRT_2;
        c * c
    }))
}

/// Absolute defect of the two-component squaring identity
///
/// ```text
/// (p(x)p(y) + q(x)q(y))^2 + (p(x)q(y) - p(y)q(x))^2
///     = (p(x)^2 + q(x)^2)(p(y)^2 + q(y)^2)
/// ```
///
/// where `p(.) = ||P.||` and `q(.) = ||(I-P).||`. Exact algebra; the
/// returned value is pure floating-point residue.
pub fn squaring_identity_defect(x: &Series, y: &Series, spec: &ProjectionSpec) -> Result<f64> {
    let report = d_function(x, y, spec)?;
    let (px, qx) = (report.p_norm_x, report.residual_x);
    let (py, qy) = (report.p_norm_y, report.residual_y);
    let lhs = (px * py + qx * qy).powi(2) + (px * qy - py * qx).powi(2);
    let rhs = (px * px + qx * qx) * (py * py + qy * qy);
    Ok((lhs - rhs).abs())
}

/// Projection-refined triangle inequality: returns `(mid, upper)` with
///
/// ```text
/// ||x + y|| <= mid = sqrt((||Px|| + ||Py||)^2 + (||(I-P)x|| + ||(I-P)y||)^2)
///           <= upper = ||x|| + ||y||
/// ```
pub fn enhanced_triangle(x: &Series, y: &Series, spec: &ProjectionSpec) -> Result<(f64, f64)> {
    let report = d_function(x, y, spec)?;
    let mid = ((report.p_norm_x + report.p_norm_y).powi(2)
        + (report.residual_x + report.residual_y).powi(2))
    .sqrt();
    let upper = x.norm() + y.norm();
    Ok((mid, upper))
}
