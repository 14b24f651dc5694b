//! Sample-statistics applications of the sharpened Cauchy-Schwarz chain:
//! mean/covariance bounds, lagged cross-covariance bounds, conditional
//! expectation over partitions, and projection correlation coefficients.
//!
//! All empirical moments use `1/n` normalization: the sample is treated as
//! the support of the empirical measure, so `E X = mean(x)`,
//! `sigma^2 = mean((x - mean(x))^2)`, and covariances likewise.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::projection::{d_function, ProjectionSpec};
use crate::series::{check_same_len, Series};
use crate::sum;

/// `(lhs, rhs)` of the mean-direction product bound
///
/// ```text
/// |sum x_i y_i| <= n |mean(x) mean(y)|
///                  + sqrt(||x||^2 - n mean(x)^2) sqrt(||y||^2 - n mean(y)^2)
/// ```
///
/// The right side is `D(x, y | MeanDirection)`; it never exceeds
/// `||x|| ||y||`, and reduces to it exactly when both means vanish.
pub fn sample_mean_bound(x: &Series, y: &Series) -> Result<(f64, f64)> {
    check_same_len(x, y)?;
    let n = x.len() as f64;
    let lhs = sum::dot(x.as_slice(), y.as_slice()).abs();
    let (mx, my) = (x.mean(), y.mean());
    let cx = sum::norm_sq(x.centered().as_slice());
    let cy = sum::norm_sq(y.centered().as_slice());
    let rhs = n * (mx * my).abs() + cx.sqrt() * cy.sqrt();
    Ok((lhs, rhs))
}

/// `(lhs, rhs)` of the sample covariance bound
///
/// ```text
/// |<x, y> - n mean(x) mean(y)| <= n s(x) s(y),   s(x)^2 = ||x||^2/n - mean(x)^2
/// ```
///
/// Both sides are computed from centered sums of squares, so the equality
/// cases (proportional centered data) come out exact.
pub fn sample_cov_bound(x: &Series, y: &Series) -> Result<(f64, f64)> {
    check_same_len(x, y)?;
    let n = x.len() as f64;
    let lhs = (sum::dot(x.as_slice(), y.as_slice()) - n * x.mean() * y.mean()).abs();
    let cx = sum::norm_sq(x.centered().as_slice());
    let cy = sum::norm_sq(y.centered().as_slice());
    Ok((lhs, (cx * cy).sqrt()))
}

/// `(lhs, rhs, defect)` of the squared product bound
///
/// ```text
/// (sum x_i y_i)^2 <= ||x||^2 ||y||^2
///     - n (|mean(x)| sqrt(||y||^2 - n mean(y)^2) - |mean(y)| sqrt(||x||^2 - n mean(x)^2))^2
/// ```
///
/// The right side equals the square of [`sample_mean_bound`]'s right side;
/// `defect = rhs - lhs`.
pub fn sample_cov_squared_bound(x: &Series, y: &Series) -> Result<(f64, f64, f64)> {
    check_same_len(x, y)?;
    let n = x.len() as f64;
    let lhs = sum::dot(x.as_slice(), y.as_slice()).powi(2);
    let cx = sum::norm_sq(x.centered().as_slice());
    let cy = sum::norm_sq(y.centered().as_slice());
    let cross = x.mean().abs() * cy.sqrt() - y.mean().abs() * cx.sqrt();
    let rhs = sum::norm_sq(x.as_slice()) * sum::norm_sq(y.as_slice()) - n * cross * cross;
    Ok((lhs, rhs, rhs - lhs))
}

/// `(lhs, rhs)` of the moment-form bound under the empirical measure
///
/// ```text
/// (E XY)^2 <= E X^2 E Y^2 - (|E X| sigma_Y - |E Y| sigma_X)^2
/// ```
pub fn expectation_variant_bound(x: &Series, y: &Series) -> Result<(f64, f64)> {
    check_same_len(x, y)?;
    let n = x.len() as f64;
    let lhs = (sum::dot(x.as_slice(), y.as_slice()) / n).powi(2);
    let var_x = sum::norm_sq(x.centered().as_slice()) / n;
    let var_y = sum::norm_sq(y.centered().as_slice()) / n;
    let cross = x.mean().abs() * var_y.sqrt() - y.mean().abs() * var_x.sqrt();
    let mean_sq = |s: &Series| sum::norm_sq(s.as_slice()) / n;
    Ok((lhs, mean_sq(x) * mean_sq(y) - cross * cross))
}

/// One lagged cross-covariance bound evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCovBound {
    /// Forward shift `h` applied to `y`.
    pub lag: usize,
    /// Split dimension `k` of the coordinate-prefix projection.
    pub split: usize,
    /// `(1/n) sum_{t=1}^{n-h} x_t y_{t+h}`.
    pub r_bar: f64,
    /// `D(x_{1:n-h}, y_{1+h:n} | prefix k) / n`.
    pub d_bound: f64,
    /// `||x_{1:n-h}|| ||y_{1+h:n}|| / n`, the unsharpened bound.
    pub cs_bound: f64,
}

/// Split-norm bound at one prefix split, on the `1/n` scale.
fn lag_bound_at(head: &[f64], shifted: &[f64], k: usize, n: f64) -> f64 {
    let p = sum::norm(&head[..k]) * sum::norm(&shifted[..k]);
    let q = sum::norm(&head[k..]) * sum::norm(&shifted[k..]);
    (p + q) / n
}

fn lag_vectors(x: &Series, y: &Series, lag: usize, center: bool) -> Result<(Vec<f64>, Vec<f64>)> {
    check_same_len(x, y)?;
    let n = x.len();
    if lag == 0 || lag >= n {
        return Err(Error::LagOutOfRange { lag, len: n });
    }
    let (xv, yv) = if center {
        (x.centered().into_vec(), y.centered().into_vec())
    } else {
        (x.as_slice().to_vec(), y.as_slice().to_vec())
    };
    let head = xv[..n - lag].to_vec();
    let shifted = yv[lag..].to_vec();
    Ok((head, shifted))
}

/// Bounds the lag-`h` sample cross-covariance by the split-norm refinement:
///
/// ```text
/// |R(h)| <= D(x_{1:n-h}, z | prefix k) / n <= ||x_{1:n-h}|| ||z|| / n
/// ```
///
/// where `z_t = y_{t+h}`. When `center` is set, both series are demeaned
/// first (their full-length sample means), which makes `R(h)` the usual
/// sample cross-covariance; with `center` off, the inputs are taken as
/// already centered.
pub fn cross_cov_bound(
    x: &Series,
    y: &Series,
    lag: usize,
    split: usize,
    center: bool,
) -> Result<CrossCovBound> {
    let (head, shifted) = lag_vectors(x, y, lag, center)?;
    let m = head.len();
    if split == 0 || split > m {
        return Err(Error::SplitOutOfRange { split, max: m });
    }
    let n = x.len() as f64;
    Ok(CrossCovBound {
        lag,
        split,
        r_bar: sum::dot(&head, &shifted) / n,
        d_bound: lag_bound_at(&head, &shifted, split, n),
        cs_bound: (sum::norm(&head) * sum::norm(&shifted)) / n,
    })
}

/// The split minimizing the lag bound: `argmin_k D(x_{1:n-h}, z | prefix k)`,
/// scanned in O(n) with cumulative sums of squares. Ties break toward the
/// smallest `k`; the returned value is re-evaluated with the same pairwise
/// norms [`cross_cov_bound`] uses.
pub fn best_split(x: &Series, y: &Series, lag: usize, center: bool) -> Result<(usize, f64)> {
    let (head, shifted) = lag_vectors(x, y, lag, center)?;
    let m = head.len();
    let n = x.len() as f64;

    let mut head_sq = 0.0;
    let mut shifted_sq = 0.0;
    let mut cum: Vec<(f64, f64)> = Vec::with_capacity(m);
    for t in 0..m {
        head_sq += head[t] * head[t];
        shifted_sq += shifted[t] * shifted[t];
        cum.push((head_sq, shifted_sq));
    }

    let mut k_star = 1;
    let mut best = f64::INFINITY;
    for k in 1..=m {
        let (hx, hz) = cum[k - 1];
        let d = hx.sqrt() * hz.sqrt()
            + (head_sq - hx).max(0.0).sqrt() * (shifted_sq - hz).max(0.0).sqrt();
        if d < best {
            best = d;
            k_star = k;
        }
    }
    Ok((k_star, lag_bound_at(&head, &shifted, k_star, n)))
}

/// Conditional expectation of `x` given the partition, under the empirical
/// measure: every entry is replaced by its group mean.
pub fn conditional_expectation(x: &Series, partition: &Partition) -> Result<Series> {
    ProjectionSpec::PartitionAveraging(partition.clone()).apply(x)
}

/// A correlation evaluation: the classical coefficient and its
/// projection-sharpened counterpart.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    /// Classical correlation `cov / (sigma_X sigma_Y)`, 0 on 0/0.
    pub rho: f64,
    /// Projection correlation `cov / D(x', y' | P)`, 0 on 0/0.
    pub rho_p: f64,
    /// The denominator `D(x', y' | P)` on the empirical scale.
    pub d_denominator: f64,
    /// Empirical covariance.
    pub cov: f64,
}

struct Moments {
    mean_x: f64,
    mean_y: f64,
    cov: f64,
    var_x: f64,
    var_y: f64,
    centered_x: Series,
    centered_y: Series,
}

fn moments(x: &Series, y: &Series) -> Result<Moments> {
    check_same_len(x, y)?;
    let n = x.len() as f64;
    let centered_x = x.centered();
    let centered_y = y.centered();
    Ok(Moments {
        mean_x: x.mean(),
        mean_y: y.mean(),
        cov: sum::dot(centered_x.as_slice(), centered_y.as_slice()) / n,
        var_x: sum::norm_sq(centered_x.as_slice()) / n,
        var_y: sum::norm_sq(centered_y.as_slice()) / n,
        centered_x,
        centered_y,
    })
}

/// A zero denominator forces a zero numerator (the chain pins `|cov|`
/// under `D`), so only 0/0 occurs and it is mapped to 0.
fn correlation_ratio(cov: f64, denom: f64) -> f64 {
    if denom == 0.0 {
        0.0
    } else {
        (cov / denom).clamp(-1.0, 1.0)
    }
}

/// Correlation sharpened by conditioning on a partition:
///
/// ```text
/// rho_p = cov(X, Y) / (sigma_E(X|G) sigma_E(Y|G)
///                      + sqrt(sigma_X^2 - sigma_E(X|G)^2) sqrt(sigma_Y^2 - sigma_E(Y|G)^2))
/// ```
///
/// For the trivial one-group partition and for the all-singletons partition
/// the denominator collapses to `sigma_X sigma_Y` and `rho_p` equals the
/// classical `rho` exactly.
pub fn conditional_corr(
    x: &Series,
    y: &Series,
    partition: &Partition,
) -> Result<CorrelationReport> {
    let mom = moments(x, y)?;
    let n = x.len() as f64;
    let cond_x = conditional_expectation(x, partition)?;
    let cond_y = conditional_expectation(y, partition)?;
    // Conditional expectation preserves the mean, so the group-mean vector
    // is centered against the global mean rather than a recomputed one.
    let var_about = |cond: &Series, mean: f64| {
        sum::sum_terms(cond.len(), |i| (cond[i] - mean) * (cond[i] - mean)) / n
    };
    let var_ex = var_about(&cond_x, mom.mean_x);
    let var_ey = var_about(&cond_y, mom.mean_y);
    let d_denominator = var_ex.sqrt() * var_ey.sqrt()
        + (mom.var_x - var_ex).max(0.0).sqrt() * (mom.var_y - var_ey).max(0.0).sqrt();
    Ok(CorrelationReport {
        rho: correlation_ratio(mom.cov, mom.var_x.sqrt() * mom.var_y.sqrt()),
        rho_p: correlation_ratio(mom.cov, d_denominator),
        d_denominator,
        cov: mom.cov,
    })
}

/// Correlation sharpened by an arbitrary projection: the centered series
/// are run through [`d_function`] and the result rescaled to the empirical
/// measure, so `rho_p = cov / (D(x', y' | P) / n)`. With the identity
/// projection this is the classical coefficient.
pub fn p_correlation(x: &Series, y: &Series, spec: &ProjectionSpec) -> Result<CorrelationReport> {
    let mom = moments(x, y)?;
    let n = x.len() as f64;
    let report = d_function(&mom.centered_x, &mom.centered_y, spec)?;
    let d_denominator = report.d_value / n;
    Ok(CorrelationReport {
        rho: correlation_ratio(mom.cov, mom.var_x.sqrt() * mom.var_y.sqrt()),
        rho_p: correlation_ratio(mom.cov, d_denominator),
        d_denominator,
        cov: mom.cov,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(values: &[f64]) -> Series {
        Series::from_slice(values).unwrap()
    }

    #[test]
    fn mean_bound_matches_hand_computations() {
        let (lhs, rhs) = sample_mean_bound(&series(&[1.0, 1.0]), &series(&[1.0, 1.0])).unwrap();
        assert_eq!((lhs, rhs), (2.0, 2.0));

        let (lhs, rhs) =
            sample_mean_bound(&series(&[1.0, 2.0, 3.0]), &series(&[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(lhs, 10.0);
        assert!((rhs - 14.0).abs() < 1e-12);

        // zero means: the bound collapses onto plain Cauchy-Schwarz
        let x = series(&[1.0, -1.0]);
        let (lhs, rhs) = sample_mean_bound(&x, &x).unwrap();
        assert_eq!(lhs, 2.0);
        assert_eq!(rhs, x.norm() * x.norm());
        assert!((rhs - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_mean_bound_equals_cauchy_schwarz_bitwise() {
        let x = series(&[1.0, -2.0, 1.5, -0.5]);
        let y = series(&[0.25, 0.75, -0.5, -0.5]);
        assert_eq!(x.mean(), 0.0);
        assert_eq!(y.mean(), 0.0);
        let (_, rhs) = sample_mean_bound(&x, &y).unwrap();
        assert_eq!(rhs, x.norm() * y.norm());
    }

    #[test]
    fn cov_bound_equality_cases_are_exact() {
        let s = series(&[1.0, 2.0, 3.0]);
        let (lhs, rhs) = sample_cov_bound(&s, &s).unwrap();
        assert_eq!((lhs, rhs), (2.0, 2.0));

        let constant = series(&[4.0, 4.0, 4.0]);
        let (lhs, rhs) = sample_cov_bound(&constant, &series(&[1.0, 5.0, 9.0])).unwrap();
        assert_eq!((lhs, rhs), (0.0, 0.0));

        let (lhs, rhs) = sample_cov_bound(
            &series(&[1.0, 2.0, 3.0, 4.0]),
            &series(&[4.0, 3.0, 2.0, 1.0]),
        )
        .unwrap();
        assert_eq!((lhs, rhs), (5.0, 5.0));
    }

    #[test]
    fn squared_bound_matches_hand_computations() {
        let (lhs, rhs, defect) =
            sample_cov_squared_bound(&series(&[1.0, 2.0, 3.0]), &series(&[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(lhs, 100.0);
        assert!((rhs - 196.0).abs() < 1e-9);
        assert!((defect - 96.0).abs() < 1e-9);

        // zero-mean data: no improvement over plain Cauchy-Schwarz
        let x = series(&[1.0, -1.0, 2.0, -2.0]);
        let y = series(&[3.0, 1.0, -1.0, -3.0]);
        let (_, rhs, _) = sample_cov_squared_bound(&x, &y).unwrap();
        assert_eq!(rhs, sum::norm_sq(x.as_slice()) * sum::norm_sq(y.as_slice()));

        let (lhs, rhs, _) =
            sample_cov_squared_bound(&series(&[1.0, 1.0]), &series(&[1.0, -1.0])).unwrap();
        assert_eq!(lhs, 0.0);
        assert!(rhs.abs() < 1e-12);
    }

    #[test]
    fn squared_bound_agrees_with_squared_mean_bound() {
        let x = series(&[0.3, -1.2, 2.4, 0.9, -0.1]);
        let y = series(&[1.4, 0.2, -0.8, 2.2, 1.0]);
        let (_, mean_rhs) = sample_mean_bound(&x, &y).unwrap();
        let (_, sq_rhs, _) = sample_cov_squared_bound(&x, &y).unwrap();
        assert!((mean_rhs * mean_rhs - sq_rhs).abs() <= 1e-9 * sq_rhs.abs().max(1.0));
    }

    #[test]
    fn expectation_variant_matches_hand_computations() {
        let x = series(&[1.0, 2.0, 3.0]);
        let y = series(&[3.0, 2.0, 1.0]);
        let (lhs, rhs) = expectation_variant_bound(&x, &y).unwrap();
        assert!((lhs - (10.0_f64 / 3.0).powi(2)).abs() < 1e-12);
        assert!((rhs - (14.0_f64 / 3.0).powi(2)).abs() < 1e-12);

        let xc = series(&[1.0, -1.0]);
        let (_, rhs) = expectation_variant_bound(&xc, &xc).unwrap();
        assert_eq!(rhs, 1.0); // centered case: plain product of mean squares

        // x = y: the gap is a squaring-identity defect, never negative
        let (lhs, rhs) = expectation_variant_bound(&x, &x).unwrap();
        assert!(rhs - lhs >= -1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn cross_cov_bound_matches_hand_computations() {
        // orthogonal shift: every product vanishes
        let s = series(&[1.0, 0.0, 1.0, 0.0]);
        let b = cross_cov_bound(&s, &s, 1, 1, false).unwrap();
        assert_eq!(b.r_bar, 0.0);
        assert!(b.d_bound >= 0.0);

        let s = series(&[1.0, 2.0, 3.0, 4.0]);
        let b = cross_cov_bound(&s, &s, 1, 1, false).unwrap();
        assert_eq!(b.r_bar, 5.0);
        let expected = (2.0 + 13.0_f64.sqrt() * 5.0) / 4.0;
        assert!((b.d_bound - expected).abs() < 1e-12);
        assert!(b.r_bar.abs() <= b.d_bound && b.d_bound <= b.cs_bound + 1e-12);
    }

    #[test]
    fn full_prefix_split_equals_cs_bound_bitwise() {
        let x = series(&[0.5, -1.0, 2.0, 0.25, -0.75]);
        let y = series(&[1.0, 2.0, -1.5, 0.5, 1.25]);
        let b = cross_cov_bound(&x, &y, 2, 3, true).unwrap();
        assert_eq!(b.d_bound, b.cs_bound);
    }

    #[test]
    fn lag_and_split_ranges_are_enforced() {
        let s = series(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            cross_cov_bound(&s, &s, 0, 1, true),
            Err(Error::LagOutOfRange { .. })
        ));
        assert!(matches!(
            cross_cov_bound(&s, &s, 3, 1, true),
            Err(Error::LagOutOfRange { .. })
        ));
        assert!(matches!(
            cross_cov_bound(&s, &s, 1, 3, true),
            Err(Error::SplitOutOfRange { .. })
        ));
    }

    #[test]
    fn best_split_handles_the_single_candidate() {
        let s = series(&[1.0, 2.0]);
        let (k, d) = best_split(&s, &s, 1, false).unwrap();
        assert_eq!(k, 1);
        let b = cross_cov_bound(&s, &s, 1, 1, false).unwrap();
        assert_eq!(d, b.d_bound);
    }

    #[test]
    fn best_split_is_tight_on_blockwise_proportional_data() {
        // head blocks (u, v), shifted blocks (2u, 0.5v): the split at the
        // block boundary turns the bound into |r_bar| exactly.
        let u = [1.0, 2.0, -1.0];
        let v = [0.5, -1.5, 1.0, 2.5];
        let lag = 2;
        let mut xv: Vec<f64> = u.iter().chain(&v).copied().collect();
        xv.extend([0.0; 2]);
        let mut yv = vec![0.0; lag];
        yv.extend(u.iter().map(|a| 2.0 * a));
        yv.extend(v.iter().map(|a| 0.5 * a));
        let x = series(&xv);
        let y = series(&yv);
        let (k, d) = best_split(&x, &y, lag, false).unwrap();
        assert_eq!(k, u.len());
        let b = cross_cov_bound(&x, &y, lag, k, false).unwrap();
        assert!((d - b.r_bar.abs()).abs() <= 1e-12 * b.cs_bound);
    }

    #[test]
    fn conditional_expectation_takes_group_means() {
        let x = series(&[1.0, 2.0, 3.0, 4.0]);
        let p = Partition::new(&[0, 0, 1, 1]).unwrap();
        let e = conditional_expectation(&x, &p).unwrap();
        assert_eq!(e.as_slice(), &[1.5, 1.5, 3.5, 3.5]);

        let trivial = Partition::trivial(4).unwrap();
        let e = conditional_expectation(&x, &trivial).unwrap();
        assert_eq!(e.as_slice(), &[2.5; 4]);

        let singles = Partition::singletons(4).unwrap();
        let e = conditional_expectation(&x, &singles).unwrap();
        assert_eq!(e.as_slice(), x.as_slice());
    }

    #[test]
    fn degenerate_partitions_reduce_to_classical_correlation() {
        let x = series(&[1.0, 2.0, 3.0, 4.0, 6.0]);
        let y = series(&[2.0, 1.0, 4.0, 3.0, 5.0]);
        for p in [
            Partition::trivial(5).unwrap(),
            Partition::singletons(5).unwrap(),
        ] {
            let r = conditional_corr(&x, &y, &p).unwrap();
            assert_eq!(r.rho_p, r.rho);
        }
    }

    #[test]
    fn conditional_corr_agrees_with_projection_route() {
        let x = series(&[1.0, 2.0, 3.0, 4.0]);
        let y = series(&[1.0, 2.0, 4.0, 3.0]);
        let p = Partition::new(&[0, 0, 1, 1]).unwrap();
        let direct = conditional_corr(&x, &y, &p).unwrap();
        let via_d = p_correlation(&x, &y, &ProjectionSpec::PartitionAveraging(p)).unwrap();
        assert!((direct.rho_p - via_d.rho_p).abs() <= 1e-9 * direct.rho_p.abs().max(1.0));
        assert!(
            (direct.d_denominator - via_d.d_denominator).abs()
                <= 1e-9 * direct.d_denominator.max(1.0)
        );
    }

    #[test]
    fn p_correlation_identity_is_classical() {
        let x = series(&[1.0, 2.0, 3.0, 5.0]);
        let y = series(&[2.0, 2.5, 2.0, 4.0]);
        let r = p_correlation(&x, &y, &ProjectionSpec::Identity).unwrap();
        assert!((r.rho_p - r.rho).abs() <= 1e-12);
    }

    #[test]
    fn p_correlation_span_of_centered_x_saturates() {
        let x = series(&[1.0, 2.0, 3.0, 5.0]);
        let y = series(&[2.0, 2.5, 2.0, 4.0]);
        let spec = ProjectionSpec::span_of(x.centered()).unwrap();
        let r = p_correlation(&x, &y, &spec).unwrap();
        assert!(r.cov != 0.0);
        assert!(r.rho_p.abs() >= 1.0 - 1e-9 && r.rho_p.abs() <= 1.0);
    }

    #[test]
    fn zero_covariance_gives_zero_coefficient() {
        let x = series(&[1.0, -1.0, 1.0, -1.0]);
        let y = series(&[1.0, 1.0, -1.0, -1.0]);
        let r = p_correlation(&x, &y, &ProjectionSpec::MeanDirection).unwrap();
        assert_eq!(r.cov, 0.0);
        assert_eq!(r.rho_p, 0.0);

        // constant series: 0/0 convention
        let c = series(&[2.0, 2.0, 2.0, 2.0]);
        let r = conditional_corr(&c, &c, &Partition::trivial(4).unwrap()).unwrap();
        assert_eq!(r.rho, 0.0);
        assert_eq!(r.rho_p, 0.0);
    }
}
