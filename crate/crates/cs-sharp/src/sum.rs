//! Deterministic pairwise (cascade) summation.
//!
//! Every inner product and squared norm in this crate is accumulated by the
//! same fixed-split recursion, so results are reproducible bit for bit and
//! do not depend on caller-side parallelism. The recursion splits a range of
//! length `len` at `len / 2`; in particular a range of even length splits
//! exactly in half, so summing `[0, 2N)` equals summing `[0, N)` and
//! `[N, 2N)` and adding the two partial sums. Several exact-equality cases
//! in the bound reports rely on that property.

/// Pairwise sum of `f(i)` for `i` in `[start, start + len)`.
fn pairwise<F: Fn(usize) -> f64>(start: usize, len: usize, term: &F) -> f64 {
    match len {
        0 => 0.0,
        1 => term(start),
        2 => term(start) + term(start + 1),
        _ => {
            let half = len / 2;
            pairwise(start, half, term) + pairwise(start + half, len - half, term)
        }
    }
}

/// Pairwise sum of an indexed term function over `0..len`.
pub fn sum_terms<F: Fn(usize) -> f64>(len: usize, term: F) -> f64 {
    pairwise(0, len, &term)
}

/// Pairwise sum of a slice.
pub fn sum(values: &[f64]) -> f64 {
    pairwise(0, values.len(), &|i| values[i])
}

/// Arithmetic mean, pairwise-accumulated. Zero for an empty slice.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    sum(values) / values.len() as f64
}

/// Inner product `<x, y>`. Callers must pass equal-length slices.
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    pairwise(0, x.len(), &|i| x[i] * y[i])
}

/// Squared Euclidean norm.
pub fn norm_sq(x: &[f64]) -> f64 {
    pairwise(0, x.len(), &|i| x[i] * x[i])
}

/// Euclidean norm.
pub fn norm(x: &[f64]) -> f64 {
    norm_sq(x).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_matches_naive_on_small_inputs() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(sum(&xs), 15.0);
        assert_eq!(sum(&[]), 0.0);
        assert_eq!(sum(&[7.5]), 7.5);
    }

    #[test]
    fn even_length_splits_exactly_in_half() {
        // The bit-exact decomposition the divergence estimator relies on.
        let xs: Vec<f64> = (0..64).map(|i| (i as f64 * 0.7).sin() / 3.0).collect();
        for half in [1usize, 2, 4, 8, 16, 32] {
            let n = 2 * half;
            let whole = sum(&xs[..n]);
            let parts = sum(&xs[..half]) + sum(&xs[half..n]);
            assert_eq!(whole, parts, "split mismatch at n = {n}");
        }
    }

    #[test]
    fn dot_and_norms_are_consistent() {
        let x = [3.0, 4.0];
        assert_eq!(dot(&x, &x), 25.0);
        assert_eq!(norm_sq(&x), 25.0);
        assert_eq!(norm(&x), 5.0);
    }

    #[test]
    fn pairwise_is_more_accurate_than_naive_on_long_sums() {
        let n = 1 << 20;
        let xs = vec![0.1_f64; n];
        let naive: f64 = xs.iter().sum();
        let cascade = sum(&xs);
        let exact = 0.1 * n as f64;
        assert!((cascade - exact).abs() <= (naive - exact).abs());
    }
}
