//! Orthonormal function systems on the unit interval, with an affine map
//! from a data domain `[a, b]` onto `[0, 1]`.
//!
//! The first element of every family is the constant 1, so the leading
//! sample coefficient of any probability density is exactly 1.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};

/// The function system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// `e_1 = 1`, `e_k(u) = sqrt(2) cos(pi (k-1) u)` for `k >= 2`.
    Cosine,
    /// `e_1 = 1`, `e_{2j}(u) = sqrt(2) cos(2 pi j u)`,
    /// `e_{2j+1}(u) = sqrt(2) sin(2 pi j u)`.
    Trigonometric,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Cosine => "cosine",
            BasisKind::Trigonometric => "trigonometric",
        }
    }
}

/// An orthonormal basis of L2[0, 1] together with the data domain it is
/// fed from. Observations in `[a, b]` are mapped affinely onto `[0, 1]`;
/// values outside the domain are rejected, not clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisFamily {
    kind: BasisKind,
    lower: f64,
    upper: f64,
}

impl BasisFamily {
    pub fn new(kind: BasisKind, lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || !upper.is_finite() || lower >= upper {
            return Err(Error::DomainError(format!(
                "invalid basis domain [{lower}, {upper}]"
            )));
        }
        Ok(BasisFamily { kind, lower, upper })
    }

    /// Cosine system on the unit interval.
    pub fn unit_cosine() -> Self {
        BasisFamily {
            kind: BasisKind::Cosine,
            lower: 0.0,
            upper: 1.0,
        }
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    /// Maps an observation into `[0, 1]`, rejecting out-of-domain values.
    pub fn map(&self, value: f64) -> Result<f64> {
        let u = (value - self.lower) / (self.upper - self.lower);
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::DomainError(format!(
                "observation {value} outside basis domain [{}, {}]",
                self.lower, self.upper
            )));
        }
        Ok(u)
    }

    /// Evaluates `e_k(u)` for `k >= 1` and `u` in `[0, 1]`.
    pub fn eval(&self, k: usize, u: f64) -> Result<f64> {
        if k == 0 {
            return Err(Error::DomainError("basis index starts at 1".into()));
        }
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::DomainError(format!("{u} outside [0, 1]")));
        }
        Ok(self.eval_unchecked(k, u))
    }

    pub(crate) fn eval_unchecked(&self, k: usize, u: f64) -> f64 {
        debug_assert!(k >= 1 && (0.0..=1.0).contains(&u));
        if k == 1 {
            return 1.0;
        }
        match self.kind {
            BasisKind::Cosine => SQRT_2 * (PI * (k - 1) as f64 * u).cos(),
            BasisKind::Trigonometric => {
                let j = (k / 2) as f64;
                if k.is_multiple_of(2) {
                    SQRT_2 * (2.0 * PI * j * u).cos()
                } else {
                    SQRT_2 * (2.0 * PI * j * u).sin()
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature;

    #[test]
    fn first_element_is_constant_one() {
        let basis = BasisFamily::unit_cosine();
        for u in [0.0, 0.25, 0.7, 1.0] {
            assert_eq!(basis.eval(1, u).unwrap(), 1.0);
        }
    }

    #[test]
    fn cosine_values_match_hand_computations() {
        let basis = BasisFamily::unit_cosine();
        assert!((basis.eval(2, 0.0).unwrap() - SQRT_2).abs() < 1e-15);
        assert!((basis.eval(3, 0.5).unwrap() + SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn domain_mapping_rejects_outside_values() {
        let basis = BasisFamily::new(BasisKind::Cosine, -2.0, 2.0).unwrap();
        assert_eq!(basis.map(-2.0).unwrap(), 0.0);
        assert_eq!(basis.map(2.0).unwrap(), 1.0);
        assert_eq!(basis.map(0.0).unwrap(), 0.5);
        assert!(basis.map(2.1).is_err());
        assert!(basis.eval(2, 1.5).is_err());
        assert!(basis.eval(0, 0.5).is_err());
        assert!(BasisFamily::new(BasisKind::Cosine, 1.0, 1.0).is_err());
    }

    #[test]
    fn both_families_are_orthonormal_under_quadrature() {
        for kind in [BasisKind::Cosine, BasisKind::Trigonometric] {
            let basis = BasisFamily::new(kind, 0.0, 1.0).unwrap();
            for j in 1..=8usize {
                for k in j..=8usize {
                    let f = |u: f64| basis.eval_unchecked(j, u) * basis.eval_unchecked(k, u);
                    let v = quadrature::adaptive(&f, 0.0, 1.0, 1e-10, 2 * (j + k)).unwrap();
                    let target = if j == k { 1.0 } else { 0.0 };
                    assert!((v - target).abs() < 1e-8, "{kind:?} <e{j}, e{k}> = {v}");
                }
            }
        }
    }
}
