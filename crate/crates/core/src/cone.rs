//! The cone condition `C(α, θ)`:
//! `α⁻¹(λ₁ + ⋯ + λ_α) >= −θ λ̄`, with a fractional partial sum for
//! non-integer `α`, and the exact dimension constants `θ(n)`.

use num_rational::Rational64;
use serde::Serialize;

use crate::{s20_dim, Error, Result};

/// Tolerance separating `Boundary` from `Strict` / `Violated`.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// `θ(n)`: `1/2` for `n = 4`, `2/3` for `n = 5`, `(2N − 9n + 6)/(N + 6n − 3)`
/// for `n >= 8`. Dimensions 6 and 7 (and `n < 4`) are not covered.
pub fn theta_of_n(n: usize) -> Result<Rational64> {
    match n {
        4 => Ok(Rational64::new(1, 2)),
        5 => Ok(Rational64::new(2, 3)),
        n if n >= 8 => {
            let (n, big_n) = (n as i64, s20_dim(n) as i64);
            Ok(Rational64::new(2 * big_n - 9 * n + 6, big_n + 6 * n - 3))
        }
        _ => Err(Error::UnsupportedDimension {
            n,
            reason: "no cone constant for n < 4 or n in {6, 7}",
        }),
    }
}

pub fn theta_f64(n: usize) -> Result<f64> {
    theta_of_n(n).map(|t| *t.numer() as f64 / *t.denom() as f64)
}

/// `0 < θ(n) < 2(n−1)/(n+2)`, decided exactly.
pub fn theta_window_holds(n: usize) -> Result<bool> {
    let theta = theta_of_n(n)?;
    let upper = Rational64::new(2 * (n as i64 - 1), n as i64 + 2);
    Ok(theta > Rational64::from_integer(0) && theta < upper)
}

/// Both sides of the two coefficient identities used to collapse the lower
/// bound on `<ΔR, R>` for `n >= 8`:
/// `(N−3)θ − (2N−9n+6) = −6nθ` and `(2N−12n+6) − (N−3)θ = 6nθ − 3n`.
pub fn coefficient_identities(n: usize) -> Result<[(Rational64, Rational64); 2]> {
    if n < 8 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "coefficient identities hold for n >= 8",
        });
    }
    let theta = theta_of_n(n)?;
    let r = |x: i64| Rational64::from_integer(x);
    let (nn, big_n) = (n as i64, s20_dim(n) as i64);
    let first = (
        r(big_n - 3) * theta - r(2 * big_n - 9 * nn + 6),
        r(-6 * nn) * theta,
    );
    let second = (
        r(2 * big_n - 12 * nn + 6) - r(big_n - 3) * theta,
        r(6 * nn) * theta - r(3 * nn),
    );
    Ok([first, second])
}

/// `λ₁ + ⋯ + λ_α := Σ_{i<=⌊α⌋} λ_i + (α − ⌊α⌋) λ_{⌊α⌋+1}` over ascending values.
pub fn partial_sum(values: &[f64], alpha: f64) -> Result<f64> {
    let len = values.len();
    if !(alpha >= 1.0 && alpha < len as f64) {
        return Err(Error::InvalidArgument(format!(
            "alpha = {alpha} outside [1, {len})"
        )));
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("spectrum must be sorted ascending".into()));
    }
    let whole = alpha.floor() as usize;
    let frac = alpha - whole as f64;
    let head: f64 = values[..whole].iter().sum();
    Ok(if frac > 0.0 {
        head + frac * values[whole]
    } else {
        head
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeParams {
    pub alpha: f64,
    pub theta: f64,
}

impl ConeParams {
    /// Checks `α >= 1` and `θ > −1`; `α < N` is checked against the spectrum.
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha >= 1.0) {
            return Err(Error::InvalidArgument(format!("alpha = {alpha} < 1")));
        }
        if !(theta > -1.0) {
            return Err(Error::InvalidArgument(format!("theta = {theta} <= -1")));
        }
        Ok(Self { alpha, theta })
    }

    /// `(2, θ(n))`, the condition `λ₁ + λ₂ >= −2θ(n) λ̄`.
    pub fn for_dimension(n: usize) -> Result<Self> {
        Self::new(2.0, theta_f64(n)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeStatus {
    Strict,
    Boundary,
    Violated,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConeVerdict {
    pub status: ConeStatus,
    /// `α⁻¹·partial_sum + θ λ̄`; non-negative inside the cone.
    pub margin: f64,
}

pub fn cone_membership(values: &[f64], params: ConeParams) -> Result<ConeVerdict> {
    cone_membership_with_tol(values, params, BOUNDARY_TOL)
}

pub fn cone_membership_with_tol(values: &[f64], params: ConeParams, tol: f64) -> Result<ConeVerdict> {
    let head = partial_sum(values, params.alpha)?;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let margin = head / params.alpha + params.theta * mean;
    let status = if margin > tol {
        ConeStatus::Strict
    } else if margin >= -tol {
        ConeStatus::Boundary
    } else {
        ConeStatus::Violated
    };
    Ok(ConeVerdict { status, margin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn theta_constants() {
        assert_eq!(theta_of_n(4).unwrap(), Rational64::new(1, 2));
        assert_eq!(theta_of_n(5).unwrap(), Rational64::new(2, 3));
        assert_eq!(theta_of_n(8).unwrap(), Rational64::new(1, 20));
        for n in [0, 1, 2, 3, 6, 7] {
            assert!(theta_of_n(n).is_err(), "n = {n}");
        }
    }

    #[test]
    fn window_and_identities() {
        for n in 8..=64 {
            assert!(theta_window_holds(n).unwrap(), "n = {n}");
            for (lhs, rhs) in coefficient_identities(n).unwrap() {
                assert_eq!(lhs, rhs, "n = {n}");
            }
        }
        assert!(coefficient_identities(5).is_err());
    }

    #[test]
    fn partial_sums() {
        let mut spec = vec![1.0; 9];
        spec[0] = -2.0;
        assert_eq!(partial_sum(&spec, 1.5).unwrap(), -1.5);
        assert_eq!(partial_sum(&[0.5, 0.7, 2.0], 2.0).unwrap(), 1.2);
        assert!(partial_sum(&spec, 0.5).is_err());
        assert!(partial_sum(&spec, 9.0).is_err());
        assert!(partial_sum(&[2.0, 1.0, 3.0], 1.0).is_err());
    }

    #[test]
    fn membership_examples() {
        let ones = vec![1.0; 14];
        let v = cone_membership(&ones, ConeParams::new(2.0, 0.0).unwrap()).unwrap();
        assert_eq!(v.status, ConeStatus::Strict);
        assert!((v.margin - 1.0).abs() < 1e-15);

        let mut bad = vec![1.0; 14];
        bad[0] = -3.0;
        let v = cone_membership(&bad, ConeParams::new(2.0, 0.0).unwrap()).unwrap();
        assert_eq!(v.status, ConeStatus::Violated);
    }

    #[test]
    fn params_validation() {
        assert!(ConeParams::new(0.9, 0.0).is_err());
        assert!(ConeParams::new(2.0, -1.0).is_err());
        assert!(ConeParams::new(2.0, f64::NAN).is_err());
        assert!(ConeParams::for_dimension(6).is_err());
        assert_eq!(ConeParams::for_dimension(8).unwrap().theta, 0.05);
    }

    fn sorted_spectrum() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-5.0f64..5.0, 3..40).prop_map(|mut v| {
            v.sort_by(f64::total_cmp);
            v
        })
    }

    proptest! {
        #[test]
        fn integer_alpha_matches_naive(spec in sorted_spectrum(), pick in 0usize..1000) {
            let m = 1 + pick % (spec.len() - 1);
            let mut copy = spec.clone();
            copy.sort_by(f64::total_cmp);
            let naive: f64 = copy.iter().take(m).sum();
            prop_assert!((partial_sum(&spec, m as f64).unwrap() - naive).abs() < 1e-12);
        }

        #[test]
        fn status_is_scale_invariant(
            spec in sorted_spectrum(),
            c in 0.01f64..100.0,
            theta in -0.9f64..3.0,
        ) {
            let p = ConeParams::new(2.0, theta).unwrap();
            let a = cone_membership(&spec, p).unwrap();
            let scaled: Vec<f64> = spec.iter().map(|x| c * x).collect();
            let b = cone_membership(&scaled, p).unwrap();
            // skip spectra sitting within rounding of the boundary
            prop_assume!(a.margin.abs() > 1e-9 && b.margin.abs() > 1e-9);
            prop_assert_eq!(a.status, b.status);
        }

        #[test]
        fn monotone_in_theta(
            raw in sorted_spectrum(),
            lift in 0.0f64..8.0,
            theta0 in -0.9f64..2.0,
            bump in 1e-3f64..2.0,
        ) {
            let spec: Vec<f64> = raw.iter().map(|x| x + lift).collect();
            let mean = spec.iter().sum::<f64>() / spec.len() as f64;
            prop_assume!(mean > 1e-3);
            let a = cone_membership(&spec, ConeParams::new(2.0, theta0).unwrap()).unwrap();
            prop_assume!(a.status != ConeStatus::Violated);
            let b = cone_membership(&spec, ConeParams::new(2.0, theta0 + bump).unwrap()).unwrap();
            prop_assert_eq!(b.status, ConeStatus::Strict);
        }
    }
}
