use crate::cone::theta_f64;
use crate::{s20_dim, Error, Result};

/// Tolerance on `Σx = N` for membership.
pub const SUM_TOL: f64 = 1e-10;
/// Slack allowed on the pair constraint for membership.
pub const PAIR_TOL: f64 = 1e-12;

/// Normalized cubic `F(x) = Σx³ − (3 − 2β)Σx² + 2N(1 − β)`.
pub fn big_f(x: &[f64], beta: f64) -> f64 {
    let n = x.len() as f64;
    let (s2, s3) = x
        .iter()
        .fold((0.0, 0.0), |(s2, s3), v| (s2 + v * v, s3 + v * v * v));
    s3 - (3.0 - 2.0 * beta) * s2 + 2.0 * n * (1.0 - beta)
}

/// Sum of the two smallest coordinates.
pub fn min_pair(x: &[f64]) -> f64 {
    let (mut a, mut b) = (f64::INFINITY, f64::INFINITY);
    for &v in x {
        if v < a {
            b = a;
            a = v;
        } else if v < b {
            b = v;
        }
    }
    a + b
}

/// `{x ∈ R^N : Σx = N, x_i + x_j >= −2(β − 1) for i ≠ j}` with `β = 1 + θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeasibleSet {
    big_n: usize,
    beta: f64,
}

impl FeasibleSet {
    /// `β = 1` is the degenerate two-nonnegative case; `β < 1` is rejected.
    pub fn new(big_n: usize, beta: f64) -> Result<Self> {
        if big_n < 3 {
            return Err(Error::InvalidArgument(format!("N = {big_n} < 3")));
        }
        if !(beta >= 1.0 && beta.is_finite()) {
            return Err(Error::InvalidArgument(format!("beta = {beta} must be >= 1")));
        }
        Ok(Self { big_n, beta })
    }

    /// `N = (n−1)(n+2)/2`, `β = 1 + θ(n)`.
    pub fn for_dimension(n: usize) -> Result<Self> {
        Self::new(s20_dim(n), 1.0 + theta_f64(n)?)
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `−2(β − 1)`.
    pub fn pair_bound(&self) -> f64 {
        -2.0 * (self.beta - 1.0)
    }

    /// Admissible range of the second-smallest coordinate on the active face.
    pub fn a_range(&self) -> (f64, f64) {
        let n = self.big_n as f64;
        (-(self.beta - 1.0), (n - 2.0 + 2.0 * self.beta) / (n - 2.0))
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.big_n
            && (x.iter().sum::<f64>() - self.big_n as f64).abs() <= SUM_TOL * (self.big_n as f64)
            && min_pair(x) >= self.pair_bound() - PAIR_TOL
    }

    pub fn f(&self, x: &[f64]) -> f64 {
        big_f(x, self.beta)
    }

    pub fn round_minimizer(&self) -> Vec<f64> {
        vec![1.0; self.big_n]
    }

    /// `(−(2(N−1)(β−1) + N)/(N−2), (N−2+2β)/(N−2), …)`.
    pub fn boundary_minimizer(&self) -> Vec<f64> {
        let n = self.big_n as f64;
        let theta = self.beta - 1.0;
        let mut x = vec![(n + 2.0 * theta) / (n - 2.0); self.big_n];
        x[0] = -(2.0 * (n - 1.0) * theta + n) / (n - 2.0);
        x
    }

    /// `β − 1 = θ(n)` for the dimension `n` with `N(n) = N`, if any.
    pub fn is_certified(&self) -> bool {
        (2..=4096)
            .find(|&n| s20_dim(n) >= self.big_n)
            .filter(|&n| s20_dim(n) == self.big_n)
            .and_then(|n| theta_f64(n).ok())
            .is_some_and(|t| (1.0 + t - self.beta).abs() <= 1e-15 * self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        assert_eq!(big_f(&[1.0; 9], 1.5), 0.0);
        let mut x = vec![0.0; 9];
        x[8] = 9.0;
        assert_eq!(big_f(&x, 1.5), 720.0);
        assert!(FeasibleSet::new(9, 1.5).unwrap().contains(&x));
    }

    #[test]
    fn minimizers_are_zeros_of_f() {
        for n in [4, 5, 8, 9, 10, 12] {
            let set = FeasibleSet::for_dimension(n).unwrap();
            assert!(set.f(&set.round_minimizer()).abs() < 1e-12);
            let b = set.boundary_minimizer();
            assert!(set.contains(&b));
            assert!(set.f(&b).abs() < 1e-10, "n = {n}: {}", set.f(&b));
            assert!((min_pair(&b) - set.pair_bound()).abs() < 1e-12);
            assert!(set.is_certified());
        }
    }

    #[test]
    fn n4_boundary_profile() {
        let b = FeasibleSet::for_dimension(4).unwrap().boundary_minimizer();
        assert!((b[0] + 17.0 / 7.0).abs() < 1e-15);
        assert!((b[1] - 10.0 / 7.0).abs() < 1e-15);
        let b8 = FeasibleSet::for_dimension(8).unwrap().boundary_minimizer();
        assert!((b8[0] + 38.4 / 33.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FeasibleSet::new(2, 1.5).is_err());
        assert!(FeasibleSet::new(9, 0.9).is_err());
        assert!(FeasibleSet::new(9, f64::NAN).is_err());
        assert!(FeasibleSet::new(9, 1.0).is_ok());
        assert!(!FeasibleSet::new(9, 1.4).unwrap().is_certified());
    }

    #[test]
    fn min_pair_of_unsorted() {
        assert_eq!(min_pair(&[3.0, -1.0, 2.0, -0.5]), -1.5);
    }
}
