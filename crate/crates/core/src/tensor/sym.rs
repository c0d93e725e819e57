use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dense symmetric `n × n` matrix, stored row-major with both triangles.
///
/// Used for the metric, Ricci tensors, elements of `S²(V)` and, at size `N`,
/// the matrix of the operator of the second kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from the upper triangle `f(i, j)`, `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.entries[i * n + j] = v;
                m.entries[j * n + i] = v;
            }
        }
        m
    }

    /// Accepts a full row-major table, checks symmetry to `tol` and averages
    /// the two triangles.
    pub fn from_rows(n: usize, rows: Vec<f64>, tol: f64) -> Result<Self> {
        if rows.len() != n * n {
            return Err(Error::DimensionMismatch(rows.len(), n * n));
        }
        let mut m = Self { n, entries: rows };
        let defect = m.asymmetry();
        if defect > tol {
            return Err(Error::InvalidArgument(format!(
                "matrix asymmetry {defect:.3e} exceeds {tol:.1e}"
            )));
        }
        for i in 0..n {
            for j in i + 1..n {
                let v = 0.5 * (m.entries[i * n + j] + m.entries[j * n + i]);
                m.entries[i * n + j] = v;
                m.entries[j * n + i] = v;
            }
        }
        Ok(m)
    }

    /// `e_i ⊗ e_j + e_j ⊗ e_i`.
    pub fn sym_product(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.entries[i * n + j] += 1.0;
        m.entries[j * n + i] += 1.0;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `tr(Aᵀ B)`, the inner product on `S²(V)`.
    pub fn inner(&self, other: &SymMatrix) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max((self.entries[i * n + j] - self.entries[j * n + i]).abs());
            }
        }
        worst
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|v| c * v).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `Σ_b c_b M_b` for matrices of equal size.
    pub fn linear_combination(coeffs: &[f64], mats: &[SymMatrix]) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let n = mats.first().map_or(0, |m| m.n);
        let mut out = Self::zeros(n);
        for (c, m) in coeffs.iter().zip(mats) {
            if *c == 0.0 {
                continue;
            }
            for (o, v) in out.entries.iter_mut().zip(&m.entries) {
                *o += c * v;
            }
        }
        out
    }

    fn zip_with(&self, other: &SymMatrix, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;
    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&SymMatrix> for f64 {
    type Output = SymMatrix;
    fn mul(self, rhs: &SymMatrix) -> SymMatrix {
        rhs.scaled(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_rejects_asymmetric() {
        let rows = vec![1.0, 2.0, 2.5, 1.0];
        assert!(SymMatrix::from_rows(2, rows, 1e-12).is_err());
    }

    #[test]
    fn inner_is_trace_of_product() {
        let a = SymMatrix::from_upper(3, |i, j| (i + 2 * j) as f64);
        let b = SymMatrix::from_upper(3, |i, j| 1.0 - (i * j) as f64);
        let mut direct = 0.0;
        for i in 0..3 {
            for k in 0..3 {
                direct += a.get(k, i) * b.get(k, i);
            }
        }
        assert!((a.inner(&b) - direct).abs() < 1e-14);
    }

    #[test]
    fn sym_product_norm() {
        assert_eq!(SymMatrix::sym_product(4, 1, 2).norm_sq(), 2.0);
        assert_eq!(SymMatrix::sym_product(4, 3, 3).norm_sq(), 4.0);
    }
}
