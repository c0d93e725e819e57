use crate::tensor::SymMatrix;
use crate::{s20_dim, Error, Result};

/// Orthonormal basis of `S²₀(R^n)` under `⟨A, B⟩ = tr(AᵀB)`.
///
/// Ordering: the off-diagonal elements `(1/√2) e_i⊙e_j` for `i < j` in
/// lexicographic order, followed by the `n − 1` Helmert diagonals
/// `D_k = (Σ_{i<=k} e_i⊗e_i − k e_{k+1}⊗e_{k+1}) / √(k(k+1))`.
#[derive(Clone, Debug)]
pub struct S20Basis {
    n: usize,
    elements: Vec<SymMatrix>,
}

impl S20Basis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SymMatrix] {
        &self.elements
    }

    /// The same basis with elements reordered: `out[i] = self[order[i]]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.dim()];
        if order.len() != self.dim() {
            return Err(Error::DimensionMismatch(order.len(), self.dim()));
        }
        for &i in order {
            if i >= self.dim() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument("order is not a permutation".into()));
            }
        }
        Ok(Self {
            n: self.n,
            elements: order.iter().map(|&i| self.elements[i].clone()).collect(),
        })
    }

    /// `Σ_b coords_b · basis_b`.
    pub fn combine(&self, coords: &[f64]) -> SymMatrix {
        SymMatrix::linear_combination(coords, &self.elements)
    }

    pub fn gram(&self) -> SymMatrix {
        let e = &self.elements;
        SymMatrix::from_upper(e.len(), |a, b| e[a].inner(&e[b]))
    }
}

pub fn s20_basis(n: usize) -> Result<S20Basis> {
    if n < 2 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "S²₀ basis needs n >= 2",
        });
    }
    let mut elements = Vec::with_capacity(s20_dim(n));
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in i + 1..n {
            elements.push(SymMatrix::sym_product(n, i, j).scaled(r));
        }
    }
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        elements.push(SymMatrix::from_upper(n, |i, j| {
            if i != j {
                0.0
            } else if i < k {
                1.0 / norm
            } else if i == k {
                -(k as f64) / norm
            } else {
                0.0
            }
        }));
    }
    debug_assert_eq!(elements.len(), s20_dim(n));
    Ok(S20Basis { n, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(s20_basis(4).unwrap().dim(), 9);
        assert_eq!(s20_basis(5).unwrap().dim(), 14);
        assert_eq!(s20_basis(8).unwrap().dim(), 35);
        assert!(s20_basis(1).is_err());
    }

    #[test]
    fn orthonormal_and_trace_free() {
        for n in 2..=12 {
            let b = s20_basis(n).unwrap();
            for e in b.elements() {
                assert!(e.trace().abs() < 1e-14);
                assert!(e.asymmetry() == 0.0);
            }
            let gram = b.gram();
            let dev = &gram - &SymMatrix::identity(b.dim());
            assert!(dev.max_abs() < 1e-12, "n = {n}: {}", dev.max_abs());
        }
    }

    #[test]
    fn permuted_rejects_non_permutation() {
        let b = s20_basis(3).unwrap();
        assert!(b.permuted(&[0, 0, 1, 2, 3]).is_err());
        assert!(b.permuted(&[4, 3, 2, 1, 0]).is_ok());
    }
}
