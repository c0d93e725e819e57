use super::{s20_basis, S20Basis};
use crate::tensor::{CurvatureTensor, SymMatrix};
use crate::Result;

const SYMMETRY_TOL: f64 = 1e-12;

/// Matrix of `R̊ = π ∘ R̄` in an orthonormal basis of `S²₀`.
#[derive(Clone, Debug)]
pub struct SecondKindOperator {
    pub basis: S20Basis,
    pub matrix: SymMatrix,
}

/// `R̄(φ)_{ij} = Σ_{kl} R_{iklj} φ_{kl}` on all of `S²(V)`.
pub fn rbar(r: &CurvatureTensor, phi: &SymMatrix) -> SymMatrix {
    let n = r.n();
    let mut rows = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                for l in 0..n {
                    acc += r.get(i, k, l, j) * phi.get(k, l);
                }
            }
            rows[i * n + j] = acc;
        }
    }
    SymMatrix::from_rows(n, rows, f64::INFINITY).expect("square table")
}

pub fn build_second_kind(r: &CurvatureTensor) -> Result<SecondKindOperator> {
    build_second_kind_in(r, s20_basis(r.n())?)
}

/// Builds `⟨R̄(Sʲ), Sᵏ⟩` in the given basis. Pairing against trace-free `Sᵏ`
/// applies the projection onto `S²₀` implicitly.
pub fn build_second_kind_in(r: &CurvatureTensor, basis: S20Basis) -> Result<SecondKindOperator> {
    let images: Vec<SymMatrix> = basis.elements().iter().map(|s| rbar(r, s)).collect();
    let dim = basis.dim();
    let mut rows = vec![0.0; dim * dim];
    for (j, img) in images.iter().enumerate() {
        for (k, s) in basis.elements().iter().enumerate() {
            rows[j * dim + k] = img.inner(s);
        }
    }
    let tol = SYMMETRY_TOL * (1.0 + r.table().max_abs());
    let matrix = SymMatrix::from_rows(dim, rows, tol)?;
    Ok(SecondKindOperator { basis, matrix })
}

/// Matrix of `R̂` in the basis `{e_i ∧ e_j}_{i<j}` with the half-trace inner
/// product; entry `((a,b),(c,d))` is `R_{abcd}`.
pub fn build_first_kind(r: &CurvatureTensor) -> Result<SymMatrix> {
    let n = r.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let dim = pairs.len();
    let mut rows = vec![0.0; dim * dim];
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate() {
            // ⟨R̂(e_c∧e_d), e_a∧e_b⟩ = ½ Σ_{kl} R_{abkl}(e_c∧e_d)_{kl}
            rows[x * dim + y] = 0.5 * (r.get(a, b, c, d) - r.get(a, b, d, c));
        }
    }
    let tol = SYMMETRY_TOL * (1.0 + r.table().max_abs());
    SymMatrix::from_rows(dim, rows, tol)
}
