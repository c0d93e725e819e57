use serde::Serialize;

use super::{symmetric_eigen, JacobiOptions, S20Basis, SecondKindOperator};
use crate::tensor::SymMatrix;
use crate::Result;

/// Ascending eigenvalues of `R̊` with eigenvectors in basis coordinates.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub n: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub lambda_bar: f64,
}

/// JSON export shape `{ "n", "N", "values", "lambda_bar" }`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumExport {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub values: Vec<f64>,
    pub lambda_bar: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|l| l * l).sum()
    }

    pub fn sum_cubes(&self) -> f64 {
        self.values.iter().map(|l| l * l * l).sum()
    }

    /// Eigenvectors reconstituted as trace-free matrices `Sʲ = Σ_b v_b B_b`.
    pub fn eigenmatrices(&self, basis: &S20Basis) -> Vec<SymMatrix> {
        self.vectors.iter().map(|v| basis.combine(v)).collect()
    }

    pub fn export(&self) -> SpectrumExport {
        SpectrumExport {
            n: self.n,
            big_n: self.values.len(),
            values: self.values.clone(),
            lambda_bar: self.lambda_bar,
        }
    }
}

pub fn spectrum(op: &SecondKindOperator) -> Result<Spectrum> {
    spectrum_with(op, JacobiOptions::default())
}

pub fn spectrum_with(op: &SecondKindOperator, opts: JacobiOptions) -> Result<Spectrum> {
    let eig = symmetric_eigen(&op.matrix, opts)?;
    let lambda_bar = eig.values.iter().sum::<f64>() / eig.values.len() as f64;
    Ok(Spectrum {
        n: op.basis.n(),
        values: eig.values,
        vectors: eig.vectors,
        lambda_bar,
    })
}
