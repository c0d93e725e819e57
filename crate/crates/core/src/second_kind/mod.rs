//! Curvature operators of the first and second kind and the derivation
//! action of `S²(V)` on curvature tensors.

mod action;
mod basis;
mod jacobi;
mod operator;
mod spectrum;

pub use action::{s_action, sw_norms};
pub use basis::{s20_basis, S20Basis};
pub use jacobi::{reconstruction_error, symmetric_eigen, JacobiOptions, SymmetricEigen};
pub use operator::{build_first_kind, build_second_kind, build_second_kind_in, rbar, SecondKindOperator};
pub use spectrum::{spectrum, spectrum_with, Spectrum, SpectrumExport};

use crate::tensor::CurvatureTensor;
use crate::Result;

/// Operator and spectrum of `R̊` in the canonical basis.
pub fn analyze(r: &CurvatureTensor) -> Result<(SecondKindOperator, Spectrum)> {
    let op = build_second_kind(r)?;
    let spec = spectrum(&op)?;
    Ok((op, spec))
}
