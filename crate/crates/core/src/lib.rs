//! Pointwise algebra of the curvature operator of the second kind on Einstein
//! curvature tensors, together with the constrained cubic minimization that
//! controls the sign of `<ΔR, R>` under the cone condition `C(2, θ)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensor`] holds algebraic curvature tensors, the Kulkarni–Nomizu product,
//!   Ricci contractions and the Weyl decomposition.
//! * [`second_kind`] builds the operators of the first and second kind, their
//!   spectra, and the derivation action `S·T` of a symmetric endomorphism.
//! * [`cone`] evaluates fractional partial eigenvalue sums and the exact
//!   constants `θ(n)`.
//! * [`bochner`] assembles the pointwise Bochner quantities and classifies a
//!   tensor against the two extremal spectral profiles.
//! * [`extremal`] enumerates the critical points of the normalized cubic and
//!   cross-checks the minimum with a seeded multistart descent.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bochner;
pub mod cone;
mod error;
pub mod extremal;
pub mod second_kind;
pub mod tensor;

pub use error::{Error, Result, SymmetryKind};

/// Default absolute tolerance for unit-scale inputs.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Dimension of the space of trace-free symmetric two-tensors on `R^n`.
pub fn s20_dim(n: usize) -> usize {
    (n + 2) * (n - 1) / 2
}
