//! Algebraic curvature tensors at a point.
//!
//! Index convention: `R_{ijkl}` is 0-based, the sphere tensor is `½ g⊠g`
//! (so `R_{0101} = 1`), `Ric_{ik} = Σ_j R_{ijkj}`, and all norms are full
//! contractions `Σ R_{ijkl}²`.

mod io;
mod random;
mod rank4;
mod sym;
mod weyl;

pub use io::{read_tensor_json, tensor_to_json, TensorFile};
pub use random::{random_curvature, random_einstein, random_orthogonal, random_weyl, rng_from_seed};
pub use rank4::{
    bianchi_project, bianchi_project_with_tol, einstein_defect, kulkarni_nomizu, ricci, scalar,
    symmetry_check, tensor_norm_sq, CurvatureTensor, Rank4, SymmetryDefects,
};
pub use sym::SymMatrix;
pub use weyl::{trace_defect, weyl_decompose, WeylSplit};
