use std::path::Path;

use cosk_core::tensor::{random_einstein, read_tensor_json, CurvatureTensor, Rank4};

use crate::config::Model;
use crate::error::{exit, CliError, CliResult};

/// `g_ik g_jl − g_il g_jk + J_ik J_jl − J_il J_jk + 2 J_ij J_kl` with the
/// standard complex structure `J e_{2a} = e_{2a+1}`. Holomorphic sectional
/// curvature 4, Ricci `(n + 2) g`.
pub fn fubini_study(n: usize) -> CliResult<CurvatureTensor> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(CliError::usage(format!("fubini_study needs an even n >= 2, got {n}")));
    }
    let g = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
    let jm = |i: usize, j: usize| match (i % 2, j) {
        (0, j) if j == i + 1 => 1.0,
        (1, j) if j + 1 == i => -1.0,
        _ => 0.0,
    };
    let table = Rank4::from_fn(n, |i, j, k, l| {
        g(i, k) * g(j, l) - g(i, l) * g(j, k) + jm(i, k) * jm(j, l) - jm(i, l) * jm(j, k)
            + 2.0 * jm(i, j) * jm(k, l)
    });
    Ok(CurvatureTensor::try_from_table(table, 1e-12)?)
}

pub fn build_model(model: Model, n: usize, seed: u64, epsilon: f64) -> CliResult<CurvatureTensor> {
    if n < 2 {
        return Err(CliError::usage(format!("models need n >= 2, got {n}")));
    }
    match model {
        Model::Sphere => Ok(CurvatureTensor::sphere(n)),
        Model::Flat => Ok(CurvatureTensor::zeros(n)),
        Model::NearSphere => {
            let nf = n as f64;
            Ok(random_einstein(n, seed, epsilon, nf * (nf - 1.0))?)
        }
        Model::FubiniStudy => fubini_study(n),
    }
}

/// Reads a tensor file, completes it by symmetry and checks every curvature
/// symmetry at `tol`.
pub fn load_tensor(path: &Path, tol: f64) -> CliResult<CurvatureTensor> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(exit::PARSE, format!("cannot read {}: {e}", path.display())))?;
    let table = read_tensor_json(&text)
        .map_err(|e| CliError::new(exit::PARSE, format!("{}: {e}", path.display())))?;
    Ok(CurvatureTensor::try_from_table(table, tol)?)
}
