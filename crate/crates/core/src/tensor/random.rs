use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bianchi_project, weyl_decompose, CurvatureTensor, Rank4};
use crate::{Error, Result};

/// Seeded generator of test tensors. ChaCha8 keeps streams identical across
/// platforms.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// i.i.d. uniform(−1, 1) raw entries, symmetrized and Bianchi-projected.
pub fn random_curvature<R: Rng>(n: usize, rng: &mut R) -> CurvatureTensor {
    let raw: Vec<f64> = (0..n * n * n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let t = Rank4::from_vec(n, raw).expect("length n^4").symmetrize_pairs();
    bianchi_project(&t).expect("symmetrized input")
}

/// Weyl part of [`random_curvature`].
pub fn random_weyl<R: Rng>(n: usize, rng: &mut R) -> Result<CurvatureTensor> {
    Ok(weyl_decompose(&random_curvature(n, rng))?.weyl)
}

/// `weyl_scale · W + scal/(2n(n−1)) g⊠g` with `W` a seeded random Weyl tensor.
pub fn random_einstein(n: usize, seed: u64, weyl_scale: f64, scal: f64) -> Result<CurvatureTensor> {
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "Einstein generator needs n >= 3",
        });
    }
    if !(weyl_scale >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "weyl_scale must be non-negative, got {weyl_scale}"
        )));
    }
    let nf = n as f64;
    // ½ g⊠g has scalar curvature n(n−1)
    let base = CurvatureTensor::sphere(n).scaled(scal / (nf * (nf - 1.0)));
    if weyl_scale == 0.0 {
        return Ok(base);
    }
    let w = random_weyl(n, &mut rng_from_seed(seed))?;
    Ok(base.axpy(weyl_scale, &w))
}

/// Haar-ish orthogonal matrix (row-major) by Gram–Schmidt on uniform
/// entries; good enough for invariance tests.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        // two passes keep the basis orthonormal to rounding
        for _ in 0..2 {
            for r in &rows {
                let d: f64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(r).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            rows.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    rows.concat()
}
