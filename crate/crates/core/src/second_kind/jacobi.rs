use crate::tensor::SymMatrix;
use crate::{Error, Result};

/// Stopping rule for the cyclic Jacobi sweep.
#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    /// Converged once `‖offdiag(A)‖_F <= rel_tol · ‖M‖_F`.
    pub rel_tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            max_sweeps: 100,
        }
    }
}

/// Eigenpairs sorted by ascending eigenvalue; `vectors[j]` belongs to
/// `values[j]`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
}

/// Cyclic Jacobi with a fixed row-major `(p, q)`, `p < q` sweep order.
///
/// Eigenvectors are sign-normalised so their largest-magnitude coordinate is
/// positive; equal eigenvalues are ordered by the first differing eigenvector
/// coordinate.
pub fn symmetric_eigen(m: &SymMatrix, opts: JacobiOptions) -> Result<SymmetricEigen> {
    let n = m.n();
    let mut a = m.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale = m.norm_sq().sqrt();
    let threshold = opts.rel_tol * scale;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p * n + q] * a[p * n + q];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let tau = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|j| {
            let mut col: Vec<f64> = (0..n).map(|k| v[k * n + j]).collect();
            let lead = col
                .iter()
                .enumerate()
                .fold((0, 0.0f64), |best, (i, x)| {
                    if x.abs() > best.1 {
                        (i, x.abs())
                    } else {
                        best
                    }
                })
                .0;
            if col.get(lead).is_some_and(|x| *x < 0.0) {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            (a[j * n + j], col)
        })
        .collect();
    pairs.sort_by(|x, y| {
        x.0.total_cmp(&y.0).then_with(|| {
            x.1.iter()
                .zip(&y.1)
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// `max |M − V Λ Vᵀ|`.
pub fn reconstruction_error(m: &SymMatrix, eig: &SymmetricEigen) -> f64 {
    let n = m.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            let r: f64 = eig
                .values
                .iter()
                .zip(&eig.vectors)
                .map(|(l, v)| l * v[i] * v[k])
                .sum();
            worst = worst.max((m.get(i, k) - r).abs());
        }
    }
    worst
}
