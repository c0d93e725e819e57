use rayon::prelude::*;

use crate::tensor::{trace_defect, CurvatureTensor, Rank4, SymMatrix};
use crate::{Error, Result};

/// Derivation action of a symmetric endomorphism on a `(0,4)`-tensor:
/// `(ST)_{ijkl} = Σ_m S_{im}T_{mjkl} + S_{jm}T_{imkl} + S_{km}T_{ijml} + S_{lm}T_{ijkm}`.
pub fn s_action(s: &SymMatrix, t: &Rank4) -> Result<Rank4> {
    let n = t.n();
    if s.n() != n {
        return Err(Error::DimensionMismatch(s.n(), n));
    }
    let src = t.as_slice();
    let mut out = Rank4::zeros(n);
    let dst = out.as_mut_slice();
    // Slot p splits the flat index as (outer, m, inner) with inner = n^(3-p).
    let mut inner = n * n * n;
    while inner >= 1 {
        let block = n * inner;
        for (ob, chunk) in dst.chunks_mut(block).enumerate() {
            let base = ob * block;
            for i in 0..n {
                let row = &mut chunk[i * inner..(i + 1) * inner];
                for m in 0..n {
                    let c = s.get(i, m);
                    if c == 0.0 {
                        continue;
                    }
                    let from = &src[base + m * inner..base + (m + 1) * inner];
                    for (o, x) in row.iter_mut().zip(from) {
                        *o += c * x;
                    }
                }
            }
        }
        inner /= n;
        if n == 1 {
            break;
        }
    }
    Ok(out)
}

/// `|SʲW|²` for each matrix in `mats`, in order.
///
/// `w` must be totally trace-free (a Weyl-type tensor) to within
/// `tol · (1 + max|W|)`.
pub fn sw_norms(mats: &[SymMatrix], w: &CurvatureTensor, tol: f64) -> Result<Vec<f64>> {
    let defect = trace_defect(w);
    if defect > tol * (1.0 + w.table().max_abs()) {
        return Err(Error::NotTraceFree(defect));
    }
    let n = w.n();
    if let Some(s) = mats.iter().find(|s| s.n() != n) {
        return Err(Error::DimensionMismatch(s.n(), n));
    }
    Ok(mats.par_iter().map(|s| sw_norm_sq(s, w.table())).collect())
}

/// `|SW|²` for `W` with the curvature symmetries. Pair antisymmetry and pair
/// exchange turn all four slot terms into the first:
/// `(SW)_{ijkl} = A_{ijkl} − A_{jikl} + A_{klij} − A_{lkij}`, `A_{ijkl} = Σ_m S_{im}W_{mjkl}`.
/// `SW` has the same symmetries, so only `i < j`, `k < l` are summed.
fn sw_norm_sq(s: &SymMatrix, w: &Rank4) -> f64 {
    let n = w.n();
    let n3 = n * n * n;
    let src = w.as_slice();
    let mut a = vec![0.0; n * n3];
    for i in 0..n {
        let row = &mut a[i * n3..(i + 1) * n3];
        for m in 0..n {
            let c = s.get(i, m);
            if c == 0.0 {
                continue;
            }
            for (o, x) in row.iter_mut().zip(&src[m * n3..(m + 1) * n3]) {
                *o += c * x;
            }
        }
    }
    let at = |i: usize, j: usize, k: usize, l: usize| a[((i * n + j) * n + k) * n + l];
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for l in k + 1..n {
                    let v = at(i, j, k, l) - at(j, i, k, l) + at(k, l, i, j) - at(l, k, i, j);
                    total += v * v;
                }
            }
        }
    }
    4.0 * total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random_curvature, random_weyl, rng_from_seed};

    fn naive(s: &SymMatrix, t: &Rank4) -> Rank4 {
        let n = t.n();
        Rank4::from_fn(n, |i, j, k, l| {
            (0..n)
                .map(|m| {
                    s.get(i, m) * t.get(m, j, k, l)
                        + s.get(j, m) * t.get(i, m, k, l)
                        + s.get(k, m) * t.get(i, j, m, l)
                        + s.get(l, m) * t.get(i, j, k, m)
                })
                .sum()
        })
    }

    #[test]
    fn matches_index_formula() {
        let mut rng = rng_from_seed(2);
        let t = random_curvature(4, &mut rng);
        let s = SymMatrix::from_upper(4, |i, j| (i as f64 - 0.5 * j as f64).cos());
        let fast = s_action(&s, t.table()).unwrap();
        assert!(fast.max_abs_diff(&naive(&s, t.table())) < 1e-13);
    }

    #[test]
    fn metric_acts_as_four() {
        let t = random_curvature(5, &mut rng_from_seed(8));
        let out = s_action(&SymMatrix::identity(5), t.table()).unwrap();
        assert!(out.max_abs_diff(&t.table().scaled(4.0)) < 1e-14);
        let zero = s_action(&SymMatrix::zeros(5), t.table()).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn linear_in_s() {
        let t = random_curvature(4, &mut rng_from_seed(3));
        let s1 = SymMatrix::from_upper(4, |i, j| (i * j) as f64 * 0.3 - 0.1);
        let s2 = SymMatrix::from_upper(4, |i, j| (i + j) as f64 * -0.7 + 0.4);
        let (a, b) = (1.7, -0.45);
        let lhs = s_action(&(&s1.scaled(a) + &s2.scaled(b)), t.table()).unwrap();
        let rhs = s_action(&s1, t.table())
            .unwrap()
            .scaled(a)
            .axpy(b, &s_action(&s2, t.table()).unwrap());
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let t = Rank4::zeros(3);
        assert!(s_action(&SymMatrix::identity(4), &t).is_err());
    }

    #[test]
    fn sw_norms_reject_non_weyl() {
        let r = CurvatureTensor::sphere(4);
        let mats = vec![SymMatrix::identity(4)];
        assert!(matches!(sw_norms(&mats, &r, 1e-10), Err(Error::NotTraceFree(_))));
        let w = random_weyl(4, &mut rng_from_seed(1)).unwrap();
        assert!(sw_norms(&mats, &w, 1e-10).is_ok());
        let zero = CurvatureTensor::zeros(4);
        assert_eq!(sw_norms(&mats, &zero, 1e-10).unwrap(), vec![0.0]);
    }

    #[test]
    fn symmetric_norm_matches_full_action() {
        for n in [3usize, 4, 6, 9] {
            let mut rng = rng_from_seed(n as u64);
            let w = random_weyl(n, &mut rng).unwrap();
            let s = SymMatrix::from_upper(n, |i, j| ((i * 7 + j * 3) as f64).sin());
            let full = s_action(&s, w.table()).unwrap().norm_sq();
            let fast = sw_norms(std::slice::from_ref(&s), &w, 1e-9).unwrap()[0];
            assert!((full - fast).abs() < 1e-12 * (1.0 + full), "n = {n}: {full} vs {fast}");
        }
    }
}
