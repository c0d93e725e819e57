use super::{kulkarni_nomizu, ricci, CurvatureTensor, SymMatrix};
use crate::{Error, Result};

/// Irreducible pieces of a curvature tensor:
/// `R = W + (1/(n−2)) Ric⊠g − Scal/(2(n−1)(n−2)) g⊠g`.
#[derive(Clone, Debug)]
pub struct WeylSplit {
    pub weyl: CurvatureTensor,
    pub ricci: SymMatrix,
    pub scal: f64,
}

impl WeylSplit {
    pub fn recompose(&self) -> CurvatureTensor {
        let n = self.weyl.n();
        let g = SymMatrix::identity(n);
        let ric_g = kulkarni_nomizu(&self.ricci, &g).expect("same dimension");
        let g_g = kulkarni_nomizu(&g, &g).expect("same dimension");
        let nf = n as f64;
        self.weyl
            .axpy(1.0 / (nf - 2.0), &ric_g)
            .axpy(-self.scal / (2.0 * (nf - 1.0) * (nf - 2.0)), &g_g)
    }
}

pub fn weyl_decompose(r: &CurvatureTensor) -> Result<WeylSplit> {
    let n = r.n();
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "Weyl decomposition needs n >= 3",
        });
    }
    let ric = ricci(r);
    let scal = ric.trace();
    let g = SymMatrix::identity(n);
    let ric_g = kulkarni_nomizu(&ric, &g)?;
    let g_g = kulkarni_nomizu(&g, &g)?;
    let nf = n as f64;
    let weyl = r
        .axpy(-1.0 / (nf - 2.0), &ric_g)
        .axpy(scal / (2.0 * (nf - 1.0) * (nf - 2.0)), &g_g);
    Ok(WeylSplit {
        weyl,
        ricci: ric,
        scal,
    })
}

/// `max_{j,l} |Σ_i T_{ijil}|`; zero for a Weyl tensor.
pub fn trace_defect(t: &CurvatureTensor) -> f64 {
    let n = t.n();
    let mut worst = 0.0f64;
    for j in 0..n {
        for l in 0..n {
            let s: f64 = (0..n).map(|i| t.get(i, j, i, l)).sum();
            worst = worst.max(s.abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{random_einstein, ricci};

    #[test]
    fn sphere_has_no_weyl_part() {
        for n in 3..8 {
            let split = weyl_decompose(&CurvatureTensor::sphere(n)).unwrap();
            assert!(split.weyl.table().max_abs() < 1e-14, "n = {n}");
            assert_eq!(split.scal, (n * (n - 1)) as f64);
        }
    }

    #[test]
    fn zero_splits_to_zero() {
        let split = weyl_decompose(&CurvatureTensor::zeros(4)).unwrap();
        assert_eq!(split.weyl.table().max_abs(), 0.0);
        assert_eq!(split.ricci.max_abs(), 0.0);
        assert_eq!(split.scal, 0.0);
    }

    #[test]
    fn rejects_n2() {
        assert!(weyl_decompose(&CurvatureTensor::zeros(2)).is_err());
    }

    #[test]
    fn einstein_recomposition() {
        let r = random_einstein(6, 3, 1.0, 7.5).unwrap();
        let split = weyl_decompose(&r).unwrap();
        assert!(split.recompose().table().max_abs_diff(r.table()) < 1e-10);
        assert!(trace_defect(&split.weyl) < 1e-10);
        assert!(ricci(&split.weyl).max_abs() < 1e-10);
        // Einstein form: R = W + Scal/(2n(n−1)) g⊠g
        let sphere_part = CurvatureTensor::sphere(6).scaled(split.scal / 30.0);
        let einstein = split.weyl.axpy(1.0, &sphere_part);
        assert!(einstein.table().max_abs_diff(r.table()) < 1e-10);
    }
}
