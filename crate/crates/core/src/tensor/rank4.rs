use std::ops::{Index, IndexMut};

use serde::Serialize;

use super::SymMatrix;
use crate::{Error, Result, SymmetryKind, DEFAULT_TOL};

/// Dense rank-4 table `T_{ijkl}` over `R^n`, with no symmetry assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct Rank4 {
    n: usize,
    data: Vec<f64>,
}

impl Rank4 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Self> {
        let len = n * n * n * n;
        if data.len() != len {
            return Err(Error::DimensionMismatch(data.len(), len));
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn offset(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.data[self.offset(i, j, k, l)]
    }

    /// `|T|² = Σ T_{ijkl}²`, the full contraction.
    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    pub fn dot(&self, other: &Rank4) -> f64 {
        debug_assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Rank4) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: f64, other: &Rank4) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        }
    }

    /// Averages over the eight index permutations generated by the two pair
    /// antisymmetries and pair exchange.
    pub fn symmetrize_pairs(&self) -> Self {
        let t = self;
        Rank4::from_fn(self.n, |i, j, k, l| {
            (t.get(i, j, k, l) - t.get(j, i, k, l) - t.get(i, j, l, k) + t.get(j, i, l, k)
                + t.get(k, l, i, j)
                - t.get(l, k, i, j)
                - t.get(k, l, j, i)
                + t.get(l, k, j, i))
                / 8.0
        })
    }

    /// Copies each value at the canonical representative `i < j`, `k < l`,
    /// `(i, j) <= (k, l)` onto its orbit under the pair symmetries, so that
    /// antisymmetry and pair exchange hold bit-exactly.
    pub fn canonicalized(&self) -> Self {
        let t = self;
        Rank4::from_fn(self.n, |i, j, k, l| {
            if i == j || k == l {
                return 0.0;
            }
            let (mut sign, (a, b)) = if i < j { (1.0, (i, j)) } else { (-1.0, (j, i)) };
            let (c, d) = if k < l {
                (k, l)
            } else {
                sign = -sign;
                (l, k)
            };
            if (a, b) <= (c, d) {
                sign * t.get(a, b, c, d)
            } else {
                sign * t.get(c, d, a, b)
            }
        })
    }

    /// Cyclic sum `C_{ijkl} = T_{ijkl} + T_{iklj} + T_{iljk}`.
    pub fn cyclic_sum(&self) -> Self {
        let t = self;
        Rank4::from_fn(self.n, |i, j, k, l| {
            t.get(i, j, k, l) + t.get(i, k, l, j) + t.get(i, l, j, k)
        })
    }

    /// `T'_{ijkl} = Σ Q_{ia} Q_{jb} Q_{kc} Q_{ld} T_{abcd}` for a row-major
    /// `n × n` matrix `q`.
    pub fn transformed(&self, q: &[f64]) -> Self {
        let n = self.n;
        assert_eq!(q.len(), n * n);
        // Contract one slot at a time; each pass moves the contracted slot to
        // the back so four passes restore the index order.
        let mut cur = self.data.clone();
        let n3 = n * n * n;
        for _ in 0..4 {
            let mut next = vec![0.0; cur.len()];
            for rest in 0..n3 {
                for i in 0..n {
                    let mut acc = 0.0;
                    for a in 0..n {
                        acc += q[i * n + a] * cur[a * n3 + rest];
                    }
                    next[rest * n + i] = acc;
                }
            }
            cur = next;
        }
        Self { n, data: cur }
    }
}

impl Index<[usize; 4]> for Rank4 {
    type Output = f64;
    fn index(&self, [i, j, k, l]: [usize; 4]) -> &f64 {
        &self.data[self.offset(i, j, k, l)]
    }
}

impl IndexMut<[usize; 4]> for Rank4 {
    fn index_mut(&mut self, [i, j, k, l]: [usize; 4]) -> &mut f64 {
        let o = self.offset(i, j, k, l);
        &mut self.data[o]
    }
}

/// Maximum absolute defect of each algebraic curvature symmetry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct SymmetryDefects {
    pub first_pair: f64,
    pub second_pair: f64,
    pub pair_exchange: f64,
    pub bianchi: f64,
}

impl SymmetryDefects {
    pub fn max(&self) -> f64 {
        self.first_pair
            .max(self.second_pair)
            .max(self.pair_exchange)
            .max(self.bianchi)
    }

    /// The first symmetry whose defect exceeds `tol`, in the order
    /// antisymmetries, pair exchange, Bianchi.
    pub fn first_violation(&self, tol: f64) -> Option<(SymmetryKind, f64)> {
        [
            (SymmetryKind::FirstPair, self.first_pair),
            (SymmetryKind::SecondPair, self.second_pair),
            (SymmetryKind::PairExchange, self.pair_exchange),
            (SymmetryKind::Bianchi, self.bianchi),
        ]
        .into_iter()
        .find(|(_, d)| *d > tol)
    }
}

pub fn symmetry_check(t: &Rank4) -> SymmetryDefects {
    let n = t.n();
    let mut d = SymmetryDefects::default();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = t.get(i, j, k, l);
                    d.first_pair = d.first_pair.max((v + t.get(j, i, k, l)).abs());
                    d.second_pair = d.second_pair.max((v + t.get(i, j, l, k)).abs());
                    d.pair_exchange = d.pair_exchange.max((v - t.get(k, l, i, j)).abs());
                    let cyc = v + t.get(i, k, l, j) + t.get(i, l, j, k);
                    d.bianchi = d.bianchi.max(cyc.abs());
                }
            }
        }
    }
    d
}

/// An algebraic curvature tensor: a [`Rank4`] table known to satisfy both pair
/// antisymmetries, pair exchange and the first Bianchi identity.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor(Rank4);

impl CurvatureTensor {
    pub fn zeros(n: usize) -> Self {
        Self(Rank4::zeros(n))
    }

    /// Validates `table` against every curvature symmetry at tolerance `tol`,
    /// then canonicalizes it.
    pub fn try_from_table(table: Rank4, tol: f64) -> Result<Self> {
        let defects = symmetry_check(&table);
        if let Some((kind, defect)) = defects.first_violation(tol) {
            return Err(Error::Symmetry { kind, defect, tol });
        }
        Ok(Self(table.canonicalized()))
    }

    /// The constant-curvature-one tensor `½ g⊠g`.
    pub fn sphere(n: usize) -> Self {
        let g = SymMatrix::identity(n);
        kulkarni_nomizu(&g, &g)
            .expect("same dimension")
            .scaled(0.5)
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn table(&self) -> &Rank4 {
        &self.0
    }

    pub fn into_table(self) -> Rank4 {
        self.0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.0.get(i, j, k, l)
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.norm_sq()
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self(self.0.scaled(c))
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: f64, other: &CurvatureTensor) -> Self {
        Self(self.0.axpy(c, &other.0))
    }

    /// Pulls the tensor back by the orthogonal matrix `q` (row-major).
    pub fn rotated(&self, q: &[f64]) -> Self {
        Self(self.0.transformed(q).canonicalized())
    }
}

pub fn tensor_norm_sq(t: &Rank4) -> f64 {
    t.norm_sq()
}

/// `(A⊠B)_{ijkl} = A_{ik}B_{jl} + A_{jl}B_{ik} − A_{jk}B_{il} − A_{il}B_{jk}`.
pub fn kulkarni_nomizu(a: &SymMatrix, b: &SymMatrix) -> Result<CurvatureTensor> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let t = Rank4::from_fn(a.n(), |i, j, k, l| {
        // grouped so that swapping a and b gives bit-identical sums
        (a.get(i, k) * b.get(j, l) + a.get(j, l) * b.get(i, k))
            - (a.get(j, k) * b.get(i, l) + a.get(i, l) * b.get(j, k))
    });
    Ok(CurvatureTensor(t.canonicalized()))
}

/// `Ric_{ik} = Σ_j R_{ijkj}`.
pub fn ricci(r: &CurvatureTensor) -> SymMatrix {
    let n = r.n();
    SymMatrix::from_upper(n, |i, k| (0..n).map(|j| r.get(i, j, k, j)).sum())
}

pub fn scalar(r: &CurvatureTensor) -> f64 {
    ricci(r).trace()
}

/// `max |Ric − (Scal/n) g|`.
pub fn einstein_defect(r: &CurvatureTensor) -> f64 {
    let ric = ricci(r);
    let n = r.n();
    let mean = ric.trace() / n as f64;
    let mut worst = 0.0f64;
    for i in 0..n {
        for k in 0..n {
            let target = if i == k { mean } else { 0.0 };
            worst = worst.max((ric.get(i, k) - target).abs());
        }
    }
    worst
}

/// Removes the `Λ⁴` component of a pair-symmetric table: `T − C/3` with `C`
/// the cyclic sum.
///
/// The input must already be antisymmetric in each pair and symmetric under
/// pair exchange; otherwise `C` is not totally antisymmetric and the
/// projection is rejected.
pub fn bianchi_project(t: &Rank4) -> Result<CurvatureTensor> {
    bianchi_project_with_tol(t, DEFAULT_TOL)
}

pub fn bianchi_project_with_tol(t: &Rank4, tol: f64) -> Result<CurvatureTensor> {
    let c = t.cyclic_sum();
    let n = t.n();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = c.get(i, j, k, l);
                    worst = worst
                        .max((v + c.get(j, i, k, l)).abs())
                        .max((v + c.get(i, k, j, l)).abs())
                        .max((v + c.get(i, j, l, k)).abs());
                }
            }
        }
    }
    if worst > tol {
        return Err(Error::Precondition(format!(
            "cyclic sum is not totally antisymmetric (defect {worst:.3e}); \
             input lacks pair symmetries"
        )));
    }
    Ok(CurvatureTensor(t.axpy(-1.0 / 3.0, &c).canonicalized()))
}
