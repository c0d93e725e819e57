use serde::{Deserialize, Serialize};

use super::{CurvatureTensor, Rank4};
use crate::{Error, Result};

/// Agreement required between duplicate entries that map to the same slot.
const DUPLICATE_TOL: f64 = 1e-12;

/// On-disk tensor: a generating set of components `[i, j, k, l, value]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorFile {
    pub n: usize,
    pub components: Vec<(usize, usize, usize, usize, f64)>,
}

impl TensorFile {
    /// Canonical generating set: `i < j`, `k < l`, `(i, j) <= (k, l)`
    /// lexicographically, zero entries omitted.
    pub fn from_tensor(r: &CurvatureTensor) -> Self {
        let n = r.n();
        let mut components = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in i..n {
                    let l_start = if k == i { j } else { k + 1 };
                    for l in l_start..n {
                        let v = r.get(i, j, k, l);
                        if v != 0.0 {
                            components.push((i, j, k, l, v));
                        }
                    }
                }
            }
        }
        Self { n, components }
    }

    /// Expands the generating set by pair antisymmetry and pair exchange.
    ///
    /// The result is not checked against the Bianchi identity; callers decide
    /// how to treat defects (see [`crate::tensor::symmetry_check`]).
    pub fn complete(&self) -> Result<Rank4> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Format("n must be positive".into()));
        }
        let mut table = Rank4::zeros(n);
        let mut assigned = vec![false; n * n * n * n];
        for &(i, j, k, l, v) in &self.components {
            if [i, j, k, l].iter().any(|&x| x >= n) {
                return Err(Error::Format(format!(
                    "index ({i},{j},{k},{l}) out of range for n = {n}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Format(format!("non-finite value at ({i},{j},{k},{l})")));
            }
            let images = [
                (i, j, k, l, v),
                (j, i, k, l, -v),
                (i, j, l, k, -v),
                (j, i, l, k, v),
                (k, l, i, j, v),
                (l, k, i, j, -v),
                (k, l, j, i, -v),
                (l, k, j, i, v),
            ];
            for (a, b, c, d, w) in images {
                let o = table.offset(a, b, c, d);
                if assigned[o] {
                    let prev = table.as_slice()[o];
                    if (prev - w).abs() > DUPLICATE_TOL {
                        return Err(Error::Format(format!(
                            "inconsistent entries at ({a},{b},{c},{d}): {prev} vs {w}"
                        )));
                    }
                } else {
                    assigned[o] = true;
                    table.as_mut_slice()[o] = w;
                }
            }
        }
        Ok(table)
    }
}

/// Parses the JSON tensor format and completes it by symmetry.
pub fn read_tensor_json(text: &str) -> Result<Rank4> {
    let file: TensorFile =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.complete()
}

pub fn tensor_to_json(r: &CurvatureTensor) -> String {
    serde_json::to_string(&TensorFile::from_tensor(r)).expect("tensor file serializes")
}
