use rayon::prelude::*;
use serde::Serialize;

use super::{
    boundary_critical, boundary_is_feasible, boundary_profile, boundary_value, interior_critical,
    interior_value, multistart_descent, CriticalKind, CriticalPoint, DescentOptions, FeasibleSet,
};
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    /// Points on the `a` interval, both endpoints included exactly.
    pub grid_points: usize,
    pub oracle_restarts: usize,
    pub oracle_seed: u64,
    /// Table entries within this of the minimum count as minimizers.
    pub minimizer_tol: f64,
    /// Distinct minimizers are at least this far apart (max norm, sorted).
    pub profile_tol: f64,
    pub descent: DescentOptions,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            grid_points: 2001,
            oracle_restarts: 200,
            oracle_seed: 0,
            minimizer_tol: 1e-8,
            profile_tol: 1e-6,
            descent: DescentOptions::default(),
        }
    }
}

/// `grid_points` evenly spaced values on `[lo, hi]` with exact endpoints.
pub fn a_grid(set: &FeasibleSet, grid_points: usize) -> Vec<f64> {
    let (lo, hi) = set.a_range();
    let last = grid_points.max(2) - 1;
    (0..=last)
        .map(|i| match i {
            0 => lo,
            i if i == last => hi,
            i => lo + (hi - lo) * i as f64 / last as f64,
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    #[serde(flatten)]
    pub kind: CriticalKind,
    pub value: f64,
    pub feasible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub beta: f64,
    pub global_min: f64,
    /// Sorted ascending, deduplicated.
    pub minimizers: Vec<Vec<f64>>,
    pub critical_table: Vec<TableEntry>,
    pub oracle_min: f64,
    pub oracle_non_converged: usize,
    /// `|global_min − oracle_min|`.
    pub agreement: f64,
    /// Whether `minimizers` is exactly {round point, boundary profile}.
    pub profiles_match: bool,
    /// `β = 1 + θ(n)` for the matching dimension; otherwise exploratory.
    pub certified: bool,
}

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Lowest point of `P_{k,l}(·)` on the grid, feasible points preferred.
fn scan_family(set: &FeasibleSet, k: usize, l: usize, grid: &[f64]) -> Result<CriticalPoint> {
    let mut best: Option<(bool, f64, f64)> = None;
    for &a in grid {
        let feasible = boundary_is_feasible(set, k, l, a)?;
        let value = boundary_value(set, k, l, a)?;
        let better = match best {
            None => true,
            Some((bf, bv, _)) => (feasible && !bf) || (feasible == bf && value < bv),
        };
        if better {
            best = Some((feasible, value, a));
        }
    }
    let (_, _, a) = best.expect("grid is non-empty");
    boundary_critical(set, k, l, a)
}

/// Every critical point of the case analysis: all `Q_m` with `2m < N`, and
/// for each boundary family `(k, l)` its lowest grid point.
pub fn critical_table(set: &FeasibleSet, grid_points: usize) -> Result<Vec<CriticalPoint>> {
    let n = set.big_n();
    let grid = a_grid(set, grid_points);
    let mut table: Vec<CriticalPoint> = (0..n.div_ceil(2))
        .filter(|m| 2 * m < n)
        .map(|m| interior_critical(set, m))
        .collect::<Result<_>>()?;
    let families: Vec<(usize, usize)> = (1..=n - 2)
        .flat_map(|k| (0..k.div_ceil(2)).map(move |l| (k, l)))
        .collect();
    let boundary: Vec<CriticalPoint> = families
        .par_iter()
        .map(|&(k, l)| scan_family(set, k, l, &grid))
        .collect::<Result<_>>()?;
    table.extend(boundary);
    Ok(table)
}

/// Runs the full case analysis plus the descent oracle.
pub fn enumerate_minimum(set: &FeasibleSet, opts: &EnumerationOptions) -> Result<ExtremalReport> {
    let table = critical_table(set, opts.grid_points)?;
    let global_min = table
        .iter()
        .filter(|p| p.feasible)
        .map(|p| p.value)
        .fold(f64::INFINITY, f64::min);

    let mut minimizers: Vec<Vec<f64>> = Vec::new();
    for p in table.iter().filter(|p| p.feasible && p.value <= global_min + opts.minimizer_tol) {
        let s = sorted(&p.coordinates);
        if !minimizers.iter().any(|m| max_dist(m, &s) < opts.profile_tol) {
            minimizers.push(s);
        }
    }
    minimizers.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));

    let expected = [sorted(&set.boundary_minimizer()), set.round_minimizer()];
    let profiles_match = minimizers.len() == expected.len()
        && minimizers
            .iter()
            .zip(&expected)
            .all(|(m, e)| max_dist(m, e) < opts.profile_tol);

    let oracle = multistart_descent(set, opts.oracle_seed, opts.oracle_restarts, &opts.descent)?;
    Ok(ExtremalReport {
        big_n: set.big_n(),
        beta: set.beta(),
        global_min,
        minimizers,
        critical_table: table
            .iter()
            .map(|p| TableEntry {
                kind: p.kind,
                value: p.value,
                feasible: p.feasible,
            })
            .collect(),
        oracle_min: oracle.min_value,
        oracle_non_converged: oracle.non_converged(),
        agreement: (global_min - oracle.min_value).abs(),
        profiles_match,
        certified: set.is_certified(),
    })
}

/// Smallest margins of the ordering chain
/// `F(P_{k,l}) > F(P_{k,0}) > F(P_{N−2,0}) >= 0` over an `a`-grid. The last
/// two links are strict below the right endpoint and tight at it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChainReport {
    pub grid_points: usize,
    /// `min F(P_{k,l}(a)) − F(P_{k,0}(a))`, `1 <= l < k/2`, all grid `a`.
    pub mixed_over_pure: f64,
    /// `min F(P_{k,0}(a)) − F(P_{N−2,0}(a))`, `k <= N − 3`, grid `a` below the end.
    pub pure_over_profile: f64,
    /// `min F(P_{N−2,0}(a))` for grid `a` below the end.
    pub profile_interior: f64,
    /// Largest `|F(P_{k,0}(a_max))|` over `k`, including `k = N − 2`.
    pub endpoint_residual: f64,
    /// `min F(Q_m)` over `1 <= m < N/2`.
    pub interior_min: f64,
}

impl ChainReport {
    pub fn holds(&self, endpoint_tol: f64) -> bool {
        self.mixed_over_pure > 0.0
            && self.pure_over_profile > 0.0
            && self.profile_interior > 0.0
            && self.endpoint_residual <= endpoint_tol
            && self.interior_min > 0.0
    }
}

pub fn ordering_chain(set: &FeasibleSet, grid_points: usize) -> Result<ChainReport> {
    let n = set.big_n();
    let grid = a_grid(set, grid_points);
    let (inner, end) = grid.split_at(grid.len() - 1);
    let a_max = end[0];
    let top = n - 2;

    let per_k: Vec<(f64, f64)> = (1..=top)
        .into_par_iter()
        .map(|k| -> Result<(f64, f64)> {
            let mut mixed = f64::INFINITY;
            let mut pure = f64::INFINITY;
            for &a in &grid {
                let base = boundary_value(set, k, 0, a)?;
                for l in 1..k.div_ceil(2) {
                    mixed = mixed.min(boundary_value(set, k, l, a)? - base);
                }
                if k < top && a < a_max {
                    pure = pure.min(base - boundary_value(set, top, 0, a)?);
                }
            }
            Ok((mixed, pure))
        })
        .collect::<Result<_>>()?;

    let mut profile_interior = f64::INFINITY;
    for &a in inner {
        profile_interior = profile_interior.min(boundary_profile(set, a)?);
    }
    let mut endpoint_residual: f64 = 0.0;
    for k in 1..=top {
        endpoint_residual = endpoint_residual.max(boundary_value(set, k, 0, a_max)?.abs());
    }
    let mut interior_min = f64::INFINITY;
    for m in (1..n.div_ceil(2)).filter(|m| 2 * m < n) {
        interior_min = interior_min.min(interior_value(set, m)?);
    }
    Ok(ChainReport {
        grid_points: grid.len(),
        mixed_over_pure: per_k.iter().map(|p| p.0).fold(f64::INFINITY, f64::min),
        pure_over_profile: per_k.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
        profile_interior,
        endpoint_residual,
        interior_min,
    })
}
