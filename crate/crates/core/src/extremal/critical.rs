use serde::Serialize;

use super::{big_f, FeasibleSet, PAIR_TOL};
use crate::{Error, Result};

/// Slack accepted on the ends of the `a` interval.
const RANGE_TOL: f64 = 1e-12;

/// Which Lagrange family a critical point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum CriticalKind {
    /// `Q_m = (r×m, s×(N−m))`, stationary on the open face.
    Interior { m: usize },
    /// `P_{k,l}(a) = (−2β+2−a, a×(N−1−k), c×l, d×(k−l))` on the face
    /// `x₁ + x₂ = −2(β − 1)`.
    Boundary { k: usize, l: usize, a: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub kind: CriticalKind,
    pub coordinates: Vec<f64>,
    /// `F` evaluated directly on `coordinates`.
    pub value: f64,
    /// `F` from the family's closed-form expression.
    pub closed_form: f64,
    /// Whether the coordinates satisfy the pair constraint. Some `P_{k,l}(a)`
    /// with `l >= 1` put `c` below `x₁`; they still obey the ordering chain.
    pub feasible: bool,
}

/// `A = (3 − 2β)/3`, half the sum of the two roots of `3x² − 2(3−2β)x + ξ`.
fn half_root_sum(beta: f64) -> f64 {
    (3.0 - 2.0 * beta) / 3.0
}

fn check_interior(set: &FeasibleSet, m: usize) -> Result<()> {
    let n = set.big_n();
    if 2 * m == n {
        return Err(Error::InfeasibleFamily(format!(
            "Q_m with m = N/2 = {m}: r + s = 2A and (N/2)(r + s) = N are inconsistent"
        )));
    }
    if 2 * m > n {
        return Err(Error::InvalidArgument(format!("m = {m} > N/2")));
    }
    Ok(())
}

/// `(r, s)` solving `r + s = 2A`, `m r + (N − m) s = N`.
pub fn interior_roots(set: &FeasibleSet, m: usize) -> Result<(f64, f64)> {
    check_interior(set, m)?;
    let n = set.big_n() as f64;
    let a = half_root_sum(set.beta());
    let shift = (n - n * a) / (n - 2.0 * m as f64);
    Ok((a - shift, a + shift))
}

/// `F(Q_m) = −2NA³ − 3A²(N − NA) + (N − NA)³/(N − 2m)² + 2N(1 − β)`.
pub fn interior_value(set: &FeasibleSet, m: usize) -> Result<f64> {
    check_interior(set, m)?;
    let n = set.big_n() as f64;
    let a = half_root_sum(set.beta());
    let t = n - n * a;
    let w = n - 2.0 * m as f64;
    Ok(-2.0 * n * a.powi(3) - 3.0 * a * a * t + t.powi(3) / (w * w) + 2.0 * n * (1.0 - set.beta()))
}

pub fn interior_critical(set: &FeasibleSet, m: usize) -> Result<CriticalPoint> {
    let (r, s) = interior_roots(set, m)?;
    let mut coordinates = vec![r; m];
    coordinates.resize(set.big_n(), s);
    let closed_form = interior_value(set, m)?;
    Ok(CriticalPoint {
        kind: CriticalKind::Interior { m },
        value: set.f(&coordinates),
        feasible: set.contains(&coordinates),
        coordinates,
        closed_form,
    })
}

fn check_boundary(set: &FeasibleSet, k: usize, l: usize, a: f64) -> Result<()> {
    let n = set.big_n();
    if k == 0 || k > n - 2 {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..=N-2")));
    }
    if 2 * l == k {
        return Err(Error::InfeasibleFamily(format!(
            "P_(k,l) with l = k/2 = {l}: needs B − kA = 0 but B − kA > 0 on the admissible range"
        )));
    }
    if 2 * l > k {
        return Err(Error::InvalidArgument(format!("l = {l} > k/2")));
    }
    check_a(set, a)
}

fn check_a(set: &FeasibleSet, a: f64) -> Result<()> {
    let (lo, hi) = set.a_range();
    let slack = RANGE_TOL * (1.0 + hi.abs());
    if !(a >= lo - slack && a <= hi + slack) {
        return Err(Error::InvalidArgument(format!("a = {a} outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// `B = N − 2 + 2β − (N − 2 − k) a`.
fn b_term(set: &FeasibleSet, k: usize, a: f64) -> f64 {
    let n = set.big_n() as f64;
    n - 2.0 + 2.0 * set.beta() - (n - 2.0 - k as f64) * a
}

/// `(c, d)` solving `c + d = 2A`, `l c + (k − l) d = B`.
pub fn boundary_roots(set: &FeasibleSet, k: usize, l: usize, a: f64) -> Result<(f64, f64)> {
    check_boundary(set, k, l, a)?;
    let big_a = half_root_sum(set.beta());
    let shift = (b_term(set, k, a) - k as f64 * big_a) / (k as f64 - 2.0 * l as f64);
    Ok((big_a - shift, big_a + shift))
}

/// Closed form of `F(P_{k,l}(a))`; `O(1)` in `N`.
pub fn boundary_value(set: &FeasibleSet, k: usize, l: usize, a: f64) -> Result<f64> {
    check_boundary(set, k, l, a)?;
    let n = set.big_n() as f64;
    let beta = set.beta();
    let kf = k as f64;
    let big_a = half_root_sum(beta);
    let x1 = -2.0 * beta + 2.0 - a;
    let reps = n - 1.0 - kf;
    let excess = b_term(set, k, a) - kf * big_a;
    let w = kf - 2.0 * l as f64;
    Ok(x1.powi(3) + reps * a.powi(3) - 3.0 * big_a * (x1 * x1 + reps * a * a)
        + 2.0 * n * (1.0 - beta)
        - 2.0 * kf * big_a.powi(3)
        - 3.0 * big_a * big_a * excess
        + excess.powi(3) / (w * w))
}

/// Coordinates of `P_{k,l}(a)` as `(value, multiplicity)` blocks.
fn boundary_blocks(set: &FeasibleSet, k: usize, l: usize, a: f64) -> Result<[(f64, usize); 4]> {
    let (c, d) = boundary_roots(set, k, l, a)?;
    let n = set.big_n();
    Ok([
        (-2.0 * set.beta() + 2.0 - a, 1),
        (a, n - 1 - k),
        (c, l),
        (d, k - l),
    ])
}

/// Pair feasibility of `P_{k,l}(a)` without materialising coordinates.
pub fn boundary_is_feasible(set: &FeasibleSet, k: usize, l: usize, a: f64) -> Result<bool> {
    let blocks = boundary_blocks(set, k, l, a)?;
    let mut vals: Vec<f64> = blocks
        .iter()
        .flat_map(|&(v, mult)| std::iter::repeat_n(v, mult.min(2)))
        .collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals[0] + vals[1] >= set.pair_bound() - PAIR_TOL)
}

pub fn boundary_critical(set: &FeasibleSet, k: usize, l: usize, a: f64) -> Result<CriticalPoint> {
    let blocks = boundary_blocks(set, k, l, a)?;
    let coordinates: Vec<f64> = blocks
        .iter()
        .flat_map(|&(v, mult)| std::iter::repeat_n(v, mult))
        .collect();
    let closed_form = boundary_value(set, k, l, a)?;
    Ok(CriticalPoint {
        kind: CriticalKind::Boundary { k, l, a },
        value: set.f(&coordinates),
        feasible: set.contains(&coordinates),
        coordinates,
        closed_form,
    })
}

/// `D = N − 2 + 2β − (N − 2) a`, non-negative on the admissible range.
pub fn boundary_gap(set: &FeasibleSet, a: f64) -> f64 {
    let n = set.big_n() as f64;
    n - 2.0 + 2.0 * set.beta() - (n - 2.0) * a
}

/// `F(P_{k,0}(a)) = 2(a−1)(a+β−1)D + D²(D/k² + (3a−3+2β)/k)`.
pub fn boundary_k0_value(set: &FeasibleSet, k: usize, a: f64) -> Result<f64> {
    check_boundary(set, k, 0, a)?;
    let beta = set.beta();
    let d = boundary_gap(set, a);
    let kf = k as f64;
    Ok(2.0 * (a - 1.0) * (a + beta - 1.0) * d + d * d * (d / (kf * kf) + (3.0 * a - 3.0 + 2.0 * beta) / kf))
}

/// Constant term of `F(P_{N−2,0}(a))` as a quadratic in `a`:
/// `2β(2β − 1) + 8β³(N − 1)/(N − 2)²`.
pub fn boundary_profile_constant(set: &FeasibleSet) -> f64 {
    let n = set.big_n() as f64;
    let beta = set.beta();
    2.0 * beta * (2.0 * beta - 1.0) + 8.0 * beta.powi(3) * (n - 1.0) / ((n - 2.0) * (n - 2.0))
}

/// `F(P_{N−2,0}(a)) = −2βa² + 4β(1 − β)a + C`.
pub fn boundary_profile(set: &FeasibleSet, a: f64) -> Result<f64> {
    check_a(set, a)?;
    let beta = set.beta();
    Ok(-2.0 * beta * a * a + 4.0 * beta * (1.0 - beta) * a + boundary_profile_constant(set))
}

/// `g'(1/k) = 2D/k + (3a − 3 + 2β)` for `g(s) = Ds² + (3a − 3 + 2β)s`.
pub fn boundary_slope(set: &FeasibleSet, k: usize, a: f64) -> f64 {
    2.0 * boundary_gap(set, a) / k as f64 + 3.0 * a - 3.0 + 2.0 * set.beta()
}

/// Lower bound `(N + 2)β/(N − 2)` on [`boundary_slope`] for `k <= N − 2`.
pub fn boundary_slope_bound(set: &FeasibleSet) -> f64 {
    let n = set.big_n() as f64;
    (n + 2.0) * set.beta() / (n - 2.0)
}

/// Assembles `P_{N−2,0}(a)` and evaluates `F` directly.
pub fn boundary_profile_direct(set: &FeasibleSet, a: f64) -> Result<f64> {
    Ok(big_f(
        &boundary_critical(set, set.big_n() - 2, 0, a)?.coordinates,
        set.beta(),
    ))
}
