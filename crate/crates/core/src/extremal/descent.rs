use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{min_pair, FeasibleSet};
use crate::{Error, Result};

/// Penalty schedule and stopping rule for [`multistart_descent`].
#[derive(Clone, Copy, Debug)]
pub struct DescentOptions {
    /// Iteration cap per restart, summed over all penalty stages.
    pub max_iter: usize,
    pub initial_penalty: f64,
    pub penalty_growth: f64,
    pub stages: usize,
    /// Stage ends once the projected gradient norm drops below this.
    pub grad_tol: f64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            initial_penalty: 1e2,
            penalty_growth: 10.0,
            stages: 5,
            grad_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestartResult {
    pub restart: usize,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DescentOutcome {
    /// Smallest `F` over the repaired (feasible) end points.
    pub min_value: f64,
    pub argmin: Vec<f64>,
    pub restarts: Vec<RestartResult>,
}

impl DescentOutcome {
    pub fn non_converged(&self) -> usize {
        self.restarts.iter().filter(|r| !r.converged).count()
    }
}

/// Penalized objective `F(x) + ρ Σ_{i<j} max(0, b − x_i − x_j)²` and its
/// gradient, `b = −2(β − 1)`.
struct Penalized<'a> {
    set: &'a FeasibleSet,
    rho: f64,
}

impl Penalized<'_> {
    /// Visits every violated pair once; `x` sorted ascending by `order`.
    fn violations(&self, x: &[f64], order: &[usize], mut visit: impl FnMut(usize, usize, f64)) {
        let b = self.set.pair_bound();
        for (p, &i) in order.iter().enumerate() {
            let mut any = false;
            for &j in &order[p + 1..] {
                let v = b - x[i] - x[j];
                if v <= 0.0 {
                    break;
                }
                any = true;
                visit(i, j, v);
            }
            if !any {
                break;
            }
        }
    }

    fn sorted_order(x: &[f64]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
        order
    }

    fn value(&self, x: &[f64]) -> f64 {
        let order = Self::sorted_order(x);
        let mut pen = 0.0;
        self.violations(x, &order, |_, _, v| pen += v * v);
        self.set.f(x) + self.rho * pen
    }

    /// Gradient projected onto the hyperplane `Σx = const`.
    fn projected_gradient(&self, x: &[f64]) -> Vec<f64> {
        let lin = 2.0 * (3.0 - 2.0 * self.set.beta());
        let mut g: Vec<f64> = x.iter().map(|v| 3.0 * v * v - lin * v).collect();
        let order = Self::sorted_order(x);
        let rho = self.rho;
        self.violations(x, &order, |i, j, v| {
            g[i] -= 2.0 * rho * v;
            g[j] -= 2.0 * rho * v;
        });
        let mean = g.iter().sum::<f64>() / g.len() as f64;
        g.iter_mut().for_each(|v| *v -= mean);
        g
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Moves `x` into the feasible set along the hyperplane: the two smallest
/// coordinates are shifted up by half the violation each and the rest down to
/// keep the sum. Falls back to shrinking towards `(1, …, 1)` when the shift
/// does not settle.
pub fn repair(set: &FeasibleSet, x: &mut [f64]) {
    let b = set.pair_bound();
    let n = x.len();
    for _ in 0..200 {
        let order = Penalized::sorted_order(x);
        let (i, j) = (order[0], order[1]);
        let v = b - x[i] - x[j];
        if v <= 0.0 {
            return;
        }
        let down = v / (n - 2) as f64;
        for (idx, xi) in x.iter_mut().enumerate() {
            if idx == i || idx == j {
                *xi += 0.5 * v;
            } else {
                *xi -= down;
            }
        }
    }
    let mp = min_pair(x);
    if mp < b {
        // min pair of 1 + t(x − 1) is 2 + t(mp − 2), linear in t
        let t = (2.0 - b) / (2.0 - mp);
        x.iter_mut().for_each(|v| *v = 1.0 + t * (*v - 1.0));
    }
}

fn random_start<R: Rng>(set: &FeasibleSet, rng: &mut R) -> Vec<f64> {
    let n = set.big_n();
    let spread = rng.gen_range(0.05..3.0);
    let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0) * spread).collect();
    let mean = z.iter().sum::<f64>() / n as f64;
    let mut x: Vec<f64> = z.iter().map(|v| 1.0 + v - mean).collect();
    repair(set, &mut x);
    x
}

/// Runs penalized projected-gradient descent from `start`; returns the
/// repaired end point, iterations used, and whether every stage met the
/// gradient tolerance.
pub fn descend(set: &FeasibleSet, start: &[f64], opts: &DescentOptions) -> (Vec<f64>, usize, bool) {
    let mut x = start.to_vec();
    let mut iterations = 0;
    let mut converged = true;
    let mut rho = opts.initial_penalty;
    for _ in 0..opts.stages {
        let obj = Penalized { set, rho };
        let mut g = obj.projected_gradient(&x);
        let mut fx = obj.value(&x);
        let mut step = 1e-2;
        let mut stage_done = false;
        while iterations < opts.max_iter {
            let gn = norm(&g);
            if gn <= opts.grad_tol {
                stage_done = true;
                break;
            }
            iterations += 1;
            let mut t = step;
            let mut accepted = None;
            while t > 1e-20 {
                let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - t * b).collect();
                let ft = obj.value(&trial);
                if ft <= fx - 1e-4 * t * gn * gn {
                    accepted = Some((trial, ft));
                    break;
                }
                t *= 0.5;
            }
            let Some((next, fnext)) = accepted else {
                // no descent possible at machine precision
                stage_done = gn <= 1e-6;
                break;
            };
            let gnext = obj.projected_gradient(&next);
            // Barzilai–Borwein trial step for the next iteration
            let (mut ss, mut sy) = (0.0, 0.0);
            for ((xn, xo), (gnw, go)) in next.iter().zip(&x).zip(gnext.iter().zip(&g)) {
                let s = xn - xo;
                ss += s * s;
                sy += s * (gnw - go);
            }
            step = if sy > 0.0 { (ss / sy).clamp(1e-12, 1e3) } else { 2.0 * t };
            x = next;
            fx = fnext;
            g = gnext;
        }
        converged &= stage_done;
        rho *= opts.penalty_growth;
    }
    repair(set, &mut x);
    (x, iterations, converged)
}

/// Seeded multistart oracle for `min F` over the feasible set. Each restart
/// draws from its own ChaCha stream, so results do not depend on scheduling.
pub fn multistart_descent(
    set: &FeasibleSet,
    seed: u64,
    restarts: usize,
    opts: &DescentOptions,
) -> Result<DescentOutcome> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be >= 1".into()));
    }
    let runs: Vec<(RestartResult, Vec<f64>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r as u64);
            let start = random_start(set, &mut rng);
            let (x, iterations, converged) = descend(set, &start, opts);
            let value = set.f(&x);
            (
                RestartResult {
                    restart: r,
                    value,
                    iterations,
                    converged,
                },
                x,
            )
        })
        .collect();
    let best = runs
        .iter()
        .min_by(|a, b| a.0.value.total_cmp(&b.0.value))
        .expect("restarts >= 1");
    Ok(DescentOutcome {
        min_value: best.0.value,
        argmin: best.1.clone(),
        restarts: runs.iter().map(|r| r.0.clone()).collect(),
    })
}
