//! The verification suite behind `cosk verify`. Every check is a plain
//! function of `(n, seed, trials)` so tests can run them one at a time.

use cosk_core::bochner::{classify_einstein, explicit_low_dim, f_lower, lemma32_check, VerdictKind};
use cosk_core::cone::{coefficient_identities, theta_f64, theta_of_n, theta_window_holds, ConeStatus};
use cosk_core::extremal::{
    boundary_critical, enumerate_minimum, interior_critical, ordering_chain, EnumerationOptions,
    FeasibleSet,
};
use cosk_core::second_kind::{analyze, sw_norms};
use cosk_core::tensor::{
    random_einstein, random_weyl, rng_from_seed, scalar, tensor_norm_sq, weyl_decompose,
    CurvatureTensor,
};
use cosk_core::{s20_dim, Error, Result};
use num_rational::Rational64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const IDENTITY_TOL: f64 = 1e-9;
pub const SLACK_TOL: f64 = 1e-8;
pub const GLOBAL_MIN_TOL: f64 = 1e-8;
pub const AGREEMENT_TOL: f64 = 1e-6;
pub const ENDPOINT_TOL: f64 = 1e-9;
pub const NEAR_SPHERE_EPSILONS: [f64; 3] = [0.01, 0.05, 0.1];
/// Fractions of the largest Weyl amplitude that keeps `½g⊠g + tW` in the cone.
pub const EDGE_FRACTIONS: [f64; 2] = [0.5, 1.0];

// seed streams, one per check
const NORMS: u64 = 1;
const WEYL: u64 = 2;
const NEAR_SPHERE: u64 = 3;
const EDGE: u64 = 4;
const LOW_DIM: u64 = 5;

/// Seed of one trial, mixed with splitmix64 so nearby inputs decorrelate.
pub fn trial_seed(seed: u64, stream: u64, n: usize, trial: usize) -> u64 {
    let mut z = seed
        ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (n as u64).wrapping_mul(0xbf58_476d_1ce4_e5b9)
        ^ (trial as u64).wrapping_mul(0x94d0_49bb_1331_11eb);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = ">")]
    Above,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub n: Option<usize>,
    pub passed: bool,
    /// `None` when the measurement is not a finite number.
    pub measured: Option<f64>,
    pub relation: Relation,
    pub threshold: f64,
    pub samples: usize,
    pub detail: String,
}

impl CheckResult {
    pub fn new(
        name: &str,
        n: Option<usize>,
        measured: f64,
        relation: Relation,
        threshold: f64,
        samples: usize,
        detail: impl Into<String>,
    ) -> Self {
        let within = match relation {
            Relation::AtMost => measured <= threshold,
            Relation::AtLeast => measured >= threshold,
            Relation::Above => measured > threshold,
        };
        let mut detail = detail.into();
        if samples == 0 {
            detail = format!("no samples; {detail}");
        }
        Self {
            name: name.to_string(),
            n,
            passed: within && samples > 0 && measured.is_finite(),
            measured: measured.is_finite().then_some(measured),
            relation,
            threshold,
            samples,
            detail,
        }
    }

    /// One line: `PASS name (n = 8): measured 1.2e-12 <= 1e-9`.
    pub fn summary(&self) -> String {
        let dim = self.n.map(|n| format!(" (n = {n})")).unwrap_or_default();
        let rel = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Above => ">",
        };
        let measured = self
            .measured
            .map_or_else(|| "non-finite".to_string(), |m| format!("{m:e}"));
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{status} {}{dim}: measured {measured} {rel} {:e} over {} samples; {}",
            self.name, self.threshold, self.samples, self.detail
        )
    }
}

/// A recorded measurement with no pass/fail attached.
#[derive(Clone, Debug, Serialize)]
pub struct Observation {
    pub name: String,
    pub n: Option<usize>,
    pub value: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub checks: Vec<CheckResult>,
    pub observations: Vec<Observation>,
    pub passed: bool,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub epsilons: Vec<f64>,
    pub oracle_restarts: usize,
    pub grid_points: usize,
    pub low_dim_spectra: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            dims: crate::config::DEFAULT_DIMS.to_vec(),
            trials: 100,
            seed: 0,
            epsilons: NEAR_SPHERE_EPSILONS.to_vec(),
            oracle_restarts: 200,
            grid_points: 2001,
            low_dim_spectra: 1000,
        }
    }
}

/// Exact anchors `θ(4) = 1/2`, `θ(5) = 2/3`, `θ(8) = 1/20` and the window
/// `0 < θ(n) < 2(n−1)/(n+2)` for `8 <= n <= 64`. Measures the failure count.
pub fn check_theta_constants() -> CheckResult {
    let anchors = [(4, Rational64::new(1, 2)), (5, Rational64::new(2, 3)), (8, Rational64::new(1, 20))];
    let mut failures = Vec::new();
    for (n, want) in anchors {
        if theta_of_n(n).ok() != Some(want) {
            failures.push(format!("theta({n})"));
        }
    }
    for n in 8..=64 {
        if !theta_window_holds(n).unwrap_or(false) {
            failures.push(format!("window n = {n}"));
        }
    }
    let detail = if failures.is_empty() {
        "exact anchors at n = 4, 5, 8; window for 8 <= n <= 64".to_string()
    } else {
        format!("failed: {}", failures.join(", "))
    };
    CheckResult::new("theta_constants", None, failures.len() as f64, Relation::AtMost, 0.0, 60, detail)
}

/// Both rational coefficient identities for `8 <= n <= 64`.
pub fn check_coefficient_identities() -> CheckResult {
    let mut failures = Vec::new();
    for n in 8..=64 {
        match coefficient_identities(n) {
            Ok(pairs) if pairs.iter().all(|(l, r)| l == r) => {}
            _ => failures.push(n.to_string()),
        }
    }
    let detail = if failures.is_empty() {
        "exact in rational arithmetic for 8 <= n <= 64".to_string()
    } else {
        format!("failed at n = {}", failures.join(", "))
    };
    CheckResult::new("coefficient_identities", None, failures.len() as f64, Relation::AtMost, 0.0, 57, detail)
}

/// Einstein tensor for the norm-identity trials: unit Weyl amplitude and a
/// scalar curvature cycling through negative, zero and positive values.
fn identity_tensor(n: usize, seed: u64, trial: usize) -> Result<CurvatureTensor> {
    let nf = n as f64;
    let scal = nf * (nf - 1.0) * ((trial % 5) as f64 - 1.0);
    random_einstein(n, trial_seed(seed, NORMS, n, trial), 1.0, scal)
}

/// `|R|² = |W|² + 2n(n−1)λ̄²`, `Σλ² = ¾|R|² − (n−1)²λ̄²`,
/// `|W|² = (4/3)Σλ² − (4N/3)λ̄²` and `Scal = n(n−1)λ̄`, as the largest relative
/// defect over `trials` random Einstein tensors.
pub fn check_norm_identities(n: usize, seed: u64, trials: usize) -> Result<CheckResult> {
    let (nf, big_n) = (n as f64, s20_dim(n) as f64);
    let defects: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<f64> {
            let r = identity_tensor(n, seed, t)?;
            let (_, spec) = analyze(&r)?;
            let lb = spec.lambda_bar;
            let r2 = tensor_norm_sq(r.table());
            let w2 = weyl_decompose(&r)?.weyl.norm_sq();
            let sq = spec.sum_sq();
            Ok([
                rel(r2, w2 + 2.0 * nf * (nf - 1.0) * lb * lb),
                rel(sq, 0.75 * r2 - (nf - 1.0).powi(2) * lb * lb),
                rel(w2, 4.0 / 3.0 * sq - 4.0 * big_n / 3.0 * lb * lb),
                rel(scalar(&r), nf * (nf - 1.0) * lb),
            ]
            .into_iter()
            .fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    let worst = defects.iter().copied().fold(0.0, f64::max);
    Ok(CheckResult::new(
        "norm_identities",
        Some(n),
        worst,
        Relation::AtMost,
        IDENTITY_TOL,
        trials,
        "largest relative defect of |R|^2, sum of squares, |W|^2 and Scal identities",
    ))
}

/// Over an eigenbasis `Sʲ` of each random Weyl tensor's own operator:
/// `Σ|SʲW|² = (2(n²+n−8)/n)|W|²` (relative defect) and
/// `max|SʲW|² − ((8n−16)/n)|W|²` (excess over the cap).
pub fn check_weyl_norms(n: usize, seed: u64, trials: usize) -> Result<[CheckResult; 2]> {
    let nf = n as f64;
    let rows: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(f64, f64)> {
            let w = random_weyl(n, &mut rng_from_seed(trial_seed(seed, WEYL, n, t)))?;
            let (op, spec) = analyze(&w)?;
            let sw = sw_norms(&spec.eigenmatrices(&op.basis), &w, 1e-9)?;
            let w2 = w.norm_sq();
            let total: f64 = sw.iter().sum();
            let cap = (8.0 * nf - 16.0) / nf * w2;
            let excess = sw.iter().map(|s| s - cap).fold(f64::NEG_INFINITY, f64::max);
            Ok((rel(total, 2.0 * (nf * nf + nf - 8.0) / nf * w2), excess))
        })
        .collect::<Result<_>>()?;
    let sum = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let excess = rows.iter().map(|r| r.1).fold(f64::NEG_INFINITY, f64::max);
    Ok([
        CheckResult::new(
            "weyl_norm_sum",
            Some(n),
            sum,
            Relation::AtMost,
            IDENTITY_TOL,
            trials,
            "relative defect of sum_j |S^j W|^2 = (2(n^2+n-8)/n)|W|^2",
        ),
        CheckResult::new(
            "weyl_norm_cap",
            Some(n),
            excess,
            Relation::AtMost,
            IDENTITY_TOL,
            trials,
            "largest max_j |S^j W|^2 - ((8n-16)/n)|W|^2",
        ),
    ])
}

/// `½g⊠g + t·W` with `t = frac · 2(1+θ)/−(μ₁+μ₂)`, `μ` the spectrum of `W`.
/// The spectrum is `1 + tμ`, so `frac = 1` sits on the cone boundary.
pub fn cone_edge_tensor(n: usize, seed: u64, frac: f64) -> Result<CurvatureTensor> {
    let theta = theta_f64(n)?;
    let w = random_weyl(n, &mut rng_from_seed(seed))?;
    let (_, spec) = analyze(&w)?;
    let edge = 2.0 * (1.0 + theta) / -(spec.values[0] + spec.values[1]);
    Ok(CurvatureTensor::sphere(n).axpy(frac * edge, &w))
}

/// Every generated Einstein tensor of dimension `n`, in a fixed order:
/// norm-identity tensors, near-sphere tensors per `ε`, cone-edge tensors.
pub fn suite_tensors(n: usize, seed: u64, trials: usize, epsilons: &[f64]) -> Result<Vec<(String, CurvatureTensor)>> {
    let nf = n as f64;
    let mut specs: Vec<(String, u8, f64, usize)> = Vec::new();
    for t in 0..trials {
        specs.push((format!("random #{t}"), 0, 0.0, t));
    }
    for &eps in epsilons {
        for t in 0..trials {
            specs.push((format!("near_sphere eps = {eps} #{t}"), 1, eps, t));
        }
    }
    if theta_f64(n).is_ok() {
        for &frac in &EDGE_FRACTIONS {
            for t in 0..trials {
                specs.push((format!("cone edge {frac} #{t}"), 2, frac, t));
            }
        }
    }
    specs
        .into_par_iter()
        .map(|(label, kind, p, t)| {
            let r = match kind {
                0 => identity_tensor(n, seed, t)?,
                1 => random_einstein(n, trial_seed(seed, NEAR_SPHERE, n, t), p, nf * (nf - 1.0))?,
                _ => cone_edge_tensor(n, trial_seed(seed, EDGE, n, t), p)?,
            };
            Ok((label, r))
        })
        .collect()
}

/// `Σλ_j|SʲW|² >= rhs` on near-sphere tensors inside the cone, as the
/// smallest slack. Needs `θ(n)` and `n >= 6`.
pub fn check_weighted_weyl_bound(n: usize, seed: u64, trials: usize, epsilons: &[f64]) -> Result<CheckResult> {
    let theta = theta_f64(n)?;
    let nf = n as f64;
    let jobs: Vec<(f64, usize)> = epsilons
        .iter()
        .flat_map(|&e| (0..trials).map(move |t| (e, t)))
        .collect();
    let slacks: Vec<Option<f64>> = jobs
        .into_par_iter()
        .map(|(eps, t)| {
            let r = random_einstein(n, trial_seed(seed, NEAR_SPHERE, n, t), eps, nf * (nf - 1.0))?;
            match lemma32_check(&r, theta) {
                Ok((lhs, rhs)) => Ok(Some(lhs - rhs)),
                Err(Error::Precondition(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let tested: Vec<f64> = slacks.iter().flatten().copied().collect();
    let min = tested.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CheckResult::new(
        "weighted_weyl_bound",
        Some(n),
        if tested.is_empty() { 0.0 } else { min },
        Relation::AtLeast,
        -SLACK_TOL,
        tested.len(),
        format!(
            "smallest slack of sum_j lambda_j |S^j W|^2 over near-sphere tensors in the cone; {} of {} outside",
            slacks.len() - tested.len(),
            slacks.len()
        ),
    ))
}

/// Classifies every generated tensor and checks `⟨ΔR, R⟩ >= −tol` and the
/// full lower-bound chain on those inside the cone.
pub fn check_bochner(n: usize, seed: u64, trials: usize, epsilons: &[f64]) -> Result<[CheckResult; 2]> {
    let tensors = suite_tensors(n, seed, trials, epsilons)?;
    let rows: Vec<Option<(f64, bool, String)>> = tensors
        .par_iter()
        .map(|(label, r)| {
            let c = classify_einstein(r)?;
            Ok(c.report.and_then(|rep| {
                (rep.cone.status != ConeStatus::Violated)
                    .then(|| (rep.delta_r_inner, rep.chain_holds(SLACK_TOL), label.clone()))
            }))
        })
        .collect::<Result<_>>()?;
    let inside: Vec<&(f64, bool, String)> = rows.iter().flatten().collect();
    let (min, worst) = inside
        .iter()
        .fold((f64::INFINITY, ""), |acc, r| if r.0 < acc.0 { (r.0, r.2.as_str()) } else { acc });
    let broken: Vec<&str> = inside.iter().filter(|r| !r.1).map(|r| r.2.as_str()).collect();
    let samples = inside.len();
    Ok([
        CheckResult::new(
            "delta_r_nonnegative",
            Some(n),
            if samples == 0 { 0.0 } else { min },
            Relation::AtLeast,
            -SLACK_TOL,
            samples,
            format!(
                "smallest <Delta R, R> over {samples} of {} generated tensors inside the cone (at {worst})",
                tensors.len()
            ),
        ),
        CheckResult::new(
            "bochner_chain",
            Some(n),
            broken.len() as f64,
            Relation::AtMost,
            0.0,
            samples,
            if broken.is_empty() {
                "every cone-satisfying tensor satisfies the full lower-bound chain".to_string()
            } else {
                format!("chain broken at {}", broken.join(", "))
            },
        ),
    ])
}

/// `2·explicit_low_dim = f_lower(·, θ(n))` on random spectra with `λ̄ > 0`.
pub fn check_low_dim_identity(n: usize, seed: u64, spectra: usize) -> Result<CheckResult> {
    let theta = theta_f64(n)?;
    let big_n = s20_dim(n);
    let mut rng = rng_from_seed(trial_seed(seed, LOW_DIM, n, 0));
    let mut worst: f64 = 0.0;
    for _ in 0..spectra {
        let vals = loop {
            let v: Vec<f64> = (0..big_n).map(|_| rng.gen_range(-2.0..4.0)).collect();
            if v.iter().sum::<f64>() > 0.0 {
                break v;
            }
        };
        let e = explicit_low_dim(&vals, n)?;
        let f = f_lower(&vals, n, theta)?;
        worst = worst.max((2.0 * e - f).abs() / (1.0 + f.abs()));
    }
    Ok(CheckResult::new(
        "low_dim_identity",
        Some(n),
        worst,
        Relation::AtMost,
        IDENTITY_TOL,
        spectra,
        "relative defect of 2 * closed form = cubic lower bound",
    ))
}

/// Largest coordinate distance between the reported minimizers and the two
/// expected profiles, matched in both directions.
fn minimizer_deviation(found: &[Vec<f64>], expected: &[Vec<f64>]) -> f64 {
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let one_way = |xs: &[Vec<f64>], ys: &[Vec<f64>]| {
        xs.iter()
            .map(|x| ys.iter().map(|y| dist(x, y)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(found, expected).max(one_way(expected, found))
}

/// Critical-point enumeration plus the multistart oracle for `β = 1 + θ(n)`.
pub fn check_extremal(n: usize, seed: u64, restarts: usize, grid_points: usize) -> Result<Vec<CheckResult>> {
    let set = FeasibleSet::for_dimension(n)?;
    let opts = EnumerationOptions {
        grid_points,
        oracle_restarts: restarts,
        oracle_seed: seed,
        ..Default::default()
    };
    let rep = enumerate_minimum(&set, &opts)?;
    let mut boundary = set.boundary_minimizer();
    boundary.sort_by(f64::total_cmp);
    let expected = vec![set.round_minimizer(), boundary];
    let deviation = minimizer_deviation(&rep.minimizers, &expected);
    let count = rep.minimizers.len();
    let mut minimizers = CheckResult::new(
        "extremal_minimizers",
        Some(n),
        deviation,
        Relation::AtMost,
        AGREEMENT_TOL,
        rep.critical_table.len(),
        format!("{count} minimizers against the round and boundary profiles"),
    );
    minimizers.passed &= count == expected.len();
    Ok(vec![
        CheckResult::new(
            "extremal_global_min",
            Some(n),
            rep.global_min.abs(),
            Relation::AtMost,
            GLOBAL_MIN_TOL,
            rep.critical_table.len(),
            format!("global_min = {:e} over the critical table, N = {}", rep.global_min, set.big_n()),
        ),
        minimizers,
        CheckResult::new(
            "extremal_oracle_agreement",
            Some(n),
            rep.agreement,
            Relation::AtMost,
            AGREEMENT_TOL,
            restarts,
            format!(
                "|oracle_min - global_min| with oracle_min = {:e}; {} restarts hit the iteration cap",
                rep.oracle_min, rep.oracle_non_converged
            ),
        ),
        CheckResult::new(
            "extremal_oracle_floor",
            Some(n),
            rep.oracle_min,
            Relation::AtLeast,
            -AGREEMENT_TOL,
            restarts,
            "smallest feasible F found by multistart descent",
        ),
    ])
}

/// The closed-form ordering chain on an `a`-grid, `F(Q_m) > 0`, and the
/// infeasibility errors for `m = N/2` and `l = k/2`.
pub fn check_closed_form_chain(n: usize, grid_points: usize) -> Result<Vec<CheckResult>> {
    let set = FeasibleSet::for_dimension(n)?;
    let c = ordering_chain(&set, grid_points)?;
    let big_n = set.big_n();
    let (lo, hi) = set.a_range();
    let mut expected = 0;
    let mut missing = Vec::new();
    if big_n % 2 == 0 {
        expected += 1;
        if !matches!(interior_critical(&set, big_n / 2), Err(Error::InfeasibleFamily(_))) {
            missing.push(format!("Q_{}", big_n / 2));
        }
    }
    for k in (2..=big_n - 2).step_by(2) {
        for a in [lo, 0.5 * (lo + hi), hi] {
            expected += 1;
            if !matches!(boundary_critical(&set, k, k / 2, a), Err(Error::InfeasibleFamily(_))) {
                missing.push(format!("P_({k},{}) at a = {a}", k / 2));
            }
        }
    }
    let pts = c.grid_points;
    let chain = |name: &str, v: f64, what: &str| {
        CheckResult::new(name, Some(n), v, Relation::Above, 0.0, pts, what.to_string())
    };
    Ok(vec![
        chain("chain_interior_values", c.interior_min, "min F(Q_m) over 1 <= m < N/2"),
        chain("chain_mixed_over_pure", c.mixed_over_pure, "min F(P_(k,l)) - F(P_(k,0)) over the grid"),
        chain(
            "chain_pure_over_profile",
            c.pure_over_profile,
            "min F(P_(k,0)) - F(P_(N-2,0)) over k <= N-3 and grid a below the end",
        ),
        chain("chain_profile_interior", c.profile_interior, "min F(P_(N-2,0)) over grid a below the end"),
        CheckResult::new(
            "chain_endpoint",
            Some(n),
            c.endpoint_residual,
            Relation::AtMost,
            ENDPOINT_TOL,
            big_n - 2,
            "max |F(P_(k,0)(a_max))|; every pure family meets the profile at the right end",
        ),
        CheckResult::new(
            "infeasible_families",
            Some(n),
            missing.len() as f64,
            Relation::AtMost,
            0.0,
            expected,
            if missing.is_empty() {
                format!("all {expected} degenerate constructions rejected (N = {big_n})")
            } else {
                format!("accepted: {}", missing.join(", "))
            },
        ),
    ])
}

/// The sphere (at two scales) must classify as the round profile, zero as flat.
pub fn check_model_classification(n: usize) -> Result<CheckResult> {
    let cases = [
        (CurvatureTensor::sphere(n), VerdictKind::RoundSphereProfile),
        (CurvatureTensor::sphere(n).scaled(3.5), VerdictKind::RoundSphereProfile),
        (CurvatureTensor::zeros(n), VerdictKind::Flat),
    ];
    let mut wrong = Vec::new();
    for (r, want) in &cases {
        let got = classify_einstein(r)?.verdict.verdict;
        if got != *want {
            wrong.push(format!("{want:?} classified as {got:?}"));
        }
    }
    Ok(CheckResult::new(
        "model_classification",
        Some(n),
        wrong.len() as f64,
        Relation::AtMost,
        0.0,
        cases.len(),
        if wrong.is_empty() {
            "sphere and flat models classified as expected".to_string()
        } else {
            wrong.join("; ")
        },
    ))
}

/// Size of `general − closed form` for `n ∈ {4, 5}` and how far it is from
/// `−16 λ̄ Σ(λ − λ̄)²`.
pub fn low_dim_discrepancy(n: usize, seed: u64, trials: usize) -> Result<Observation> {
    let rows: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(f64, f64)> {
            let r = identity_tensor(n, seed, t)?;
            let c = classify_einstein(&r)?;
            let Some(rep) = c.report else {
                return Ok((0.0, 0.0));
            };
            let gap = rep.low_dim_discrepancy.unwrap_or(0.0);
            let vals = c.spectrum.unwrap_or_default();
            let lb = rep.lambda_bar;
            let spread: f64 = vals.iter().map(|l| (l - lb).powi(2)).sum();
            Ok((gap.abs(), (gap + 16.0 * lb * spread).abs() / (1.0 + gap.abs())))
        })
        .collect::<Result<_>>()?;
    let largest = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let resid = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(Observation {
        name: "low_dim_general_minus_closed_form".to_string(),
        n: Some(n),
        value: largest,
        detail: format!(
            "largest |general - closed form| over {trials} random Einstein tensors; \
             equals -16 lambda_bar sum (lambda - lambda_bar)^2 to relative {resid:e}"
        ),
    })
}

/// Extra check for a user-supplied tensor: where the bounds apply, the
/// lower-bound chain must hold.
pub fn check_supplied(label: &str, r: &CurvatureTensor) -> Result<CheckResult> {
    let c = classify_einstein(r)?;
    let verdict = serde_json::to_value(c.verdict.verdict)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    let (measured, holds) = match &c.report {
        Some(rep) => (rep.delta_r_inner, rep.chain_holds(SLACK_TOL)),
        None => (0.0, true),
    };
    let mut check = CheckResult::new(
        "supplied_tensor",
        Some(r.n()),
        measured,
        Relation::AtLeast,
        -SLACK_TOL,
        1,
        format!("{label}: {verdict}; {}", c.verdict.details),
    );
    // outside the cone or without a known θ nothing is claimed
    check.passed = holds;
    Ok(check)
}

/// Runs every check for each dimension in `opts.dims`.
pub fn run_suite(opts: &SuiteOptions, supplied: Option<(&str, &CurvatureTensor)>) -> Result<SuiteReport> {
    let (seed, trials) = (opts.seed, opts.trials);
    let mut checks = vec![check_theta_constants(), check_coefficient_identities()];
    let mut observations = Vec::new();
    for &n in &opts.dims {
        if n < 3 {
            return Err(Error::UnsupportedDimension {
                n,
                reason: "the suite needs n >= 3",
            });
        }
        let has_theta = theta_f64(n).is_ok();
        checks.push(check_norm_identities(n, seed, trials)?);
        checks.extend(check_weyl_norms(n, seed, trials)?);
        if has_theta && n >= 6 {
            checks.push(check_weighted_weyl_bound(n, seed, trials, &opts.epsilons)?);
        }
        if has_theta {
            checks.extend(check_bochner(n, seed, trials, &opts.epsilons)?);
            checks.push(check_model_classification(n)?);
            checks.extend(check_extremal(n, seed, opts.oracle_restarts, opts.grid_points)?);
            checks.extend(check_closed_form_chain(n, opts.grid_points)?);
        }
        if n == 4 || n == 5 {
            checks.push(check_low_dim_identity(n, seed, opts.low_dim_spectra)?);
            observations.push(low_dim_discrepancy(n, seed, trials)?);
        }
    }
    if let Some((label, r)) = supplied {
        checks.push(check_supplied(label, r)?);
    }
    let first_failure = checks.iter().find(|c| !c.passed).map(CheckResult::summary);
    Ok(SuiteReport {
        seed,
        trials,
        dims: opts.dims.clone(),
        passed: first_failure.is_none(),
        checks,
        observations,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_streams_and_trials() {
        let a = trial_seed(0, NORMS, 4, 0);
        assert_ne!(a, trial_seed(0, WEYL, 4, 0));
        assert_ne!(a, trial_seed(0, NORMS, 4, 1));
        assert_ne!(a, trial_seed(0, NORMS, 5, 0));
        assert_ne!(a, trial_seed(1, NORMS, 4, 0));
        assert_eq!(a, trial_seed(0, NORMS, 4, 0));
    }

    #[test]
    fn relations() {
        let c = CheckResult::new("x", None, 0.0, Relation::Above, 0.0, 1, "");
        assert!(!c.passed);
        let c = CheckResult::new("x", None, 0.0, Relation::AtLeast, 0.0, 1, "");
        assert!(c.passed);
        let c = CheckResult::new("x", None, f64::NAN, Relation::AtMost, 1.0, 1, "");
        assert!(!c.passed && c.measured.is_none());
        let c = CheckResult::new("x", None, 0.0, Relation::AtMost, 1.0, 0, "");
        assert!(!c.passed);
    }

    #[test]
    fn exact_checks_pass() {
        assert!(check_theta_constants().passed);
        assert!(check_coefficient_identities().passed);
    }

    #[test]
    fn small_suite_n4() {
        let opts = SuiteOptions {
            dims: vec![4],
            trials: 2,
            oracle_restarts: 4,
            grid_points: 51,
            low_dim_spectra: 20,
            ..Default::default()
        };
        let rep = run_suite(&opts, None).unwrap();
        assert!(rep.passed, "{:?}", rep.first_failure);
        assert_eq!(rep.observations.len(), 1);
    }

    #[test]
    fn deviation_is_symmetric() {
        let e = vec![vec![1.0, 1.0], vec![0.0, 2.0]];
        assert_eq!(minimizer_deviation(&e, &e), 0.0);
        let f = vec![vec![1.0, 1.0]];
        assert_eq!(minimizer_deviation(&f, &e), 1.0);
    }
}
