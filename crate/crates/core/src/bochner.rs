//! Pointwise Bochner quantities for Einstein curvature tensors and the
//! end-to-end classification against the two extremal spectral profiles.

use serde::Serialize;

use crate::cone::{cone_membership, theta_f64, ConeParams, ConeStatus, ConeVerdict};
use crate::extremal::FeasibleSet;
use crate::second_kind::{analyze, sw_norms, Spectrum};
use crate::tensor::{einstein_defect, weyl_decompose, CurvatureTensor};
use crate::{s20_dim, Error, Result};

/// Largest Einstein defect accepted, relative to `max(1, max|R|)`.
pub const EINSTEIN_TOL: f64 = 1e-8;
/// Eigenvalues below this in magnitude count as zero.
pub const FLAT_TOL: f64 = 1e-10;
/// Largest coordinate distance (after dividing by `λ̄`) for a profile match.
pub const PROFILE_TOL: f64 = 1e-6;
/// Trace-freeness demanded of the Weyl part before the `|SʲW|²` sums.
const WEYL_TRACE_TOL: f64 = 1e-9;

fn check_einstein(r: &CurvatureTensor) -> Result<f64> {
    let defect = einstein_defect(r);
    if defect > EINSTEIN_TOL * r.table().max_abs().max(1.0) {
        return Err(Error::NotEinstein(defect));
    }
    Ok(defect)
}

/// `λ̄`, `Σλ²`, `Σλ³` of a spectrum given as plain values.
fn moments(values: &[f64]) -> (f64, f64, f64) {
    let len = values.len() as f64;
    let (s1, s2, s3) = values
        .iter()
        .fold((0.0, 0.0, 0.0), |(a, b, c), l| (a + l, b + l * l, c + l * l * l));
    (s1 / len, s2, s3)
}

fn check_len(values: &[f64], n: usize) -> Result<()> {
    let want = s20_dim(n);
    if values.len() != want {
        return Err(Error::DimensionMismatch(want, values.len()));
    }
    Ok(())
}

/// Spectrum of `R̊` together with `Σ λⱼ |SʲW|²` over the eigenbasis.
struct Pointwise {
    spectrum: Spectrum,
    weighted_sw: f64,
}

fn pointwise(r: &CurvatureTensor) -> Result<Pointwise> {
    let (op, spectrum) = analyze(r)?;
    let weyl = weyl_decompose(r)?.weyl;
    let mats = spectrum.eigenmatrices(&op.basis);
    let sw = sw_norms(&mats, &weyl, WEYL_TRACE_TOL)?;
    let weighted_sw = spectrum.values.iter().zip(&sw).map(|(l, s)| l * s).sum();
    Ok(Pointwise { spectrum, weighted_sw })
}

/// `3⟨ΔR, R⟩ = Σλⱼ|SʲW|² − 16N(2N−9n+6)/(3n) λ̄³ + 16(2N−12n+6)/(3n) λ̄Σλⱼ² + 16Σλⱼ³`.
fn general_from_parts(n: usize, values: &[f64], weighted_sw: f64) -> f64 {
    let (nf, big_n) = (n as f64, values.len() as f64);
    let (lb, s2, s3) = moments(values);
    let three = weighted_sw - 16.0 * big_n * (2.0 * big_n - 9.0 * nf + 6.0) / (3.0 * nf) * lb.powi(3)
        + 16.0 * (2.0 * big_n - 12.0 * nf + 6.0) / (3.0 * nf) * lb * s2
        + 16.0 * s3;
    three / 3.0
}

/// `⟨ΔR, R⟩` from the general pointwise expression for Einstein tensors.
pub fn delta_r_inner(r: &CurvatureTensor) -> Result<f64> {
    let n = r.n();
    if n < 4 {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "the Bochner expression needs n >= 4",
        });
    }
    check_einstein(r)?;
    let p = pointwise(r)?;
    Ok(general_from_parts(n, &p.spectrum.values, p.weighted_sw))
}

/// `f(λ) = 16[−2Nθλ̄³ + (2θ − 1)λ̄Σλⱼ² + Σλⱼ³]`.
pub fn f_lower(values: &[f64], n: usize, theta: f64) -> Result<f64> {
    check_len(values, n)?;
    let big_n = values.len() as f64;
    let (lb, s2, s3) = moments(values);
    Ok(16.0 * (-2.0 * big_n * theta * lb.powi(3) + (2.0 * theta - 1.0) * lb * s2 + s3))
}

/// The lower bound before the coefficient identities are applied:
/// `16/(3n)[N(N−3)θ − (2N−9n+6)N]λ̄³ + 16/(3n)[(2N−12n+6) − (N−3)θ]λ̄Σλⱼ² + 16Σλⱼ³`.
/// Agrees with [`f_lower`] exactly when `θ = θ(n)`, `n >= 8`.
pub fn f_lower_unsimplified(values: &[f64], n: usize, theta: f64) -> Result<f64> {
    check_len(values, n)?;
    let (nf, big_n) = (n as f64, values.len() as f64);
    let (lb, s2, s3) = moments(values);
    let c3 = big_n * (big_n - 3.0) * theta - (2.0 * big_n - 9.0 * nf + 6.0) * big_n;
    let c2 = (2.0 * big_n - 12.0 * nf + 6.0) - (big_n - 3.0) * theta;
    Ok(16.0 / (3.0 * nf) * (c3 * lb.powi(3) + c2 * lb * s2) + 16.0 * s3)
}

/// `⟨ΔR, R⟩` for `n = 4`: `8(Σλⱼ³ − 9λ̄³)`; for `n = 5`:
/// `8(Σλⱼ³ + λ̄Σλⱼ²/3 − 56λ̄³/3)`.
pub fn explicit_low_dim(values: &[f64], n: usize) -> Result<f64> {
    if !matches!(n, 4 | 5) {
        return Err(Error::UnsupportedDimension {
            n,
            reason: "closed forms exist for n = 4 and n = 5 only",
        });
    }
    check_len(values, n)?;
    let (lb, s2, s3) = moments(values);
    Ok(if n == 4 {
        8.0 * (s3 - 9.0 * lb.powi(3))
    } else {
        8.0 * (s3 + lb * s2 / 3.0 - 56.0 / 3.0 * lb.powi(3))
    })
}

/// Right side of the weighted Weyl bound:
/// `−16(N−3)θ/(3n) λ̄Σλⱼ² + 16N(N−3)θ/(3n) λ̄³`.
pub fn lemma32_rhs(values: &[f64], n: usize, theta: f64) -> f64 {
    let (nf, big_n) = (n as f64, values.len() as f64);
    let (lb, s2, _) = moments(values);
    let c = 16.0 * (big_n - 3.0) * theta / (3.0 * nf);
    -c * lb * s2 + c * big_n * lb.powi(3)
}

/// `(Σλⱼ|SʲW|², rhs)` for an Einstein tensor satisfying `λ₁ + λ₂ >= −2θλ̄`.
pub fn lemma32_check(r: &CurvatureTensor, theta: f64) -> Result<(f64, f64)> {
    let n = r.n();
    if n < 6 {
        return Err(Error::Precondition(format!("n = {n} < 6")));
    }
    if !(theta >= 0.0) {
        return Err(Error::Precondition(format!("theta = {theta} < 0")));
    }
    check_einstein(r).map_err(|e| Error::Precondition(e.to_string()))?;
    let p = pointwise(r)?;
    let cone = cone_membership(&p.spectrum.values, ConeParams::new(2.0, theta)?)?;
    if cone.status == ConeStatus::Violated {
        return Err(Error::Precondition(format!(
            "lambda_1 + lambda_2 < -2 theta lambda_bar (margin {:e})",
            cone.margin
        )));
    }
    let rhs = lemma32_rhs(&p.spectrum.values, n, theta);
    Ok((p.weighted_sw, rhs))
}

#[derive(Clone, Debug, Serialize)]
pub struct BochnerReport {
    pub n: usize,
    pub theta: f64,
    pub lambda_bar: f64,
    /// `⟨ΔR, R⟩`: the closed form for `n ∈ {4, 5}`, the general expression otherwise.
    pub delta_r_inner: f64,
    /// The general expression, whatever `n`.
    pub delta_r_general: f64,
    /// `delta_r_general − explicit_low_dim` for `n ∈ {4, 5}`.
    pub low_dim_discrepancy: Option<f64>,
    pub f_lower: f64,
    pub lemma32_lhs: f64,
    pub lemma32_rhs: f64,
    pub cone: ConeVerdict,
    pub einstein_defect: f64,
    /// `θ = θ(n)`: the bounds above are theorems, not just evaluations.
    pub certified: bool,
}

impl BochnerReport {
    /// `lhs >= rhs − tol` and `3⟨ΔR, R⟩ >= f − tol`, where these are claimed.
    pub fn chain_holds(&self, tol: f64) -> bool {
        if !self.certified || self.cone.status == ConeStatus::Violated {
            return true;
        }
        let nonneg = self.delta_r_inner >= -tol;
        if self.n < 6 {
            return nonneg;
        }
        nonneg
            && self.lemma32_lhs >= self.lemma32_rhs - tol
            && 3.0 * self.delta_r_general >= self.f_lower - tol
    }
}

/// Collects every Bochner quantity for an Einstein tensor with a known
/// `θ(n)`.
pub fn bochner_report(r: &CurvatureTensor) -> Result<BochnerReport> {
    let n = r.n();
    let params = ConeParams::for_dimension(n)?;
    let einstein_defect = check_einstein(r)?;
    let p = pointwise(r)?;
    report_from(n, params, einstein_defect, &p)
}

fn report_from(n: usize, params: ConeParams, einstein_defect: f64, p: &Pointwise) -> Result<BochnerReport> {
    let theta = params.theta;
    let values = &p.spectrum.values;
    let general = general_from_parts(n, values, p.weighted_sw);
    let explicit = explicit_low_dim(values, n).ok();
    Ok(BochnerReport {
        n,
        theta,
        lambda_bar: p.spectrum.lambda_bar,
        delta_r_inner: explicit.unwrap_or(general),
        delta_r_general: general,
        low_dim_discrepancy: explicit.map(|e| general - e),
        f_lower: f_lower(values, n, theta)?,
        lemma32_lhs: p.weighted_sw,
        lemma32_rhs: lemma32_rhs(values, n, theta),
        cone: cone_membership(values, params)?,
        einstein_defect,
        certified: params.alpha == 2.0 && theta_f64(n).is_ok_and(|t| t == theta),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Flat,
    RoundSphereProfile,
    BoundaryExtremalProfile,
    Inconclusive,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub details: String,
}

impl Verdict {
    fn new(verdict: VerdictKind, details: impl Into<String>) -> Self {
        Self {
            verdict,
            details: details.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub report: Option<BochnerReport>,
    pub spectrum: Option<Vec<f64>>,
}

/// Which of the two extremal profiles for `β = 1 + θ`, if any, `values / λ̄`
/// matches.
pub fn match_profile(values: &[f64], n: usize, theta: f64) -> Result<Option<VerdictKind>> {
    check_len(values, n)?;
    let set = FeasibleSet::new(values.len(), 1.0 + theta)?;
    let lb = values.iter().sum::<f64>() / values.len() as f64;
    if !(lb > FLAT_TOL) {
        return Ok(None);
    }
    let mut x: Vec<f64> = values.iter().map(|v| v / lb).collect();
    x.sort_by(f64::total_cmp);
    let close = |p: &[f64]| x.iter().zip(p).all(|(a, b)| (a - b).abs() < PROFILE_TOL);
    Ok(if close(&set.round_minimizer()) {
        Some(VerdictKind::RoundSphereProfile)
    } else if close(&set.boundary_minimizer()) {
        Some(VerdictKind::BoundaryExtremalProfile)
    } else {
        None
    })
}

/// Cone parameters for [`classify_with`]. `theta: None` selects `θ(n)`.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub alpha: f64,
    pub theta: Option<f64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            theta: None,
        }
    }
}

/// Decides whether `r` is flat, has one of the two extremal spectra, or
/// cannot be classified from pointwise data.
pub fn classify_einstein(r: &CurvatureTensor) -> Result<Classification> {
    classify_with(r, ClassifyOptions::default())
}

/// [`classify_einstein`] with explicit cone parameters. An explicit `θ` also
/// replaces `θ(n)` in the lower bound and the extremal profiles, so
/// dimensions without a known constant can be explored.
pub fn classify_with(r: &CurvatureTensor, opts: ClassifyOptions) -> Result<Classification> {
    let n = r.n();
    let defect = einstein_defect(r);
    if defect > EINSTEIN_TOL * r.table().max_abs().max(1.0) {
        return Ok(Classification {
            verdict: Verdict::new(
                VerdictKind::NotApplicable,
                format!("not Einstein: max |Ric - (Scal/n) g| = {defect:e}"),
            ),
            report: None,
            spectrum: None,
        });
    }
    let (op, spectrum) = analyze(r)?;
    let values = spectrum.values.clone();
    if values.iter().all(|v| v.abs() < FLAT_TOL) {
        return Ok(Classification {
            verdict: Verdict::new(VerdictKind::Flat, "all eigenvalues vanish"),
            report: None,
            spectrum: Some(values),
        });
    }
    let theta = match opts.theta.map_or_else(|| theta_f64(n), Ok) {
        Ok(t) if n >= 4 => t,
        Ok(_) => {
            return Ok(Classification {
                verdict: Verdict::new(VerdictKind::NotApplicable, format!("n = {n} < 4")),
                report: None,
                spectrum: Some(values),
            })
        }
        Err(e) => {
            return Ok(Classification {
                verdict: Verdict::new(VerdictKind::NotApplicable, e.to_string()),
                report: None,
                spectrum: Some(values),
            })
        }
    };
    let weyl = weyl_decompose(r)?.weyl;
    let sw = sw_norms(&spectrum.eigenmatrices(&op.basis), &weyl, WEYL_TRACE_TOL)?;
    let weighted_sw = values.iter().zip(&sw).map(|(l, s)| l * s).sum();
    let p = Pointwise { spectrum, weighted_sw };
    let params = ConeParams::new(opts.alpha, theta)?;
    if !(opts.alpha < values.len() as f64) {
        return Err(Error::InvalidArgument(format!("alpha = {} >= N", opts.alpha)));
    }
    let report = report_from(n, params, defect, &p)?;

    let verdict = if report.cone.status == ConeStatus::Violated {
        Verdict::new(
            VerdictKind::Inconclusive,
            format!("cone condition violated (margin {:e})", report.cone.margin),
        )
    } else {
        match match_profile(&values, n, theta)? {
            Some(kind) => Verdict::new(kind, format!("<Delta R, R> = {:e}", report.delta_r_inner)),
            None => Verdict::new(
                VerdictKind::Inconclusive,
                format!(
                    "cone holds, <Delta R, R> = {:e}; spectrum matches neither extremal profile",
                    report.delta_r_inner
                ),
            ),
        }
    };
    Ok(Classification {
        verdict,
        report: Some(report),
        spectrum: Some(values),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::theta_of_n;
    use crate::extremal::big_f;
    use crate::tensor::{random_einstein, random_orthogonal, rng_from_seed};
    use rand::Rng;

    #[test]
    fn zero_and_sphere() {
        for n in [4, 5, 8] {
            assert_eq!(delta_r_inner(&CurvatureTensor::zeros(n)).unwrap(), 0.0);
            assert!(delta_r_inner(&CurvatureTensor::sphere(n)).unwrap().abs() < 1e-9);
        }
        assert!(delta_r_inner(&CurvatureTensor::sphere(3)).is_err());
    }

    #[test]
    fn rejects_non_einstein() {
        let mut t = CurvatureTensor::sphere(5).into_table();
        // bump one sectional curvature: Ricci stops being a multiple of g
        for (i, j, k, l, v) in [(0, 1, 0, 1, 1.0), (1, 0, 1, 0, 1.0), (0, 1, 1, 0, -1.0), (1, 0, 0, 1, -1.0)] {
            t[[i, j, k, l]] += v;
        }
        let r = CurvatureTensor::try_from_table(t, 1e-12).unwrap();
        assert!(matches!(delta_r_inner(&r), Err(Error::NotEinstein(_))));
        let c = classify_einstein(&r).unwrap();
        assert_eq!(c.verdict.verdict, VerdictKind::NotApplicable);
        assert!(c.verdict.details.contains("not Einstein"));
    }

    #[test]
    fn f_lower_examples() {
        for n in [4, 5, 8, 9, 12] {
            let big_n = s20_dim(n);
            let theta = theta_f64(n).unwrap();
            assert!(f_lower(&vec![1.0; big_n], n, theta).unwrap().abs() < 1e-10);
            assert_eq!(f_lower(&vec![0.0; big_n], n, theta).unwrap(), 0.0);
        }
        assert!(f_lower(&[1.0; 8], 4, 0.5).is_err());
    }

    #[test]
    fn f_lower_is_scaled_big_f() {
        let mut rng = rng_from_seed(5);
        for n in [4, 8, 10] {
            let set = FeasibleSet::for_dimension(n).unwrap();
            let theta = theta_f64(n).unwrap();
            for _ in 0..20 {
                let vals: Vec<f64> = (0..set.big_n()).map(|_| rng.gen_range(-1.0..3.0)).collect();
                let lb = vals.iter().sum::<f64>() / vals.len() as f64;
                let x: Vec<f64> = vals.iter().map(|v| v / lb).collect();
                let want = 16.0 * lb.powi(3) * big_f(&x, set.beta());
                let got = f_lower(&vals, n, theta).unwrap();
                assert!((got - want).abs() < 1e-10 * (1.0 + want.abs()), "n = {n}");
            }
        }
    }

    #[test]
    fn unsimplified_agrees_only_at_theta_n() {
        let mut rng = rng_from_seed(6);
        for n in 8..=14 {
            let big_n = s20_dim(n);
            let vals: Vec<f64> = (0..big_n).map(|_| rng.gen_range(-1.0..2.0)).collect();
            let t = theta_f64(n).unwrap();
            let a = f_lower(&vals, n, t).unwrap();
            let b = f_lower_unsimplified(&vals, n, t).unwrap();
            assert!((a - b).abs() < 1e-10 * (1.0 + a.abs()), "n = {n}");
            let off = f_lower_unsimplified(&vals, n, t + 0.1).unwrap();
            assert!((f_lower(&vals, n, t + 0.1).unwrap() - off).abs() > 1e-6);
        }
    }

    #[test]
    fn low_dim_closed_forms() {
        assert!(explicit_low_dim(&[1.0; 9], 4).unwrap().abs() < 1e-12);
        assert!(explicit_low_dim(&[1.0; 14], 5).unwrap().abs() < 1e-12);
        assert!(explicit_low_dim(&[1.0; 35], 8).is_err());
        assert!(explicit_low_dim(&[1.0; 10], 4).is_err());
        let mut rng = rng_from_seed(8);
        for n in [4usize, 5] {
            let theta = *theta_of_n(n).unwrap().numer() as f64 / *theta_of_n(n).unwrap().denom() as f64;
            for _ in 0..50 {
                let vals: Vec<f64> = (0..s20_dim(n)).map(|_| rng.gen_range(-0.5..2.0)).collect();
                let e = explicit_low_dim(&vals, n).unwrap();
                let f = f_lower(&vals, n, theta).unwrap();
                assert!((2.0 * e - f).abs() < 1e-9 * (1.0 + f.abs()));
            }
        }
    }

    #[test]
    fn weighted_weyl_bound_on_sphere_and_zero() {
        let (l, r) = lemma32_check(&CurvatureTensor::sphere(8), 0.05).unwrap();
        assert!(l.abs() < 1e-12 && r.abs() < 1e-10);
        let (l, r) = lemma32_check(&CurvatureTensor::zeros(8), 0.05).unwrap();
        assert_eq!((l, r), (0.0, 0.0));
        assert!(matches!(lemma32_check(&CurvatureTensor::sphere(5), 0.1), Err(Error::Precondition(_))));
        assert!(matches!(lemma32_check(&CurvatureTensor::sphere(8), -0.1), Err(Error::Precondition(_))));
    }

    #[test]
    fn homogeneous_of_degree_three() {
        let r = random_einstein(8, 3, 0.05, 56.0).unwrap();
        let base = delta_r_inner(&r).unwrap();
        for c in [0.5, 2.0, 3.0] {
            let scaled = delta_r_inner(&r.scaled(c)).unwrap();
            assert!((scaled - c.powi(3) * base).abs() < 1e-8 * (1.0 + scaled.abs()));
        }
    }

    #[test]
    fn classify_basic_models() {
        let c = classify_einstein(&CurvatureTensor::zeros(5)).unwrap();
        assert_eq!(c.verdict.verdict, VerdictKind::Flat);
        let c = classify_einstein(&CurvatureTensor::sphere(8)).unwrap();
        assert_eq!(c.verdict.verdict, VerdictKind::RoundSphereProfile);
        let c = classify_einstein(&CurvatureTensor::sphere(6)).unwrap();
        assert_eq!(c.verdict.verdict, VerdictKind::NotApplicable);
    }

    #[test]
    fn classification_is_rotation_invariant() {
        let mut rng = rng_from_seed(12);
        for (n, seed) in [(4, 1), (8, 2)] {
            let r = random_einstein(n, seed, 0.05, (n * (n - 1)) as f64).unwrap();
            let q = random_orthogonal(n, &mut rng);
            let a = classify_einstein(&r).unwrap();
            let b = classify_einstein(&r.rotated(&q)).unwrap();
            assert_eq!(a.verdict.verdict, b.verdict.verdict);
            for (x, y) in a.spectrum.unwrap().iter().zip(b.spectrum.unwrap()) {
                assert!((x - y).abs() < 1e-8);
            }
            let (ra, rb) = (a.report.unwrap(), b.report.unwrap());
            assert!((ra.delta_r_inner - rb.delta_r_inner).abs() < 1e-8 * (1.0 + ra.delta_r_inner.abs()));
        }
    }
}
