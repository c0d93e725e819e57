use cosk_core::second_kind::{
    analyze, build_first_kind, build_second_kind_in, s20_basis, spectrum, sw_norms,
};
use cosk_core::tensor::{
    random_einstein, random_weyl, rng_from_seed, scalar, tensor_norm_sq, weyl_decompose,
    CurvatureTensor,
};
use cosk_core::s20_dim;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

#[test]
fn norm_splits_for_einstein_tensors() {
    for n in [4usize, 5, 6, 8] {
        for seed in 0..10 {
            let r = random_einstein(n, seed, 0.3, 2.0 * n as f64).unwrap();
            let (_, spec) = analyze(&r).unwrap();
            let (nf, big_n) = (n as f64, s20_dim(n) as f64);
            let lb = spec.lambda_bar;
            let r2 = tensor_norm_sq(r.table());
            let w2 = weyl_decompose(&r).unwrap().weyl.norm_sq();
            assert!(rel(r2, w2 + 2.0 * nf * (nf - 1.0) * lb * lb) < 1e-9);
            assert!(rel(spec.sum_sq(), 0.75 * r2 - (nf - 1.0).powi(2) * lb * lb) < 1e-9);
            assert!(rel(w2, 4.0 / 3.0 * spec.sum_sq() - 4.0 * big_n / 3.0 * lb * lb) < 1e-9);
            assert!(rel(scalar(&r), nf * (nf - 1.0) * lb) < 1e-9);
        }
    }
}

#[test]
fn weyl_norm_sums() {
    for n in [4usize, 6, 7] {
        let basis = s20_basis(n).unwrap();
        for seed in 0..5 {
            let w = random_weyl(n, &mut rng_from_seed(seed)).unwrap();
            let sw = sw_norms(basis.elements(), &w, 1e-9).unwrap();
            let w2 = w.norm_sq();
            let nf = n as f64;
            let total: f64 = sw.iter().sum();
            assert!(rel(total, 2.0 * (nf * nf + nf - 8.0) / nf * w2) < 1e-9);
            let cap = (8.0 * nf - 16.0) / nf * w2;
            assert!(sw.iter().all(|&x| x <= cap + 1e-9));
        }
    }
}

#[test]
fn weyl_norm_sum_is_basis_free() {
    let n = 6;
    let r = random_einstein(n, 3, 1.0, 0.0).unwrap();
    let w = weyl_decompose(&r).unwrap().weyl;
    let (op, spec) = analyze(&r).unwrap();
    let canonical: f64 = sw_norms(op.basis.elements(), &w, 1e-9).unwrap().iter().sum();
    let eigen: f64 = sw_norms(&spec.eigenmatrices(&op.basis), &w, 1e-9)
        .unwrap()
        .iter()
        .sum();
    assert!(rel(canonical, eigen) < 1e-9);
}

#[test]
fn weighted_sum_ignores_basis_order() {
    // sphere plus a small Weyl part still has near-degenerate eigenvalues
    for (n, seed) in [(5usize, 1u64), (8, 2)] {
        let r = random_einstein(n, seed, 0.05, (n * (n - 1)) as f64).unwrap();
        let w = weyl_decompose(&r).unwrap().weyl;
        let weighted = |order: Vec<usize>| {
            let basis = s20_basis(n).unwrap().permuted(&order).unwrap();
            let op = build_second_kind_in(&r, basis).unwrap();
            let spec = spectrum(&op).unwrap();
            let sw = sw_norms(&spec.eigenmatrices(&op.basis), &w, 1e-9).unwrap();
            spec.values.iter().zip(&sw).map(|(l, s)| l * s).sum::<f64>()
        };
        let dim = s20_dim(n);
        let base = weighted((0..dim).collect());
        let reversed = weighted((0..dim).rev().collect());
        let shuffled = weighted((0..dim).map(|i| (3 * i + 2) % dim).collect());
        assert!((base - reversed).abs() < 1e-8 * (1.0 + base.abs()));
        assert!((base - shuffled).abs() < 1e-8 * (1.0 + base.abs()));
    }
}

#[test]
fn degenerate_spectrum_weighted_sum() {
    // exactly degenerate: every eigenvector choice is valid
    let r = CurvatureTensor::sphere(6);
    let w = weyl_decompose(&r).unwrap().weyl;
    let (op, spec) = analyze(&r).unwrap();
    let sw = sw_norms(&spec.eigenmatrices(&op.basis), &w, 1e-9).unwrap();
    assert!(sw.iter().all(|x| x.abs() < 1e-20));
}

#[test]
fn first_kind_is_symmetric_and_traces_to_scalar() {
    for seed in 0..5 {
        let r = random_einstein(5, seed, 1.0, 4.0).unwrap();
        let m = build_first_kind(&r).unwrap();
        assert!(m.asymmetry() < 1e-12);
        // trace of R̂ in the unit basis {e_i ∧ e_j} is Σ_{i<j} R_{ijij} = Scal/2
        assert!(rel(m.trace(), scalar(&r) / 2.0) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn spectrum_sums_to_trace(n in 3usize..8, seed in any::<u64>(), scal in -10.0f64..10.0) {
        let r = random_einstein(n, seed, 1.0, scal).unwrap();
        let (op, spec) = analyze(&r).unwrap();
        prop_assert!(spec.values.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = spec.values.iter().sum();
        prop_assert!((sum - op.matrix.trace()).abs() < 1e-10 * (1.0 + sum.abs()));
        prop_assert!((sum - spec.len() as f64 * spec.lambda_bar).abs() < 1e-10 * (1.0 + sum.abs()));
    }

    #[test]
    fn second_kind_is_linear(n in 3usize..7, s1 in any::<u64>(), s2 in any::<u64>(), c in -3.0f64..3.0) {
        let a = random_einstein(n, s1, 1.0, 1.0).unwrap();
        let b = random_einstein(n, s2, 1.0, -2.0).unwrap();
        let sum = a.axpy(c, &b);
        let (oa, _) = analyze(&a).unwrap();
        let (ob, _) = analyze(&b).unwrap();
        let (os, _) = analyze(&sum).unwrap();
        let want = &oa.matrix + &(c * &ob.matrix);
        prop_assert!((&os.matrix - &want).max_abs() < 1e-12 * (1.0 + want.max_abs()));
    }
}
