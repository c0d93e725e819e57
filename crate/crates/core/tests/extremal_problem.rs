use cosk_core::extremal::{
    a_grid, big_f, boundary_critical, boundary_is_feasible, boundary_profile, boundary_slope,
    boundary_slope_bound, boundary_value, enumerate_minimum, interior_critical,
    multistart_descent, ordering_chain, DescentOptions, EnumerationOptions, FeasibleSet,
};
use cosk_core::Error;
use proptest::prelude::*;

const DIMS: [usize; 7] = [4, 5, 8, 9, 10, 11, 12];

#[test]
fn boundary_minimizer_examples() {
    let n4 = FeasibleSet::for_dimension(4).unwrap();
    let x = n4.boundary_minimizer();
    assert!((x[0] + 17.0 / 7.0).abs() < 1e-14 && (x[1] - 10.0 / 7.0).abs() < 1e-14);
    let n8 = FeasibleSet::for_dimension(8).unwrap();
    assert!((n8.boundary_minimizer()[0] + 38.4 / 33.0).abs() < 1e-14);
    for n in DIMS {
        let set = FeasibleSet::for_dimension(n).unwrap();
        assert!(set.contains(&set.boundary_minimizer()));
        assert!(set.f(&set.boundary_minimizer()).abs() < 1e-10);
    }
}

#[test]
fn ordering_chain_all_dimensions() {
    for n in DIMS {
        let set = FeasibleSet::for_dimension(n).unwrap();
        let c = ordering_chain(&set, 301).unwrap();
        assert!(c.holds(1e-9), "n = {n}: {c:?}");
    }
}

#[test]
fn boundary_profile_left_end_positive() {
    let set = FeasibleSet::new(35, 21.0 / 20.0).unwrap();
    let (lo, hi) = set.a_range();
    assert!(boundary_profile(&set, lo).unwrap() > 0.0);
    assert!(boundary_profile(&set, hi).unwrap().abs() < 1e-12);
    assert!(boundary_profile(&set, hi + 1e-3).is_err());
    for a in a_grid(&set, 101) {
        for k in [1, 10, 33] {
            assert!(boundary_slope(&set, k, a) >= boundary_slope_bound(&set) - 1e-12);
        }
    }
}

#[test]
fn infeasible_constructions_are_named() {
    let set = FeasibleSet::for_dimension(10).unwrap(); // N = 54
    assert!(matches!(interior_critical(&set, 27), Err(Error::InfeasibleFamily(_))));
    let (lo, _) = set.a_range();
    for k in (2..=52).step_by(2) {
        assert!(matches!(
            boundary_critical(&set, k, k / 2, lo),
            Err(Error::InfeasibleFamily(_))
        ));
    }
}

#[test]
fn oracle_finds_no_negative_value() {
    for n in [4usize, 5, 8] {
        let set = FeasibleSet::for_dimension(n).unwrap();
        let out = multistart_descent(&set, 1, 64, &DescentOptions::default()).unwrap();
        assert!(out.min_value >= -1e-6, "n = {n}: {}", out.min_value);
        assert!(out.min_value <= 1e-6);
        for r in &out.restarts {
            assert!(r.value >= -1e-6);
        }
    }
}

#[test]
fn enumeration_n8() {
    let set = FeasibleSet::for_dimension(8).unwrap();
    let opts = EnumerationOptions {
        oracle_restarts: 32,
        ..Default::default()
    };
    let r = enumerate_minimum(&set, &opts).unwrap();
    assert!(r.global_min.abs() < 1e-8);
    assert!(r.profiles_match, "{:?}", r.minimizers);
    assert!(r.agreement < 1e-6);
    assert!((r.minimizers[0][0] + 38.4 / 33.0).abs() < 1e-12);
}

#[test]
fn exploratory_beta_is_flagged() {
    let set = FeasibleSet::new(35, 1.5).unwrap();
    let opts = EnumerationOptions {
        grid_points: 101,
        oracle_restarts: 8,
        ..Default::default()
    };
    let r = enumerate_minimum(&set, &opts).unwrap();
    assert!(!r.certified);
}

fn feasible_point() -> impl Strategy<Value = (usize, Vec<f64>)> {
    (prop::sample::select(DIMS.to_vec()), any::<u64>()).prop_map(|(n, seed)| {
        let set = FeasibleSet::for_dimension(n).unwrap();
        let mut state = seed | 1;
        let mut next = || {
            // xorshift; only needs to spread the samples
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut x: Vec<f64> = (0..set.big_n()).map(|_| 1.0 + 2.0 * (next() - 0.5)).collect();
        let shift = (x.iter().sum::<f64>() - set.big_n() as f64) / set.big_n() as f64;
        x.iter_mut().for_each(|v| *v -= shift);
        (n, x)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_is_permutation_invariant((n, x) in feasible_point(), rot in 0usize..100) {
        let set = FeasibleSet::for_dimension(n).unwrap();
        let mut y = x.clone();
        y.reverse();
        let len = y.len();
        y.rotate_left(rot % len);
        let mut sorted_x = x.clone();
        sorted_x.sort_by(f64::total_cmp);
        let mut sorted_y = y.clone();
        sorted_y.sort_by(f64::total_cmp);
        prop_assert_eq!(big_f(&sorted_x, set.beta()), big_f(&sorted_y, set.beta()));
        prop_assert!((big_f(&x, set.beta()) - big_f(&y, set.beta())).abs() < 1e-12 * (1.0 + big_f(&x, set.beta()).abs()));
    }

    #[test]
    fn feasible_points_are_nonnegative((n, x) in feasible_point()) {
        let set = FeasibleSet::for_dimension(n).unwrap();
        prop_assume!(set.contains(&x));
        prop_assert!(set.f(&x) >= -1e-10);
    }

    #[test]
    fn chain_at_random_parameters(
        n in prop::sample::select(DIMS.to_vec()),
        kr in 0.0f64..1.0,
        lr in 0.0f64..1.0,
        ar in 0.0f64..1.0,
    ) {
        let set = FeasibleSet::for_dimension(n).unwrap();
        let top = set.big_n() - 2;
        let k = 2 + ((top - 2) as f64 * kr) as usize;
        let l = 1 + (((k - 1) / 2).saturating_sub(1) as f64 * lr) as usize;
        prop_assume!(2 * l < k);
        let (lo, hi) = set.a_range();
        let a = lo + (hi - lo) * ar;
        let mixed = boundary_value(&set, k, l, a).unwrap();
        let pure = boundary_value(&set, k, 0, a).unwrap();
        let profile = boundary_value(&set, top, 0, a).unwrap();
        prop_assert!(mixed > pure);
        if k < top && a < hi {
            prop_assert!(pure > profile);
        }
        prop_assert!(profile >= -1e-12);
        let p = boundary_critical(&set, k, l, a).unwrap();
        prop_assert_eq!(p.feasible, boundary_is_feasible(&set, k, l, a).unwrap());
        prop_assert!((p.value - p.closed_form).abs() < 1e-9 * (1.0 + p.value.abs()));
    }
}
