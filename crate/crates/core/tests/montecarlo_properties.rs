use fpinv::closedform::{expected_inversions, precedence_probability, ClassQuery, PrecedenceQuery};
use fpinv::montecarlo::{
    chi_square_uniformity, estimate_expected_inversions, estimate_precedence, BLOCK_SIZE,
};
use fpinv::rational::to_f64;

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    estimate_expected_inversions(30, 2, 5 * BLOCK_SIZE + 11, 0xabc).unwrap(),
                    estimate_precedence(30, 2, 4, 9, 3 * BLOCK_SIZE, 0xabc).unwrap(),
                    chi_square_uniformity(4, 20_000, 0xabc).unwrap(),
                )
            })
    };
    let single = run(1);
    assert_eq!(single, run(4));
    assert_eq!(single, run(7));
}

#[test]
fn estimates_track_exact_values() {
    for (n, k) in [(12, 0), (30, 1), (30, 5), (60, 0)] {
        let e = estimate_expected_inversions(n, k, 40_000, 5).unwrap();
        let exact = expected_inversions(&ClassQuery::new(n, k).unwrap()).unwrap();
        assert_eq!(e.target.as_ref(), Some(&exact));
        assert!(e.within(4.0).unwrap(), "({n},{k}): {e:?}");
    }
    let e = estimate_precedence(100, 0, 1, 100, 100_000, 6).unwrap();
    let q = PrecedenceQuery::new(ClassQuery::new(100, 0).unwrap(), 1, 100).unwrap();
    assert_eq!(e.target, Some(precedence_probability(&q).unwrap()));
    assert!(e.within(4.0).unwrap(), "{e:?}");
}

#[test]
fn calibration_over_independent_seeds() {
    let exact = to_f64(&expected_inversions(&ClassQuery::new(50, 0).unwrap()).unwrap());
    let covered = (0..100u64)
        .filter(|&seed| {
            let e = estimate_expected_inversions(50, 0, 10_000, 1000 + seed).unwrap();
            (e.mean - exact).abs() <= 2.0 * e.std_error
        })
        .count();
    assert!(
        covered >= 95,
        "{covered} of 100 intervals cover the exact mean"
    );
}

#[test]
fn doubling_trials_shrinks_standard_error() {
    let mut ratios = Vec::new();
    for seed in 0..5u64 {
        let a = estimate_expected_inversions(40, 1, 10_000, 2 * seed).unwrap();
        let b = estimate_expected_inversions(40, 1, 20_000, 2 * seed + 1).unwrap();
        ratios.push(b.std_error / a.std_error);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let expected = std::f64::consts::FRAC_1_SQRT_2;
    assert!((mean - expected).abs() <= 0.2 * expected, "{ratios:?}");
}
