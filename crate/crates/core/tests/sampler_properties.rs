use fpinv::montecarlo::{chi_square_class_uniformity, pearson_uniform};
use fpinv::oracle::LexPermutations;
use fpinv::sampler::{
    sample_class, sample_derangement_counted, sample_uniform, sample_uniform_in_order, CrpState,
    RngState,
};
use fpinv::Permutation;

/// 0.001-level chi-square critical values by degrees of freedom.
const CRIT_DOF_23: f64 = 49.73;
const CRIT_DOF_8: f64 = 26.12;

/// Deletes `n` from the cycle containing it, on the one-line form.
fn delete_largest(p: &Permutation) -> Permutation {
    let n = p.len();
    let s = p.as_slice();
    let mut out: Vec<usize> = s[..n - 1].to_vec();
    for v in out.iter_mut() {
        if *v == n {
            *v = s[n - 1];
        }
    }
    Permutation::new(out).unwrap()
}

#[test]
fn crp_is_consistent_under_deleting_the_last_arrival() {
    for seed in 0..100u64 {
        let mut rng = RngState::new(seed);
        let mut state = CrpState::new();
        state.insert(1, &mut rng).unwrap();
        let mut previous = state.to_permutation().unwrap();
        for n in 2..=50 {
            state.insert(n, &mut rng).unwrap();
            let current = state.to_permutation().unwrap();
            assert_eq!(delete_largest(&current), previous, "seed {seed}, n {n}");

            let mut undone = state.clone();
            undone.remove(n).unwrap();
            assert_eq!(undone.to_permutation().unwrap(), previous);
            previous = current;
        }
    }
}

#[test]
fn tables_are_the_cycles() {
    let mut rng = RngState::new(3);
    let mut state = CrpState::new();
    for label in 1..=30 {
        state.insert(label, &mut rng).unwrap();
    }
    let p = state.to_permutation().unwrap();
    for table in state.tables() {
        for (a, &label) in table.iter().enumerate() {
            let next = table[(a + 1) % table.len()];
            assert_eq!(p.image(label), next);
        }
    }
    let seated: usize = state.tables().iter().map(Vec::len).sum();
    assert_eq!(seated, 30);
}

fn uniformity_statistic(n: usize, trials: usize, mut draw: impl FnMut() -> Permutation) -> f64 {
    let all: Vec<Permutation> = LexPermutations::new(n).collect();
    let mut counts = vec![0u64; all.len()];
    for _ in 0..trials {
        let p = draw();
        counts[all.binary_search(&p).unwrap()] += 1;
    }
    pearson_uniform(&counts).statistic
}

#[test]
fn any_arrival_order_is_uniform() {
    for (seed, order) in [
        (1u64, vec![1, 2, 3, 4]),
        (2, vec![1, 3, 4, 2]),
        (3, vec![4, 3, 2, 1]),
    ] {
        let mut rng = RngState::new(seed);
        let stat = uniformity_statistic(4, 48_000, || {
            sample_uniform_in_order(&order, &mut rng).unwrap()
        });
        assert!(stat < CRIT_DOF_23, "order {order:?}: {stat}");
    }
}

#[test]
fn derangements_of_four_are_uniform() {
    let c = chi_square_class_uniformity(4, 0, 100_000, 17).unwrap();
    assert_eq!(c.dof, 8);
    assert!(c.statistic < CRIT_DOF_8, "{c:?}");
}

#[test]
fn class_samplers_are_uniform() {
    for (n, k) in [(4, 1), (5, 2), (5, 1), (6, 3)] {
        let c = chi_square_class_uniformity(n, k, 60_000, 99).unwrap();
        // 0.001 critical values for dof 7 (d_{4,1} = 8), 19 (d_{5,2} = 20),
        // 44 (d_{5,1} = 45) and 39 (d_{6,3} = 40).
        let crit = match c.dof {
            7 => 24.32,
            19 => 43.82,
            44 => 78.75,
            39 => 72.05,
            other => panic!("unexpected dof {other}"),
        };
        assert!(c.statistic < crit, "n = {n}, k = {k}: {c:?}");
    }
}

#[test]
fn fixed_point_free_fraction_matches_derangement_probability() {
    // d_8 / 8! = 14833 / 40320
    let mut rng = RngState::new(8);
    let trials = 100_000;
    let hits = (0..trials)
        .filter(|_| sample_uniform(8, &mut rng).unwrap().is_derangement())
        .count();
    let p = 14833.0 / 40320.0;
    let se = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((hits as f64 / trials as f64 - p).abs() < 4.0 * se);
}

#[test]
fn rejection_acceptance_rate() {
    for n in [10, 20, 40] {
        let mut rng = RngState::new(n as u64);
        let mut attempts = 0u64;
        let mut accepted = 0u64;
        while attempts < 100_000 {
            let (p, used) = sample_derangement_counted(n, &mut rng).unwrap();
            assert!(p.is_derangement());
            attempts += used;
            accepted += 1;
        }
        let rate = accepted as f64 / attempts as f64;
        assert!((0.35..=0.39).contains(&rate), "n = {n}: {rate}");
    }
}

#[test]
fn every_class_draw_has_k_fixed_points() {
    let mut rng = RngState::new(2024);
    for n in [3, 10, 50, 200] {
        for k in [0, 1, 2, n / 2, n - 2, n]
            .into_iter()
            .filter(|&k| k + 1 != n)
        {
            for _ in 0..50 {
                assert_eq!(sample_class(n, k, &mut rng).unwrap().fixed_point_count(), k);
            }
        }
    }
}
