use timepref_core::active::{
    cal_run, cal_run_observed, disagreement_mass_analytic, estimate_disagreement_mass_mc, estimate_parity_mc,
    estimate_theta, parity_prob, CalConfig, CalLearner,
};
use timepref_core::datagen::{sample_mu_pair, RngSeed};
use timepref_core::models::{diff_polynomial, monomial_basis};
use timepref_core::{DiscountModel, IntervalSet};

#[test]
fn parity_formula_matches_monte_carlo() {
    for (delta, gamma, t) in [(0.2, 0.7, 2), (0.5, 0.55, 4), (0.9, 0.1, 7), (0.33, 0.4, 8)] {
        let mc = estimate_parity_mc(delta, gamma, t, 100_000, RngSeed::new(t as u64)).unwrap();
        let f = parity_prob((delta - gamma).abs(), t).unwrap();
        assert!((mc.estimate - f).abs() <= 4.0 * mc.stderr.max(1e-4), "{delta} {gamma} {t}: {} vs {f}", mc.estimate);
    }
}

#[test]
fn parity_formula_values() {
    assert_eq!(parity_prob(0.25, 2).unwrap(), 0.25);
    assert_eq!(parity_prob(0.5, 5).unwrap(), 0.5);
    assert!((parity_prob(0.1, 3).unwrap() - 0.18).abs() < 1e-15);
}

#[test]
fn odd_case_mass_is_twice_radius() {
    // T - 1 = 1: the ball is an interval of length 2R around 1/2.
    for r in [0.1, 0.25, 0.4] {
        let mc = estimate_disagreement_mass_mc(0.5, r, 2, 200_000, RngSeed::new(1)).unwrap();
        assert!((mc.estimate - 2.0 * r).abs() < 4.0 * mc.stderr);
        assert_eq!(disagreement_mass_analytic(r, 2).unwrap(), 2.0 * r);
    }
}

#[test]
fn theta_near_two_at_small_t() {
    let grid: Vec<f64> = (1..=10).map(|k| k as f64 * 0.05).collect();
    let rep = estimate_theta(0.5, 3, &grid, 200_000, RngSeed::new(7)).unwrap();
    assert!((rep.ratio_sup - 2.0).abs() < 0.05, "{}", rep.ratio_sup);
    assert_eq!(rep.theta, rep.ratio_sup.max(rep.tail_sup));
}

#[test]
fn cal_version_space_contains_truth_and_shrinks() {
    for (seed, delta) in [(0, 0.3), (1, 0.71), (2, 0.05)] {
        let cfg = CalConfig { true_delta: delta, t: 5, eps: 1e-3, max_points: 100_000, seed };
        let mut prev: Option<IntervalSet> = None;
        let mut prev_labels = 0;
        let out = cal_run_observed(&cfg, |s| {
            assert!(s.version_space.contains(delta) || s.version_space.intervals().iter().any(|iv| (iv.lo - delta).abs() < 1e-9 || (iv.hi - delta).abs() < 1e-9));
            if let Some(p) = &prev {
                assert!(s.version_space.is_subset_of(p));
            }
            assert!(s.labels_used >= prev_labels && s.labels_used <= s.points_seen);
            prev_labels = s.labels_used;
            prev = Some(s.version_space.clone());
        })
        .unwrap();
        assert!(out.halted);
        assert!(out.converted_mass <= 1e-3);
        assert!(out.state.labels_used < out.state.points_seen);
    }
}

#[test]
fn cal_is_reproducible() {
    let cfg = CalConfig { true_delta: 0.4, t: 4, eps: 1e-2, max_points: 10_000, seed: 3 };
    assert_eq!(cal_run(&cfg).unwrap(), cal_run(&cfg).unwrap());
}

#[test]
fn cal_skips_points_outside_disagreement() {
    let mut learner = CalLearner::new(3).unwrap();
    let truth = DiscountModel::Exponential { delta: 0.5 };
    let mut rng = RngSeed::new(8).rng();
    for _ in 0..200 {
        let pair = sample_mu_pair(3, &mut rng).unwrap();
        let p = diff_polynomial(&monomial_basis(3), &pair).unwrap();
        let dis = learner.in_disagreement(&p).unwrap();
        let queried = learner.observe(&pair, |q| truth.prefers(q)).unwrap();
        assert_eq!(dis, queried);
    }
    assert!(learner.state().labels_used < 200);
    assert!((learner.hypothesis().unwrap() - 0.5).abs() < 0.05);
}
