use proptest::prelude::*;
use timepref_core::mq::{mq_learn, MqAdapter, Oracle};

proptest! {
    #[test]
    fn exponential_recovers_truth_within_budget(delta in 0.001f64..0.999, k in 1i32..6, t in 2usize..6) {
        let eps = 10f64.powi(-k);
        let a = MqAdapter::exponential(t).unwrap();
        let mut o = Oracle::new(a.model(delta)).unwrap();
        let h = mq_learn(&mut o, &a, eps, 1.0).unwrap();
        prop_assert!((h - delta).abs() <= eps);
        prop_assert!(o.query_count() <= a.query_budget(eps));
    }

    #[test]
    fn hyperbolic_recovers_truth_within_budget(alpha in 0.001f64..4.0, k in 1i32..6) {
        let eps = 10f64.powi(-k);
        let a = MqAdapter::hyperbolic(3, 4.0).unwrap();
        let mut o = Oracle::new(a.model(alpha)).unwrap();
        let h = mq_learn(&mut o, &a, eps, 1.0).unwrap();
        prop_assert!((h - alpha).abs() <= eps);
        prop_assert!(o.query_count() <= a.query_budget(eps));
    }

    #[test]
    fn payoff_scale_does_not_matter(delta in 0.01f64..0.99, rho in 0.01f64..100.0) {
        let a = MqAdapter::exponential(2).unwrap();
        let mut o = Oracle::new(a.model(delta)).unwrap();
        let h = mq_learn(&mut o, &a, 1e-3, rho).unwrap();
        prop_assert!((h - delta).abs() <= 1e-3);
        prop_assert!(o.query_count() <= a.query_budget(1e-3));
    }

    #[test]
    fn hyperbolic_inverse_lipschitz(a1 in 0.0f64..4.0, a2 in 0.0f64..4.0) {
        let a = MqAdapter::hyperbolic(2, 4.0).unwrap();
        prop_assert!((a1 - a2).abs() <= a.c * (a.ratio(a1) - a.ratio(a2)).abs() * (1.0 + 1e-12) + 1e-15);
        prop_assert!(a.ratio(a1) <= a.m + 1e-15);
    }
}

#[test]
fn budget_grows_logarithmically() {
    let a = MqAdapter::exponential(2).unwrap();
    let b: Vec<usize> = [1e-1, 1e-2, 1e-3, 1e-4].iter().map(|&e| a.query_budget(e)).collect();
    assert_eq!(b, vec![5, 8, 11, 15]);
}
