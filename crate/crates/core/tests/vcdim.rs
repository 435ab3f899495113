use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use timepref_core::exact::rat;
use timepref_core::models::{hd_cleared_polynomials, monomial_basis};
use timepref_core::pac::Family;
use timepref_core::vcdim::{
    gray_code_flips, is_shattered, is_shattered_exact, max_shatterable_n, prop1_points, realized_vectors_fixed_shift,
    realized_vectors_shift_sweep, sign_combination_bound, theorem3_points, theorem3_points_exact, theorem3_polys,
    theorem3_size, ExactBasis,
};
use timepref_core::{ChoicePair, DiscountModel, Polynomial};

/// Label vectors seen on a parameter grid: an independent lower bound on the
/// realized labelings.
fn grid_labelings(points: &[ChoicePair], model: impl Fn(f64) -> DiscountModel, lo: f64, hi: f64) -> usize {
    let mut seen = HashSet::new();
    for k in 1..20_000 {
        let m = model(lo + (hi - lo) * k as f64 / 20_000.0);
        let v: Vec<u8> = points.iter().map(|p| m.prefers(p).unwrap()).collect();
        seen.insert(v);
    }
    seen.len()
}

#[test]
fn theorem3_sizes() {
    let got: Vec<usize> = [3, 4, 5, 8, 9, 17, 33, 65].iter().map(|&t| theorem3_size(t).unwrap()).collect();
    assert_eq!(got, vec![1, 1, 2, 2, 3, 4, 5, 6]);
    assert!(theorem3_size(2).is_err());
}

#[test]
fn gray_code_visits_every_vertex() {
    for n in 1..=6 {
        let mut v = 0usize;
        let mut seen = HashSet::from([0usize]);
        for b in gray_code_flips(n).unwrap() {
            v ^= 1 << (b - 1);
            seen.insert(v);
        }
        assert_eq!(seen.len(), 1 << n);
    }
}

#[test]
fn theorem3_t5_polynomials() {
    let p = theorem3_polys(5, None).unwrap();
    // Flips 1, 2, 1 over roots 1/4, 1/2, 3/4.
    assert_eq!(p[0], Polynomial::from_roots(&[0.25, 0.75], 1.0).unwrap());
    assert_eq!(p[1], Polynomial::from_roots(&[0.5], 1.0).unwrap());
}

#[test]
fn theorem3_points_shattered_by_grid_oracle() {
    for t in [3, 5, 9] {
        let n = theorem3_size(t).unwrap();
        let ed = theorem3_points(t, &monomial_basis(t), None).unwrap();
        assert_eq!(grid_labelings(&ed, |d| DiscountModel::Exponential { delta: d }, 0.0, 1.0), 1 << n);
        let hd = theorem3_points(t, &hd_cleared_polynomials(t).unwrap(), None).unwrap();
        assert_eq!(grid_labelings(&hd, |a| DiscountModel::Hyperbolic { alpha: a }, 0.0, 1.0), 1 << n);
        let rep = is_shattered(&ed, &Family::Exponential).unwrap();
        assert!(rep.shattered && rep.n == n);
    }
}

#[test]
fn theorem3_exact_matches_float_for_small_t() {
    for t in [3, 5, 9, 17] {
        for basis in [ExactBasis::Monomial, ExactBasis::HdCleared] {
            let plans = theorem3_points_exact(t, basis, None).unwrap();
            let rep = is_shattered_exact(&plans, basis, &rat(0, 1), &rat(1, 1)).unwrap();
            assert!(rep.shattered, "T={t} {}", basis.name());
            assert!(rep.witnesses.iter().all(Option::is_some));
        }
    }
}

#[test]
fn prop1_is_shattered_by_tables() {
    for t in 2..=8 {
        let pts = prop1_points(t, 0.1).unwrap();
        let rep = is_shattered(&pts, &Family::TableDiscount).unwrap();
        assert!(rep.shattered, "T={t}");
        for (mask, w) in rep.witnesses.iter().enumerate() {
            let m = w.as_ref().unwrap();
            for (i, p) in pts.iter().enumerate() {
                assert_eq!(m.prefers(p).unwrap() as usize, (mask >> i) & 1);
            }
        }
    }
}

#[test]
fn exponential_t3_does_not_shatter_six_random_points() {
    // Two quadratics' worth of sign changes per point bounds the labelings
    // far below 2^6.
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let pts: Vec<ChoicePair> = (0..6)
            .map(|_| {
                let x = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
                ChoicePair::from_vecs(x, vec![0.0; 3]).unwrap()
            })
            .collect();
        let rep = is_shattered(&pts, &Family::Exponential).unwrap();
        assert!(!rep.shattered);
        assert!(rep.witnesses.iter().filter(|w| w.is_some()).count() <= 6 * 2 + 1);
    }
}

#[test]
fn combination_bound_values() {
    assert_eq!(sign_combination_bound(1, 1), 4);
    assert_eq!(sign_combination_bound(6, 8), 42 * 8 + 7);
    assert_eq!(max_shatterable_n(1), 5);
    assert!(sign_combination_bound(max_shatterable_n(64) + 1, 64) < 1u128 << (max_shatterable_n(64) + 1));
}

fn polys_strategy() -> impl Strategy<Value = Vec<Polynomial>> {
    (1usize..=6, 1usize..=8).prop_flat_map(|(n, d)| {
        prop::collection::vec(prop::collection::vec(-1.0f64..1.0, d + 1), n)
            .prop_map(|cs| cs.into_iter().map(Polynomial::new).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realized_sign_vectors_respect_bounds(polys in polys_strategy(), u in -3.0f64..3.0) {
        let n = polys.len() as u64;
        let d = polys.iter().filter_map(Polynomial::degree).max().unwrap_or(0) as u64;
        let fixed = realized_vectors_fixed_shift(&polys, u).unwrap() as u128;
        prop_assert!(fixed <= (n * d + 1) as u128);
        let swept = realized_vectors_shift_sweep(&polys).unwrap() as u128;
        prop_assert!(swept <= sign_combination_bound(n, d));
        prop_assert!(swept >= fixed.min(1));
    }
}
