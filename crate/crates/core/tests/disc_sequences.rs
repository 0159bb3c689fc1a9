// Reference values are quoted verbatim from the high-precision runs.
#![allow(clippy::excessive_precision)]

use dynsamp::disc::{
    carleson_products, carleson_report, generate_geometric, generate_inverse_power,
    pseudo_hyperbolic_distance, root_lemma_factor, tail_sum, transform_sequence, CarlesonOptions,
    CarlesonVerdict, DiscSequence, Transform,
};
use dynsamp::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Direct formula, no gap bookkeeping.
fn naive_distance(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (Complex64::new(1.0, 0.0) - a.conj() * b).norm()
}

/// Plain product of direct distances (fine while nothing underflows).
fn naive_products(values: &[Complex64]) -> Vec<f64> {
    (0..values.len())
        .map(|n| {
            (0..values.len())
                .filter(|&k| k != n)
                .map(|k| naive_distance(values[k], values[n]))
                .product()
        })
        .collect()
}

fn disc_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.999, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

#[test]
fn distance_hand_value() {
    let d =
        pseudo_hyperbolic_distance(Complex64::new(0.5, 0.0), Complex64::new(0.75, 0.0)).unwrap();
    assert!((d - 0.25 / 0.625).abs() < 1e-15);
}

#[test]
fn products_match_direct_oracle_on_moderate_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let values: Vec<Complex64> = (0..12)
            .map(|_| {
                Complex64::from_polar(
                    rng.random_range(0.0..0.95),
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        let seq = DiscSequence::new(values.clone()).unwrap();
        let report = carleson_products(&seq).unwrap();
        for (got, want) in report
            .per_index_products
            .iter()
            .zip(naive_products(&values))
        {
            assert!(
                (got - want).abs() <= 1e-12 * want.max(1e-300),
                "{got} vs {want}"
            );
        }
    }
}

#[test]
fn geometric_infimum_stable_under_extension() {
    let d20 = carleson_products(&generate_geometric(2.0, 20).unwrap())
        .unwrap()
        .infimum;
    let d25 = carleson_products(&generate_geometric(2.0, 25).unwrap())
        .unwrap()
        .infimum;
    assert!(d20 > 0.0);
    assert!((d20 - d25).abs() / d20 < 0.01);
}

#[test]
fn geometric_infimum_golden() {
    // High-precision brute force.
    for (k, want) in [
        (15, 0.015495597121861112),
        (20, 0.014829531235271082),
        (25, 0.014700653430550605),
        (30, 0.014676895346655965),
    ] {
        let got = carleson_products(&generate_geometric(2.0, k).unwrap())
            .unwrap()
            .infimum;
        assert!((got - want).abs() / want < 1e-9, "K={k}: {got} vs {want}");
    }
}

#[test]
fn inverse_square_infimum_golden_and_decay() {
    let golden = [
        (10, 5.6358205090886221e-5),
        (20, 5.9470143563316207e-10),
        (60, 1.8631494449724825e-30),
    ];
    for (k, want) in golden {
        let got = carleson_products(&generate_inverse_power(2.0, k).unwrap())
            .unwrap()
            .infimum;
        assert!((got - want).abs() / want < 1e-8, "K={k}: {got} vs {want}");
    }
    let mut prev = f64::INFINITY;
    for k in 1..=60 {
        let d = carleson_products(&generate_inverse_power(2.0, k).unwrap())
            .unwrap()
            .infimum;
        assert!(d <= prev);
        prev = d;
    }
    assert!(prev < 0.05);
}

#[test]
fn cube_root_of_geometric_keeps_positive_infimum() {
    let seq = generate_geometric(2.0, 15).unwrap();
    let rooted = transform_sequence(&seq, &Transform::RootMap(3)).unwrap();
    let d = carleson_products(&rooted).unwrap().infimum;
    assert!((d - 0.015501134093259448).abs() / d < 1e-9);
}

#[test]
fn tail_sum_closed_form() {
    let t = tail_sum(&generate_geometric(2.0, 30).unwrap());
    assert!((t - 5.0 / 3.0).abs() < 1e-8);
}

#[test]
fn verdicts() {
    let geo = generate_geometric(2.0, 20).unwrap();
    let certified = carleson_report(
        &geo,
        &CarlesonOptions {
            ratio_bound: Some(0.5),
            tail_diverges: false,
        },
    )
    .unwrap();
    assert_eq!(certified.verdict, CarlesonVerdict::CarlesonByRatio);
    let sq = generate_inverse_power(2.0, 20).unwrap();
    // Gap ratios ((k+1)/(k+2))² stay below 1 on any prefix, so only a
    // caller-supplied bound exposes them.
    assert_eq!(
        carleson_products(&sq).unwrap().verdict,
        CarlesonVerdict::LikelyCarleson
    );
    let bounded = CarlesonOptions {
        ratio_bound: Some(0.9),
        tail_diverges: false,
    };
    assert_eq!(
        carleson_report(&sq, &bounded).unwrap().verdict,
        CarlesonVerdict::FailsNecessaryCondition
    );
    let mixed =
        DiscSequence::new(vec![Complex64::new(0.0, 0.5), Complex64::new(-0.3, 0.1)]).unwrap();
    assert_eq!(
        carleson_products(&mixed).unwrap().verdict,
        CarlesonVerdict::LikelyCarleson
    );
}

#[test]
fn geometric_ratio_is_exact() {
    for alpha in [2.0, 10.0] {
        let seq = generate_geometric(alpha, 30).unwrap();
        let r = carleson_products(&seq).unwrap().ratio_sup;
        assert!((r - 1.0 / alpha).abs() <= 2.0 * f64::EPSILON / alpha);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn distance_symmetric_and_in_range(a in disc_point(), b in disc_point()) {
        let ab = pseudo_hyperbolic_distance(a, b).unwrap();
        let ba = pseudo_hyperbolic_distance(b, a).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-15);
        prop_assert!((0.0..1.0).contains(&ab));
        prop_assert_eq!(ab == 0.0, a == b);
        prop_assert!((ab - naive_distance(a, b)).abs() <= 1e-12);
    }

    #[test]
    fn root_map_increases_distance(x in 1e-6f64..0.999_999, y in 1e-6f64..0.999_999, pick in 0usize..3) {
        let ell = [2u32, 3, 5][pick];
        let e = 1.0 / ell as f64;
        let base = pseudo_hyperbolic_distance(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).unwrap();
        let rooted = pseudo_hyperbolic_distance(Complex64::new(x.powf(e), 0.0), Complex64::new(y.powf(e), 0.0)).unwrap();
        prop_assert!(rooted >= base - 1e-12);
        let f = root_lemma_factor(x, y, ell).unwrap();
        prop_assert!(f >= 1.0 - 1e-12);
        if base > 0.0 {
            prop_assert!((rooted - base * f).abs() <= 1e-10 * rooted);
        }
    }

    #[test]
    fn subsequence_never_lowers_infimum(mask in proptest::collection::vec(any::<bool>(), 18)) {
        let seq = generate_geometric(2.0, 18).unwrap();
        let idx: Vec<usize> = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        prop_assume!(!idx.is_empty());
        let full = carleson_products(&seq).unwrap().infimum;
        let sub = transform_sequence(&seq, &Transform::Subsequence(idx)).unwrap();
        prop_assert!(carleson_products(&sub).unwrap().infimum >= full);
    }

    #[test]
    fn products_lie_in_unit_interval(values in proptest::collection::vec(disc_point(), 1..10)) {
        if let Ok(seq) = DiscSequence::new(values) {
            let r = carleson_products(&seq).unwrap();
            prop_assert!(r.per_index_products.iter().all(|d| (0.0..=1.0).contains(d)));
            let min = r.per_index_products.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert_eq!(r.infimum, min);
            prop_assert!(r.tail_sum >= 0.0 && r.ratio_sup >= 0.0);
        }
    }
}
