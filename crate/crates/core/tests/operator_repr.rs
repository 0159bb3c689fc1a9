use dynsamp::disc::generate_geometric;
use dynsamp::frames::{orbit_matrix, DiagonalSystem};
use dynsamp::linalg::{singular_values, vector_norm, CMatrix};
use dynsamp::repr::{
    block_orbit_coefficients, example_factory, expansion_residuals, kernel_shift_check,
    restricted_norm_estimate, right_shift, scaled_riesz_bound_check, synthesis_apply,
    CoefficientSeq, DualFamily, Example, VectorFamily,
};
use dynsamp::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> CoefficientSeq {
    CoefficientSeq(
        (0..len)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect(),
    )
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

fn factory_families() -> Vec<VectorFamily> {
    vec![
        example_factory(Example::SumBasis, 13, 12).unwrap(),
        example_factory(Example::Factorial, 12, 12).unwrap(),
        example_factory(Example::Fractional, 12, 12).unwrap(),
        example_factory(Example::Block, 30, 30).unwrap(),
        example_factory(Example::Scaled { factor: 2.0 }, 12, 12).unwrap(),
        example_factory(Example::Scaled { factor: 0.5 }, 12, 12).unwrap(),
    ]
}

/// Drops `f_1` and appends a zero column.
fn shifted_family(f: &VectorFamily) -> VectorFamily {
    let (d, n) = f.columns().shape();
    let mut m = CMatrix::zeros(d, n);
    m.columns_mut(0, n - 1)
        .copy_from(&f.columns().columns(1, n - 1));
    VectorFamily::new(m).unwrap()
}

proptest! {
    #[test]
    fn shift_algebra_is_exact(
        raw in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..11),
        pick in 0usize..6,
    ) {
        let f = &factory_families()[pick];
        let c = CoefficientSeq(raw.into_iter().map(|(a, b)| Complex64::new(a, b)).collect());
        let lhs = synthesis_apply(f, &right_shift(&c)).unwrap();
        let rhs = synthesis_apply(&shifted_family(f), &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn restricted_norm_bounds_every_shift() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for f in factory_families() {
        let k_hat = restricted_norm_estimate(&f).unwrap();
        for _ in 0..1000 {
            let c = random_coeffs(&mut rng, f.len() - 1);
            let shifted = vector_norm(&synthesis_apply(&f, &right_shift(&c)).unwrap());
            let base = vector_norm(&synthesis_apply(&f, &c).unwrap());
            assert!(shifted <= (k_hat + 1e-9) * base, "{:?}", f.label());
        }
    }
}

#[test]
fn sum_basis_shift_is_isometric() {
    let f = example_factory(Example::SumBasis, 50, 49).unwrap();
    assert!((restricted_norm_estimate(&f).unwrap() - 1.0).abs() <= 1e-12);
    // Not a frame for its span's ambient space in the limit: σ_min decays.
    let sv = singular_values(f.columns());
    assert!(sv[sv.len() - 1] < 0.1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let c = random_coeffs(&mut rng, 48);
        let a = vector_norm(&synthesis_apply(&f, &right_shift(&c)).unwrap());
        let b = vector_norm(&synthesis_apply(&f, &c).unwrap());
        assert!((a - b).abs() <= 1e-12 * b);
    }
}

#[test]
fn factorial_growth() {
    for n in 2..=18 {
        let f = example_factory(Example::Factorial, n, n).unwrap();
        let est = restricted_norm_estimate(&f).unwrap();
        assert!((est - n as f64).abs() <= 1e-10 * n as f64, "N={n}: {est}");
    }
}

#[test]
fn block_coefficients_oscillate_between_blocks() {
    let c = block_orbit_coefficients(200);
    assert_eq!(
        &c[..10],
        &[1.0, 0.5, 0.25, 0.5, 1.0, 2.0, 1.0, 0.5, 0.25, 0.125]
    );
    let mut odd_ends = Vec::new();
    let mut even_ends = Vec::new();
    for m in 2usize.. {
        let end = m * (m + 1) / 2 - 1;
        if end >= c.len() {
            break;
        }
        let exponent = c[end].log2();
        assert_eq!(exponent.fract(), 0.0);
        if m % 2 == 1 {
            assert_eq!(exponent, ((m - 1) / 2) as f64);
            odd_ends.push(c[end]);
        } else {
            assert_eq!(exponent, -((m / 2 + 1) as f64));
            even_ends.push(c[end]);
        }
    }
    assert!(odd_ends.windows(2).all(|w| w[1] > w[0]));
    assert!(even_ends.windows(2).all(|w| w[1] < w[0]));
    assert!(*odd_ends.last().unwrap() >= 256.0);
    assert!(*even_ends.last().unwrap() <= 1.0 / 512.0);
}

#[test]
fn diagonal_pairs_collapse_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..10 {
        let mut m = vec![Complex64::new(1.0, 0.0)];
        for _ in 1..20 {
            let step =
                2f64.powi(rng.random_range(-2..=2)) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            m.push(m[m.len() - 1] * step);
        }
        let mut f = CMatrix::zeros(20, 20);
        for (k, v) in m.iter().enumerate() {
            f[(k, k)] = *v;
        }
        let family = VectorFamily::new(f).unwrap();
        let dual = DualFamily::diagonal(&m).unwrap();
        assert!(expansion_residuals(&family, &dual)
            .unwrap()
            .iter()
            .all(|&r| r == 0.0));
    }
}

#[test]
fn rotated_biorthogonal_pair() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..5 {
        let mut m = random_matrix(&mut rng, 15, 15);
        for k in 0..15 {
            m[(k, k)] += Complex64::new(4.0, 0.0);
        }
        let family = VectorFamily::independent(m).unwrap();
        let dual = DualFamily::canonical(&family).unwrap();
        let res = expansion_residuals(&family, &dual).unwrap();
        assert!(res.iter().all(|&r| r <= 1e-10), "{res:?}");
        let v: Vec<Complex64> = random_coeffs(&mut rng, 15).0;
        assert!(dual.expansion_error(&family, &v).unwrap() <= 1e-10);
    }
}

#[test]
fn scaled_riesz_on_perturbed_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let n = 12;
        let mut e = random_matrix(&mut rng, n, n) * Complex64::new(0.05, 0.0);
        for k in 0..n {
            e[(k, k)] += Complex64::new(1.0, 0.0);
        }
        let basis = VectorFamily::independent(e).unwrap();
        let mut m = vec![Complex64::new(1.0, 0.0)];
        for _ in 1..n {
            let ratio = rng.random_range(0.25..4.0);
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            m.push(m[m.len() - 1] * Complex64::from_polar(ratio, phase));
        }
        let report = scaled_riesz_bound_check(&basis, &m, None).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!(report.slack() >= -1e-12 * report.bound);
    }
}

#[test]
fn independent_family_has_trivial_kernel() {
    let f = example_factory(Example::Factorial, 10, 10).unwrap();
    let report = kernel_shift_check(&f, 1e-8);
    assert_eq!(report.kernel_dimension, 0);
    assert_eq!(report.max_residual, 0.0);
}

#[test]
fn carleson_orbit_kernel_is_nearly_shift_invariant() {
    // Dropping the last coefficient leaves U𝒯c = −c_N T^{N+1} h, tiny once
    // the orbit has decayed.
    let sys = DiagonalSystem::new(generate_geometric(2.0, 3).unwrap()).unwrap();
    let orbit = orbit_matrix(&sys, 300);
    let family = VectorFamily::new(orbit.entries().clone()).unwrap();
    let tol = 1e-8;
    let report = kernel_shift_check(&family, tol);
    assert_eq!(report.kernel_dimension, 298);
    assert!(report.max_residual <= 10.0 * tol, "{}", report.max_residual);
    assert!(report.max_outside_kernel <= 10.0 * tol);
    assert!(report.invariant_within_tolerance());
}
