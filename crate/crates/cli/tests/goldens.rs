//! The library, through its production code paths, against the committed
//! oracle outputs in `goldens/`.

use std::path::Path;

use dynsamp::disc::{carleson_products, generate_geometric, generate_inverse_power, DiscSequence};
use dynsamp::frames::{frame_bounds, orbit_matrix, DiagonalSystem};
use dynsamp::repr::{example_factory, restricted_norm_estimate, Example};
use dynsamp_cli::goldens::{read_rows, regenerate, table, Suite};

fn golden(suite: Suite) -> Vec<Vec<String>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("goldens")
        .join(suite.file_name());
    read_rows(&std::fs::read_to_string(path).unwrap())
}

fn family(name: &str, k: usize) -> DiscSequence {
    match name {
        "geometric_2" => generate_geometric(2.0, k).unwrap(),
        "inverse_square" => generate_inverse_power(2.0, k).unwrap(),
        other => panic!("unknown family {other}"),
    }
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

#[test]
fn carleson_infima() {
    let rows = golden(Suite::Carleson);
    assert_eq!(rows.len(), 12);
    for r in rows {
        let k: usize = r[1].parse().unwrap();
        let got = carleson_products(&family(&r[0], k)).unwrap().infimum;
        assert!(close(got, num(&r[2]), 1e-10), "{r:?}: {got}");
    }
}

#[test]
fn frame_bounds_from_svd() {
    for r in golden(Suite::Frames) {
        let k: usize = r[1].parse().unwrap();
        let n: usize = r[2].parse().unwrap();
        let sys = DiagonalSystem::new(family(&r[0], k)).unwrap();
        let b = frame_bounds(&orbit_matrix(&sys, n));
        // Eigenvalues of the closed-form Gram carry absolute error ~eps·B.
        let slack = 1e-6 * num(&r[3]) + 64.0 * f64::EPSILON * num(&r[4]);
        assert!((b.lower - num(&r[3])).abs() <= slack, "{r:?}: {}", b.lower);
        assert!(close(b.upper, num(&r[4]), 1e-12), "{r:?}: {}", b.upper);
    }
}

#[test]
fn restricted_norms() {
    for r in golden(Suite::Repr) {
        let n: usize = r[1].parse().unwrap();
        let ex = match r[0].as_str() {
            "scaled_2" => Example::Scaled { factor: 2.0 },
            "scaled_0.5" => Example::Scaled { factor: 0.5 },
            name => Example::from_name(name, None).unwrap(),
        };
        let f = example_factory(ex, ex.required_dimension(n), n).unwrap();
        let got = restricted_norm_estimate(&f).unwrap();
        assert!(close(got, num(&r[2]), 1e-10), "{r:?}: {got}");
    }
}

#[test]
fn interpolation_residuals_stay_at_baseline() {
    let fresh = table(Suite::Hardy, 0).unwrap();
    let rows = golden(Suite::Hardy);
    assert_eq!(rows.len(), fresh.rows.len());
    let fresh = read_rows(&fresh.to_csv());
    for (g, f) in rows.iter().zip(&fresh) {
        assert_eq!(g[..2], f[..2]);
        let (base, now) = (num(&g[2]), num(&f[2]));
        assert!(
            now <= 1e-8 && now <= (10.0 * base).max(1e-12),
            "{g:?} vs {f:?}"
        );
        assert!(close(num(&f[3]), num(&g[3]), 1e-8));
        assert!(num(&f[3]) <= num(&f[4]) * (1.0 + 1e-8));
    }
}

#[test]
fn regeneration_reproduces_committed_rows() {
    let dir = tempfile::tempdir().unwrap();
    for suite in [Suite::Carleson, Suite::Frames, Suite::Repr, Suite::Hardy] {
        let path = regenerate(suite, dir.path(), 0).unwrap();
        let fresh = read_rows(&std::fs::read_to_string(path).unwrap());
        assert_eq!(fresh, golden(suite), "{suite:?}");
    }
}
