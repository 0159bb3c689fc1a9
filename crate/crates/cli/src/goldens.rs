//! Regeneration of golden files from oracles that bypass the library's
//! own numerics where possible.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use dynsamp::disc::{generate_geometric, generate_inverse_power, DiscSequence};
use dynsamp::hardy::{interpolate, phi_lambda, Degree, HardyPoly};
use dynsamp::linalg::{hermitian_eigenvalues, vector_norm, CMatrix};
use dynsamp::repr::Example;
use dynsamp::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Context};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Carleson,
    Frames,
    Repr,
    Hardy,
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "carleson" => Ok(Suite::Carleson),
            "frames" => Ok(Suite::Frames),
            "repr" => Ok(Suite::Repr),
            "hardy" => Ok(Suite::Hardy),
            other => Err(CliError::UnknownSuite(other.to_string())),
        }
    }
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Carleson => "carleson",
            Suite::Frames => "frames",
            Suite::Repr => "repr",
            Suite::Hardy => "hardy",
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name())
    }

    fn oracle(&self) -> &'static str {
        match self {
            Suite::Carleson => "direct product of |a-b|/|1-conj(a)b| over all pairs",
            Suite::Frames => {
                "eigenvalues of the closed-form Gram s_j s_k (1-q^(N+1))/(1-q), q = l_j conj(l_k)"
            }
            Suite::Repr => {
                "closed-form max |w_(k+1)/w_k| for diagonal families, 1 for the sum basis"
            }
            Suite::Hardy => "interpolation round trip on seeded random polynomials",
        }
    }
}

pub const GEOMETRIC_KS: [usize; 6] = [5, 10, 15, 20, 25, 30];
pub const INVERSE_SQUARE_KS: [usize; 6] = [5, 10, 20, 30, 40, 60];
/// `(K, N)` cells whose lower bound is well above double resolution.
pub const GEOMETRIC_CELLS: [(usize, usize); 6] =
    [(3, 50), (3, 100), (5, 100), (5, 300), (8, 200), (8, 400)];
pub const INVERSE_SQUARE_CELLS: [(usize, usize); 4] = [(5, 400), (5, 800), (10, 400), (10, 800)];
pub const REPR_SIZES: [usize; 3] = [5, 10, 15];
pub const HARDY_MAX_K: usize = 12;

fn naive_infimum(values: &[Complex64]) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    (0..values.len())
        .map(|n| {
            values
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != n)
                .map(|(_, &a)| (a - values[n]).norm() / (one - a.conj() * values[n]).norm())
                .product::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

fn closed_form_bounds(values: &[Complex64], n: usize) -> (f64, f64) {
    let one = Complex64::new(1.0, 0.0);
    let s: Vec<f64> = values.iter().map(|l| (1.0 - l.norm_sqr()).sqrt()).collect();
    let k = values.len();
    let g = CMatrix::from_fn(k, k, |i, j| {
        let q = values[i] * values[j].conj();
        let sum = if i == j {
            let r = q.re;
            Complex64::new((1.0 - r.powi(n as i32 + 1)) / (1.0 - r), 0.0)
        } else {
            (one - q.powi(n as i32 + 1)) / (one - q)
        };
        sum * (s[i] * s[j])
    });
    let ev = hermitian_eigenvalues(&g);
    (ev[0], ev[k - 1])
}

fn seq_values(seq: dynsamp::Result<DiscSequence>) -> Result<Vec<Complex64>, CliError> {
    Ok(seq.context("goldens")?.values())
}

fn carleson_table() -> Result<Table, CliError> {
    let mut t = Table::new(vec!["family", "K", "infimum"]);
    for k in GEOMETRIC_KS {
        let v = seq_values(generate_geometric(2.0, k))?;
        t.push(vec![
            "geometric_2".into(),
            k.into(),
            naive_infimum(&v).into(),
        ]);
    }
    for k in INVERSE_SQUARE_KS {
        let v = seq_values(generate_inverse_power(2.0, k))?;
        t.push(vec![
            "inverse_square".into(),
            k.into(),
            naive_infimum(&v).into(),
        ]);
    }
    Ok(t)
}

type Generator = fn(usize) -> dynsamp::Result<DiscSequence>;
type FamilyCells = (&'static str, &'static [(usize, usize)], Generator);

fn frames_table() -> Result<Table, CliError> {
    let mut t = Table::new(vec!["family", "K", "N", "A", "B"]);
    let families: [FamilyCells; 2] = [
        ("geometric_2", &GEOMETRIC_CELLS, |k| {
            generate_geometric(2.0, k)
        }),
        ("inverse_square", &INVERSE_SQUARE_CELLS, |k| {
            generate_inverse_power(2.0, k)
        }),
    ];
    for (name, cells, gen) in families {
        for &(k, n) in cells {
            let (a, b) = closed_form_bounds(&seq_values(gen(k))?, n);
            t.push(vec![name.into(), k.into(), n.into(), a.into(), b.into()]);
        }
    }
    Ok(t)
}

fn repr_table() -> Result<Table, CliError> {
    let mut t = Table::new(vec!["family", "N", "restricted_norm"]);
    let families = [
        Example::SumBasis,
        Example::Factorial,
        Example::Fractional,
        Example::Block,
        Example::Scaled { factor: 2.0 },
        Example::Scaled { factor: 0.5 },
    ];
    for ex in families {
        for n in REPR_SIZES {
            let value = if ex == Example::SumBasis {
                1.0
            } else {
                let w = ex.weights(n).context("goldens")?;
                w.windows(2)
                    .map(|p| (p[1] / p[0]).abs())
                    .fold(0.0, f64::max)
            };
            let name = match ex {
                Example::Scaled { factor } => format!("scaled_{factor}"),
                other => other.name().to_string(),
            };
            t.push(vec![Cell::Text(name), n.into(), value.into()]);
        }
    }
    Ok(t)
}

fn hardy_table(seed: u64) -> Result<Table, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Table::new(vec![
        "K",
        "degree",
        "relative_residual",
        "interpolant_norm",
        "source_norm",
    ]);
    for k in 1..=HARDY_MAX_K {
        let seq = generate_geometric(2.0, k).context("goldens")?;
        let g = HardyPoly::new(
            (0..8)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
        .context("goldens")?;
        let target = phi_lambda(&g, &seq);
        let f = interpolate(&seq, &target, Degree::Auto).context("goldens")?;
        let diff: Vec<Complex64> = phi_lambda(&f, &seq)
            .iter()
            .zip(&target)
            .map(|(a, b)| a - b)
            .collect();
        t.push(vec![
            k.into(),
            f.degree().into(),
            (vector_norm(&diff) / vector_norm(&target)).into(),
            f.norm().into(),
            g.norm().into(),
        ]);
    }
    Ok(t)
}

pub fn table(suite: Suite, seed: u64) -> Result<Table, CliError> {
    match suite {
        Suite::Carleson => carleson_table(),
        Suite::Frames => frames_table(),
        Suite::Repr => repr_table(),
        Suite::Hardy => hardy_table(seed),
    }
}

fn header(suite: Suite, seed: u64) -> String {
    let date = time::OffsetDateTime::now_utc().date();
    format!(
        "# suite: {}\n# oracle: {}\n# seed: {seed}\n# date: {date}\n",
        suite.name(),
        suite.oracle()
    )
}

/// Recomputes one suite and rewrites `<out_dir>/<suite>.csv`.
pub fn regenerate(suite: Suite, out_dir: &Path, seed: u64) -> Result<PathBuf, CliError> {
    let body = table(suite, seed)?.to_csv();
    std::fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let path = out_dir.join(suite.file_name());
    std::fs::write(&path, header(suite, seed) + &body).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

/// Data rows of a golden file, header comments and column line removed.
pub fn read_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}
