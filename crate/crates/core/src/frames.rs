//! Iterated systems `{Tⁿh}` for the diagonal operator `T e_k = λ_k e_k`
//! with seed `h = Σ √(1−|λ_k|²) e_k`.
//!
//! All frame bounds are those of the truncated family `{Tⁿh}_{n≤N}` in
//! `ℂ^K`. They approach the bounds of the infinite system only in the
//! joint limit; for fixed `K` the limit `N → ∞` is available exactly
//! through [`limit_frame_bounds`].

use num_complex::Complex64;
use rayon::prelude::*;

use crate::disc::{carleson_products, transform_sequence, DiscSequence, SequenceSpec, Transform};
use crate::error::{Error, Result};
use crate::hardy::kernel_gram;
use crate::linalg::{singular_values, CMatrix};

/// Diagonal operator on the first `K` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSystem {
    seq: DiscSequence,
}

impl DiagonalSystem {
    pub fn new(seq: DiscSequence) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::Domain("a diagonal system needs K ≥ 1".into()));
        }
        Ok(Self { seq })
    }

    pub fn sequence(&self) -> &DiscSequence {
        &self.seq
    }

    pub fn dimension(&self) -> usize {
        self.seq.len()
    }

    /// Operator norm `max_k |λ_k|`.
    pub fn operator_norm(&self) -> f64 {
        self.seq.max_modulus()
    }

    /// Default orbit length `N = 20·K`.
    pub fn default_orbit_length(&self) -> usize {
        20 * self.dimension()
    }
}

/// Seed vector `h` with coordinates `√(1−|λ_k|²)`.
pub fn build_h(sys: &DiagonalSystem) -> Vec<Complex64> {
    sys.seq
        .co_norms_sqr()
        .into_iter()
        .map(|w| Complex64::new(w.sqrt(), 0.0))
        .collect()
}

/// `T x = (λ_k·x_k)_k`.
pub fn apply_diag(sys: &DiagonalSystem, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != sys.dimension() {
        return Err(Error::Dimension {
            expected: sys.dimension(),
            found: x.len(),
        });
    }
    Ok(sys.seq.values().iter().zip(x).map(|(l, v)| l * v).collect())
}

/// `K × (N+1)` matrix whose column `n` is `Tⁿh`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitMatrix {
    entries: CMatrix,
}

impl OrbitMatrix {
    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    /// Largest power `N`.
    pub fn orbit_length(&self) -> usize {
        self.entries.ncols() - 1
    }

    pub fn column(&self, n: usize) -> Vec<Complex64> {
        self.entries.column(n).iter().copied().collect()
    }
}

/// Columns are produced by repeated application of `T` to `h`, so that
/// column `n+1` is bit-identical to `apply_diag` of column `n`.
pub fn orbit_matrix(sys: &DiagonalSystem, n: usize) -> OrbitMatrix {
    OrbitMatrix {
        entries: orbit_from(sys.seq.values(), build_h(sys), n),
    }
}

fn orbit_from(values: Vec<Complex64>, seed: Vec<Complex64>, n: usize) -> CMatrix {
    let k = values.len();
    let mut m = CMatrix::zeros(k, n + 1);
    let mut col = seed;
    for j in 0..=n {
        for (r, v) in col.iter().enumerate() {
            m[(r, j)] = *v;
        }
        for (v, l) in col.iter_mut().zip(&values) {
            *v = l * *v;
        }
    }
    m
}

/// Optimal frame bounds `A ≤ B` of a finite family in `ℂ^K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `(σ_min², σ_max²)` of the orbit matrix. The lower bound is 0 when
/// there are fewer columns than rows.
pub fn frame_bounds(m: &OrbitMatrix) -> FrameBounds {
    let sv = singular_values(&m.entries);
    let upper = sv.first().map_or(0.0, |s| s * s);
    let lower = if m.entries.ncols() < m.entries.nrows() {
        0.0
    } else {
        sv.last().map_or(0.0, |s| s * s)
    };
    FrameBounds { lower, upper }
}

/// Bounds of `{Tⁿh}_{n≥0}` on `ℂ^K`, the `N → ∞` limit of
/// [`frame_bounds`]: `Σ_n Tⁿh (Tⁿh)*` converges to the Gram matrix of the
/// normalized reproducing kernels at `λ_1..λ_K`.
pub fn limit_frame_bounds(sys: &DiagonalSystem) -> Result<FrameBounds> {
    let gram = kernel_gram(&sys.seq)?;
    let ev = gram.eigenvalues();
    Ok(FrameBounds {
        lower: ev[0],
        upper: ev[ev.len() - 1],
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub k: usize,
    pub n: usize,
    pub lower: f64,
    pub upper: f64,
    /// Truncated Carleson infimum of the first `k` points.
    pub delta: f64,
}

/// Frame bounds and Carleson infimum over the grid `k_list × n_list`.
/// Cells run in parallel; rows come back sorted by `(K, N)`.
pub fn carleson_frame_experiment(
    spec: &SequenceSpec,
    k_list: &[usize],
    n_list: &[usize],
) -> Result<Vec<ExperimentRow>> {
    if k_list.is_empty() || n_list.is_empty() {
        return Err(Error::Domain("experiment grid must be non-empty".into()));
    }
    let mut ks = k_list.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();

    let systems = ks
        .par_iter()
        .map(|&k| {
            let seq = spec.generate(k)?;
            let delta = carleson_products(&seq)?.infimum;
            Ok((k, DiagonalSystem::new(seq)?, delta))
        })
        .collect::<Result<Vec<_>>>()?;

    let cells: Vec<(usize, usize)> = (0..systems.len())
        .flat_map(|i| ns.iter().map(move |&n| (i, n)))
        .collect();
    let mut rows: Vec<ExperimentRow> = cells
        .par_iter()
        .map(|&(i, n)| {
            let (k, sys, delta) = &systems[i];
            let bounds = frame_bounds(&orbit_matrix(sys, n));
            ExperimentRow {
                k: *k,
                n,
                lower: bounds.lower,
                upper: bounds.upper,
                delta: *delta,
            }
        })
        .collect();
    rows.sort_by_key(|r| (r.k, r.n));
    Ok(rows)
}

/// Outcome of checking `T_ℓ^{nℓ+r} h = T_ℓ^r Tⁿh`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootOrbitRecord {
    pub ell: u32,
    /// Largest entrywise deviation over all checked `(n, r)`.
    pub max_deviation: f64,
    pub checked_columns: usize,
    /// Frame bounds of `{T_ℓᵐ h}_{m≤N}`.
    pub bounds: FrameBounds,
}

/// System with eigenvalues `λ_k^{1/ℓ}`; requires real `λ_k ∈ [0, 1)`.
pub fn root_system(sys: &DiagonalSystem, ell: u32) -> Result<DiagonalSystem> {
    DiagonalSystem::new(transform_sequence(&sys.seq, &Transform::RootMap(ell))?)
}

pub fn root_orbit_decomposition(
    sys: &DiagonalSystem,
    ell: u32,
    n: usize,
) -> Result<RootOrbitRecord> {
    let rooted = root_system(sys, ell)?;
    let h = build_h(sys);
    let root_orbit = orbit_from(rooted.seq.values(), h.clone(), n);
    let l = ell as usize;
    let plain_orbit = orbit_from(sys.seq.values(), h, n / l);

    let mut max_deviation: f64 = 0.0;
    let mut checked = 0;
    for base in 0..=n / l {
        let mut col: Vec<Complex64> = plain_orbit.column(base).iter().copied().collect();
        for r in 0..l {
            let m = base * l + r;
            if m > n {
                break;
            }
            for (row, v) in col.iter().enumerate() {
                max_deviation = max_deviation.max((root_orbit[(row, m)] - v).norm());
            }
            checked += 1;
            col = apply_diag(&rooted, &col)?;
        }
    }
    Ok(RootOrbitRecord {
        ell,
        max_deviation,
        checked_columns: checked,
        bounds: frame_bounds(&OrbitMatrix {
            entries: root_orbit,
        }),
    })
}

/// `h_ℓ` with coordinates `√(1−|λ_k^{1/ℓ}|²)`.
pub fn build_h_root(sys: &DiagonalSystem, ell: u32) -> Result<Vec<Complex64>> {
    Ok(build_h(&root_system(sys, ell)?))
}

/// Orbit matrix of `T_ℓ` started at `h_ℓ`.
pub fn root_orbit_matrix(sys: &DiagonalSystem, ell: u32, n: usize) -> Result<OrbitMatrix> {
    Ok(orbit_matrix(&root_system(sys, ell)?, n))
}
