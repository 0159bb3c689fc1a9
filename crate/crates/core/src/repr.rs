//! Operator representations `f_{k+1} = T f_k` of finite families.
//!
//! `T` is never inverted directly. It acts through column shifts of the
//! synthesis matrix, and its restricted norm is read off an orthonormal
//! basis of `span{f_1, …, f_{N−1}}`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    equilibrate_columns, null_space, numerical_rank, singular_values, spectral_norm, vector_norm,
    CMatrix, CVector,
};

/// Relative rank tolerance for families (applied to unit-norm columns).
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Largest `N` accepted for the factorial family.
pub const FACTORIAL_MAX: usize = 18;

/// Finite coefficient sequence `(c_1, …, c_N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeq(pub Vec<Complex64>);

impl CoefficientSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `(c_1, c_2, …) ↦ (0, c_1, c_2, …)`.
pub fn right_shift(c: &CoefficientSeq) -> CoefficientSeq {
    let mut out = Vec::with_capacity(c.len() + 1);
    out.push(Complex64::new(0.0, 0.0));
    out.extend_from_slice(&c.0);
    CoefficientSeq(out)
}

/// Ordered family `f_1, …, f_N` in `ℂ^d`, stored as the columns of a
/// `d × N` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    columns: CMatrix,
    label: Option<String>,
}

impl VectorFamily {
    /// Any family with `d ≥ 1` and `N ≥ 2`.
    pub fn new(columns: CMatrix) -> Result<Self> {
        if columns.nrows() == 0 {
            return Err(Error::Dimension {
                expected: 1,
                found: 0,
            });
        }
        if columns.ncols() < 2 {
            return Err(Error::Dimension {
                expected: 2,
                found: columns.ncols(),
            });
        }
        Ok(Self {
            columns,
            label: None,
        })
    }

    /// Like [`VectorFamily::new`] but rejects numerically dependent columns.
    pub fn independent(columns: CMatrix) -> Result<Self> {
        let family = Self::new(columns)?;
        let rank = family.rank();
        if rank < family.len() {
            return Err(Error::Rank {
                rank,
                columns: family.len(),
            });
        }
        Ok(family)
    }

    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let d = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != d) {
            return Err(Error::Dimension {
                expected: d,
                found: bad.len(),
            });
        }
        let m = CMatrix::from_fn(d, columns.len(), |r, c| columns[c][r]);
        Self::new(m)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn columns(&self) -> &CMatrix {
        &self.columns
    }

    pub fn column(&self, k: usize) -> Vec<Complex64> {
        self.columns.column(k).iter().copied().collect()
    }

    pub fn dimension(&self) -> usize {
        self.columns.nrows()
    }

    /// Number of vectors `N`.
    pub fn len(&self) -> usize {
        self.columns.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.ncols() == 0
    }

    /// Numerical rank after scaling every column to unit norm.
    pub fn rank(&self) -> usize {
        // Zero columns stay zero after scaling and never add rank.
        let (scaled, _) = equilibrate_columns(&self.columns);
        numerical_rank(&singular_values(&scaled), RANK_TOLERANCE)
    }

    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.len())
            .map(|k| self.columns.column(k).norm())
            .collect()
    }
}

/// Companion family `g_1, …, g_N` for frame-like expansions
/// `f = Σ ⟨f, g_k⟩ f_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFamily {
    columns: CMatrix,
}

impl DualFamily {
    pub fn new(columns: CMatrix) -> Self {
        Self { columns }
    }

    /// `g_k = (F⁺)*` column `k`; biorthogonal to `F` when `F` has full
    /// column rank.
    pub fn canonical(family: &VectorFamily) -> Result<Self> {
        let f = family.columns();
        let pinv = f
            .clone()
            .pseudo_inverse(RANK_TOLERANCE * spectral_norm(f))
            .map_err(|e| Error::Domain(e.to_string()))?;
        Ok(Self {
            columns: pinv.adjoint(),
        })
    }

    /// Diagonal dual `g_k = e_k / conj(m_k)` of `f_k = m_k e_k`.
    pub fn diagonal(multipliers: &[Complex64]) -> Result<Self> {
        if multipliers.iter().any(|m| m.norm() == 0.0) {
            return Err(Error::Domain("multipliers must be nonzero".into()));
        }
        let n = multipliers.len();
        let mut g = CMatrix::zeros(n, n);
        for (k, m) in multipliers.iter().enumerate() {
            g[(k, k)] = Complex64::new(1.0, 0.0) / m.conj();
        }
        Ok(Self { columns: g })
    }

    pub fn columns(&self) -> &CMatrix {
        &self.columns
    }

    /// `‖f − Σ ⟨f, g_k⟩ f_k‖ / ‖f‖`.
    pub fn expansion_error(&self, family: &VectorFamily, f: &[Complex64]) -> Result<f64> {
        check_same_shape(family, self)?;
        if f.len() != family.dimension() {
            return Err(Error::Dimension {
                expected: family.dimension(),
                found: f.len(),
            });
        }
        let v = CVector::from_column_slice(f);
        let coeffs = self.columns.adjoint() * &v;
        let recon = family.columns() * coeffs;
        Ok((v.clone() - recon).norm() / v.norm())
    }
}

fn check_same_shape(f: &VectorFamily, g: &DualFamily) -> Result<()> {
    let (fr, fc) = f.columns.shape();
    let (gr, gc) = g.columns.shape();
    if fr != gr {
        return Err(Error::Dimension {
            expected: fr,
            found: gr,
        });
    }
    if fc != gc {
        return Err(Error::Dimension {
            expected: fc,
            found: gc,
        });
    }
    Ok(())
}

/// `U c = Σ c_k f_k`; missing trailing coefficients count as zero.
pub fn synthesis_apply(family: &VectorFamily, c: &CoefficientSeq) -> Result<Vec<Complex64>> {
    if c.len() > family.len() {
        return Err(Error::Dimension {
            expected: family.len(),
            found: c.len(),
        });
    }
    let d = family.dimension();
    let mut out = vec![Complex64::new(0.0, 0.0); d];
    for (k, ck) in c.0.iter().enumerate() {
        for (r, o) in out.iter_mut().enumerate() {
            *o += ck * family.columns[(r, k)];
        }
    }
    Ok(out)
}

/// `T` restricted to `span{f_1, …, f_{N−1}}`, in coordinates of an
/// orthonormal basis of that span.
#[derive(Debug, Clone)]
pub struct RestrictedShift {
    /// Orthonormal basis `Q` of `span{f_1, …, f_{N−1}}` (columns).
    pub basis: CMatrix,
    /// `d × (N−1)` matrix `X` with `T(Q y) = X y`.
    pub matrix: CMatrix,
}

impl RestrictedShift {
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }
}

/// Builds the map `Σ c_k f_k ↦ Σ c_k f_{k+1}` (`k < N`) on an orthonormal
/// basis. Columns are scaled to unit norm first; the rank test uses
/// [`RANK_TOLERANCE`] on the scaled columns.
pub fn restricted_shift(family: &VectorFamily) -> Result<RestrictedShift> {
    let n = family.len();
    let source = family.columns.columns(0, n - 1).into_owned();
    let image = family.columns.columns(1, n - 1).into_owned();
    let (source, norms) = equilibrate_columns(&source);
    if let Some(zero) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::Domain(format!("f_{} is the zero vector", zero + 1)));
    }
    let rank = numerical_rank(&singular_values(&source), RANK_TOLERANCE);
    if rank < n - 1 {
        return Err(Error::Rank {
            rank,
            columns: n - 1,
        });
    }
    let mut image = image;
    for (j, v) in norms.iter().enumerate() {
        image.column_mut(j).unscale_mut(*v);
    }
    let qr = source.qr();
    let q = qr.q();
    let r = qr.r();
    // X R = image  ⇔  R* X* = image*.
    let x_adj = r
        .adjoint()
        .solve_lower_triangular(&image.adjoint())
        .ok_or(Error::Rank {
            rank,
            columns: n - 1,
        })?;
    Ok(RestrictedShift {
        basis: q,
        matrix: x_adj.adjoint(),
    })
}

/// Smallest `K` with `‖Σ c_k f_{k+1}‖ ≤ K ‖Σ c_k f_k‖` for all
/// coefficient vectors supported on `1..N−1`.
pub fn restricted_norm_estimate(family: &VectorFamily) -> Result<f64> {
    Ok(restricted_shift(family)?.norm())
}

/// `‖f_{k+1}‖ / ‖f_k‖` for `k = 1..N−1`.
pub fn norm_ratio_sequence(family: &VectorFamily) -> Result<Vec<f64>> {
    let norms = family.column_norms();
    if let Some(zero) = norms.iter().position(|&v| v == 0.0) {
        return Err(Error::Domain(format!("f_{} is the zero vector", zero + 1)));
    }
    Ok(norms.windows(2).map(|w| w[1] / w[0]).collect())
}

/// Residuals of one kernel basis vector `c` under the truncated shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResidual {
    /// `‖U 𝒯c‖`.
    pub image_norm: f64,
    /// Distance of `𝒯c` from the numerical kernel.
    pub outside_kernel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelShiftReport {
    pub kernel_dimension: usize,
    pub sigma_max: f64,
    pub per_vector: Vec<ShiftResidual>,
    /// `max ‖U 𝒯c‖ / σ_max(U)` over unit `c` in the kernel.
    pub max_residual: f64,
    /// `max dist(𝒯c, kernel)` over unit `c` in the kernel.
    pub max_outside_kernel: f64,
    pub tolerance: f64,
}

impl KernelShiftReport {
    pub fn invariant_within_tolerance(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

/// Right-shift invariance of the numerical kernel of `U`. Shifts are
/// truncated to `N` entries, so the last coefficient of each kernel
/// vector is dropped.
pub fn kernel_shift_check(family: &VectorFamily, tol: f64) -> KernelShiftReport {
    let f = family.columns();
    let n = family.len();
    let sigma_max = spectral_norm(f);
    let kernel = null_space(f, tol);
    let m = kernel.ncols();

    let mut shifted = CMatrix::zeros(n, m);
    if n > 1 {
        shifted
            .view_mut((1, 0), (n - 1, m))
            .copy_from(&kernel.view((0, 0), (n - 1, m)));
    }
    let image = f * &shifted;
    let outside = &shifted - &kernel * (kernel.adjoint() * &shifted);

    let per_vector = (0..m)
        .map(|j| ShiftResidual {
            image_norm: image.column(j).norm(),
            outside_kernel: outside.column(j).norm(),
        })
        .collect();
    let max_residual = if sigma_max > 0.0 {
        spectral_norm(&image) / sigma_max
    } else {
        0.0
    };
    KernelShiftReport {
        kernel_dimension: m,
        sigma_max,
        per_vector,
        max_residual,
        max_outside_kernel: spectral_norm(&outside),
        tolerance: tol,
    }
}

/// `‖U 𝒯c‖` for a single coefficient vector, shift truncated to `N`.
pub fn shift_residual(family: &VectorFamily, c: &CoefficientSeq) -> Result<f64> {
    let mut shifted = right_shift(c);
    shifted.0.truncate(family.len());
    Ok(vector_norm(&synthesis_apply(family, &shifted)?))
}

/// `‖f_{j+1} − Σ_{k≤N−1} ⟨f_j, g_k⟩ f_{k+1}‖` for `j = 1..N−1`.
pub fn expansion_residuals(family: &VectorFamily, dual: &DualFamily) -> Result<Vec<f64>> {
    check_same_shape(family, dual)?;
    let n = family.len();
    let f = family.columns();
    let g_head = dual.columns.columns(0, n - 1);
    let f_tail = f.columns(1, n - 1);
    Ok((0..n - 1)
        .map(|j| {
            let coeffs = g_head.adjoint() * f.column(j);
            let recon = f_tail * coeffs;
            (f.column(j + 1) - recon).norm()
        })
        .collect())
}

/// Both sides of `‖T‖² ≤ (B/A)·C²` for `f_k = m_k e_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledRieszReport {
    /// Restricted norm of `T` on `{m_k e_k}`.
    pub estimate: f64,
    /// `C = max |m_{k+1}/m_k|`.
    pub ratio_bound: f64,
    pub riesz_lower: f64,
    pub riesz_upper: f64,
    /// `(B/A)·C²`.
    pub bound: f64,
}

impl ScaledRieszReport {
    pub fn lhs(&self) -> f64 {
        self.estimate * self.estimate
    }

    pub fn slack(&self) -> f64 {
        self.bound - self.lhs()
    }

    /// Inequality with a relative rounding allowance of `1e-12`.
    pub fn holds(&self) -> bool {
        self.lhs() <= self.bound * (1.0 + 1e-12)
    }
}

/// Checks the bound for `f_k = m_k e_k`. Riesz bounds of `{e_k}` are
/// measured as `σ_min²`, `σ_max²` of `basis` unless supplied.
pub fn scaled_riesz_bound_check(
    basis: &VectorFamily,
    multipliers: &[Complex64],
    riesz_bounds: Option<(f64, f64)>,
) -> Result<ScaledRieszReport> {
    if multipliers.len() != basis.len() {
        return Err(Error::Dimension {
            expected: basis.len(),
            found: multipliers.len(),
        });
    }
    if multipliers.iter().any(|m| m.norm() == 0.0) {
        return Err(Error::Domain("multipliers must be nonzero".into()));
    }
    let (riesz_lower, riesz_upper) = match riesz_bounds {
        Some((a, b)) => {
            if !(a > 0.0 && a <= b) {
                return Err(Error::Domain(format!("invalid Riesz bounds ({a}, {b})")));
            }
            (a, b)
        }
        None => {
            let sv = singular_values(basis.columns());
            let lower = sv.last().copied().unwrap_or(0.0);
            if sv.len() < basis.len() || lower == 0.0 {
                return Err(Error::Rank {
                    rank: basis.rank(),
                    columns: basis.len(),
                });
            }
            (lower * lower, sv[0] * sv[0])
        }
    };
    let mut scaled = basis.columns().clone();
    for (k, m) in multipliers.iter().enumerate() {
        for r in 0..scaled.nrows() {
            scaled[(r, k)] *= m;
        }
    }
    let estimate = restricted_norm_estimate(&VectorFamily::new(scaled)?)?;
    let ratio_bound = multipliers
        .windows(2)
        .map(|w| w[1].norm() / w[0].norm())
        .fold(0.0, f64::max);
    Ok(ScaledRieszReport {
        estimate,
        ratio_bound,
        riesz_lower,
        riesz_upper,
        bound: riesz_upper / riesz_lower * ratio_bound * ratio_bound,
    })
}

/// Named example families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Example {
    /// `f_k = e_k + e_{k+1}`: not a frame, yet `T` is an isometry.
    SumBasis,
    /// `f_k = k!·e_k`: `T e_k = (k+1) e_{k+1}` is unbounded.
    Factorial,
    /// `½e₁, ⅓e₂, ⅔e₃, ¼e₄, ¾e₅, …`: Bessel, unbounded `T`.
    Fractional,
    /// `Tⁿe₁ = c_n e_{n+1}` with blockwise factors 2 and ½.
    Block,
    /// `f_k = factor^k e_k` for an orthonormal `e_k`.
    Scaled { factor: f64 },
}

impl Example {
    pub fn from_name(name: &str, factor: Option<f64>) -> Result<Self> {
        match name {
            "sum_basis" => Ok(Example::SumBasis),
            "factorial" => Ok(Example::Factorial),
            "fractional" => Ok(Example::Fractional),
            "block" => Ok(Example::Block),
            "scaled" => Ok(Example::Scaled {
                factor: factor.unwrap_or(2.0),
            }),
            other => Err(Error::UnknownExample(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Example::SumBasis => "sum_basis",
            Example::Factorial => "factorial",
            Example::Fractional => "fractional",
            Example::Block => "block",
            Example::Scaled { .. } => "scaled",
        }
    }

    /// Ambient dimension needed for `n` vectors.
    pub fn required_dimension(&self, n: usize) -> usize {
        match self {
            Example::SumBasis => n + 1,
            _ => n,
        }
    }

    /// `‖f_k‖`-style scalar weights `w_k` with `f_k = w_k e_{k}` (or
    /// `e_k + e_{k+1}` for the sum basis, where all weights are 1).
    pub fn weights(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            Example::SumBasis => Ok(vec![1.0; n]),
            Example::Factorial => {
                if n > FACTORIAL_MAX {
                    return Err(Error::OverflowRisk(format!(
                        "factorial family with N = {n} > {FACTORIAL_MAX}"
                    )));
                }
                let mut out = Vec::with_capacity(n);
                let mut acc = 1.0;
                for k in 1..=n {
                    acc *= k as f64;
                    out.push(acc);
                }
                Ok(out)
            }
            Example::Fractional => Ok(fractional_weights(n)),
            Example::Block => Ok(block_orbit_coefficients(n)),
            Example::Scaled { factor } => {
                if !(factor.is_finite() && *factor != 0.0) {
                    return Err(Error::Domain(format!(
                        "scale factor {factor} must be finite and nonzero"
                    )));
                }
                Ok((1..=n).map(|k| factor.powi(k as i32)).collect())
            }
        }
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First `count` orbit coefficients `c_n` of `Tⁿe₁ = c_n e_{n+1}`, where
/// `T e_k = 2 e_{k+1}` on blocks `I_M = {(M−1)M/2, …, M(M+1)/2 − 1}` with
/// `M` odd and `½ e_{k+1}` with `M` even.
pub fn block_orbit_coefficients(count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut c = 1.0;
    for n in 0..count {
        out.push(c);
        // T acts on e_{n+1}.
        c *= if block_index(n + 1) % 2 == 1 {
            2.0
        } else {
            0.5
        };
    }
    out
}

/// The `M ≥ 2` with `k ∈ I_M`.
fn block_index(k: usize) -> usize {
    let mut m = 2;
    while m * (m + 1) / 2 <= k {
        m += 1;
    }
    m
}

/// `½`, then `1/m, (m−1)/m` for `m = 3, 4, …`.
fn fractional_weights(count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(0.5);
    }
    let mut m = 3.0;
    while out.len() < count {
        out.push(1.0 / m);
        if out.len() < count {
            out.push((m - 1.0) / m);
        }
        m += 1.0;
    }
    out
}

/// Builds the named family with `n` vectors in `ℂ^d`.
pub fn example_factory(example: Example, d: usize, n: usize) -> Result<VectorFamily> {
    let need = example.required_dimension(n);
    if d < need {
        return Err(Error::Dimension {
            expected: need,
            found: d,
        });
    }
    let weights = example.weights(n)?;
    let mut m = CMatrix::zeros(d, n);
    for (k, w) in weights.iter().enumerate() {
        m[(k, k)] = Complex64::new(*w, 0.0);
        if example == Example::SumBasis {
            m[(k + 1, k)] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(VectorFamily::new(m)?.with_label(example.name()))
}
