//! Truncated `H²(𝔻)`: polynomials, the weighted evaluation operator
//! `Φ_Λ f = {f(λ_k)·√(1−|λ_k|²)}` and minimal-norm interpolation.
//!
//! Interpolation goes through the Gram matrix of normalized reproducing
//! kernels `κ_j = √(1−|λ_j|²)·k_{λ_j}`, where `k_λ` has coefficients
//! `conj(λ)ⁿ`. Its conditioning tracks the Carleson constant of `Λ`.

use nalgebra::Cholesky;
use num_complex::Complex64;

use crate::disc::DiscSequence;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, singular_values, CMatrix, CVector};

/// Tail tolerance used for the automatic degree choice.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

/// Relative eigenvalue threshold below which a kernel Gram matrix is singular.
pub const GRAM_RANK_TOLERANCE: f64 = 1e-12;

/// `f(z) = Σ aₙ zⁿ` with finitely many coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyPoly {
    coeffs: Vec<Complex64>,
}

impl HardyPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain(
                "a polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// `zⁿ`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// Normalized kernel `√(1−|λ|²)·Σ_{n≤D} conj(λ)ⁿ zⁿ` at `seq[k]`.
    pub fn normalized_kernel(seq: &DiscSequence, k: usize, degree: usize) -> Self {
        let lambda = seq.value(k).conj();
        let mut p = Complex64::new(seq.co_norms_sqr()[k].sqrt(), 0.0);
        let mut coeffs = Vec::with_capacity(degree + 1);
        for _ in 0..=degree {
            coeffs.push(p);
            p *= lambda;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

/// `⟨f, g⟩ = Σ aₙ·conj(bₙ)`; the shorter polynomial is zero-padded.
pub fn hardy_inner(f: &HardyPoly, g: &HardyPoly) -> Complex64 {
    f.coeffs
        .iter()
        .zip(&g.coeffs)
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// Horner evaluation of `f(z)`.
pub fn eval_poly(f: &HardyPoly, z: Complex64) -> Complex64 {
    f.coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// `Φ_Λ f`.
pub fn phi_lambda(f: &HardyPoly, seq: &DiscSequence) -> Vec<Complex64> {
    seq.values()
        .iter()
        .zip(seq.co_norms_sqr())
        .map(|(&l, w)| eval_poly(f, l) * w.sqrt())
        .collect()
}

/// `K × (D+1)` matrix of `Φ_Λ` restricted to polynomials of degree `≤ D`:
/// entry `(k, n)` is `√(1−|λ_k|²)·λ_kⁿ`.
pub fn evaluation_matrix(seq: &DiscSequence, degree: usize) -> CMatrix {
    let values = seq.values();
    let weights = seq.co_norms_sqr();
    let mut m = CMatrix::zeros(seq.len(), degree + 1);
    for (k, (&l, w)) in values.iter().zip(weights).enumerate() {
        let mut p = Complex64::new(w.sqrt(), 0.0);
        for n in 0..=degree {
            m[(k, n)] = p;
            p *= l;
        }
    }
    m
}

/// Operator norm of the truncated `Φ_Λ` on polynomials of degree `≤ D`.
pub fn evaluation_norm(seq: &DiscSequence, degree: usize) -> f64 {
    singular_values(&evaluation_matrix(seq, degree))
        .first()
        .copied()
        .unwrap_or(0.0)
}

/// Hermitian Gram matrix of the normalized kernels at `Λ`.
#[derive(Debug, Clone)]
pub struct KernelGram {
    matrix: CMatrix,
    seq: DiscSequence,
    eigenvalues: Vec<f64>,
}

impl KernelGram {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn sequence(&self) -> &DiscSequence {
        &self.seq
    }

    /// Eigenvalues in non-decreasing order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn condition_number(&self) -> f64 {
        let max = self.eigenvalues.last().copied().unwrap_or(0.0);
        let min = self.eigenvalues.first().copied().unwrap_or(0.0);
        max / min
    }

    /// Solves `G a = c` by Cholesky, falling back to an SVD pseudo-solve
    /// when the factorization breaks down.
    pub fn solve(&self, target: &[Complex64]) -> Result<CVector> {
        let k = self.matrix.nrows();
        if target.len() != k {
            return Err(Error::Dimension {
                expected: k,
                found: target.len(),
            });
        }
        let rhs = CVector::from_column_slice(target);
        if let Some(chol) = Cholesky::new(self.matrix.clone()) {
            let a = chol.solve(&rhs);
            if a.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
                return Ok(a);
            }
        }
        let svd = self.matrix.clone().svd(true, true);
        let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        svd.solve(&rhs, GRAM_RANK_TOLERANCE * sigma_max)
            .map_err(|e| Error::Domain(e.to_string()))
    }
}

/// `G_{jk} = √(1−|λ_j|²)·√(1−|λ_k|²) / (1 − λ_j·conj(λ_k))`, so that
/// `f = Σ_j a_j κ_j` with `G a = c` satisfies `Φ_Λ f = c`.
pub fn kernel_gram(seq: &DiscSequence) -> Result<KernelGram> {
    let k = seq.len();
    if k == 0 {
        return Err(Error::Domain("kernel Gram of an empty sequence".into()));
    }
    let weights: Vec<f64> = seq.co_norms_sqr().iter().map(|w| w.sqrt()).collect();
    let mut g = CMatrix::zeros(k, k);
    for j in 0..k {
        g[(j, j)] = Complex64::new(1.0, 0.0);
        for i in j + 1..k {
            let denom = seq.one_minus_conj_product(j, i);
            let entry = Complex64::new(weights[i] * weights[j], 0.0) / denom;
            g[(i, j)] = entry;
            g[(j, i)] = entry.conj();
        }
    }
    let eigenvalues = hermitian_eigenvalues(&g);
    let max = eigenvalues.last().copied().unwrap_or(0.0);
    let rank = eigenvalues
        .iter()
        .filter(|&&e| e > GRAM_RANK_TOLERANCE * max)
        .count();
    if rank < k {
        return Err(Error::SingularGram { rank, size: k });
    }
    Ok(KernelGram {
        matrix: g,
        seq: seq.clone(),
        eigenvalues,
    })
}

/// Degree selection for [`interpolate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// Smallest `D` with `max|λ_k|^D ≤` the tail tolerance.
    Auto,
    Fixed(usize),
}

/// Smallest `D` with `max_k |λ_k|^D ≤ tolerance`.
pub fn auto_degree(seq: &DiscSequence, tolerance: f64) -> usize {
    let min_gap = seq.gaps().into_iter().fold(1.0, f64::min);
    if min_gap >= 1.0 {
        return 0;
    }
    let log_r = (-min_gap).ln_1p();
    (tolerance.ln() / log_r).ceil().max(0.0) as usize
}

/// `max_k |λ_k|^D`, evaluated from the boundary gaps.
pub fn tail_bound(seq: &DiscSequence, degree: usize) -> f64 {
    let min_gap = seq.gaps().into_iter().fold(1.0, f64::min);
    if min_gap >= 1.0 {
        return 0.0;
    }
    (degree as f64 * (-min_gap).ln_1p()).exp()
}

/// Minimal-norm interpolant with the default tail tolerance.
pub fn interpolate(seq: &DiscSequence, target: &[Complex64], degree: Degree) -> Result<HardyPoly> {
    interpolate_with_tolerance(seq, target, degree, DEFAULT_TAIL_TOLERANCE)
}

/// Truncation to degree `D` of `f = Σ_j a_j κ_j` where `G a = target`.
pub fn interpolate_with_tolerance(
    seq: &DiscSequence,
    target: &[Complex64],
    degree: Degree,
    tail_tolerance: f64,
) -> Result<HardyPoly> {
    if target.len() != seq.len() {
        return Err(Error::Dimension {
            expected: seq.len(),
            found: target.len(),
        });
    }
    let degree = match degree {
        Degree::Auto => auto_degree(seq, tail_tolerance),
        Degree::Fixed(d) => {
            let bound = tail_bound(seq, d);
            if bound > tail_tolerance {
                return Err(Error::Tail {
                    degree: d,
                    bound,
                    tolerance: tail_tolerance,
                });
            }
            d
        }
    };
    let gram = kernel_gram(seq)?;
    let a = gram.solve(target)?;
    let weights = seq.co_norms_sqr();
    let conj_values: Vec<Complex64> = seq.values().iter().map(|l| l.conj()).collect();
    let mut powers: Vec<Complex64> = a
        .iter()
        .zip(&weights)
        .map(|(aj, w)| aj * w.sqrt())
        .collect();
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..=degree {
        coeffs.push(powers.iter().sum());
        for (p, l) in powers.iter_mut().zip(&conj_values) {
            *p *= l;
        }
    }
    HardyPoly::new(coeffs)
}
