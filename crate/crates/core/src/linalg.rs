//! Thin helpers over nalgebra's dense complex factorizations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Singular values in non-increasing order. Always `min(rows, cols)` of them.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Largest singular value; zero for an empty matrix.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(sv: &[f64], rel_tol: f64) -> usize {
    match sv.first() {
        Some(&max) if max > 0.0 => sv.iter().filter(|&&s| s > rel_tol * max).count(),
        _ => 0,
    }
}

/// Scales every nonzero column to unit Euclidean norm. Returns the scaled
/// matrix and the original column norms.
pub fn equilibrate_columns(m: &CMatrix) -> (CMatrix, Vec<f64>) {
    let mut out = m.clone();
    let mut norms = Vec::with_capacity(m.ncols());
    for j in 0..m.ncols() {
        let n = m.column(j).norm();
        if n > 0.0 {
            out.column_mut(j).unscale_mut(n);
        }
        norms.push(n);
    }
    (out, norms)
}

/// Orthonormal basis (as columns) of the numerical null space of `m`:
/// right singular vectors whose singular value is at most `rel_tol * sigma_max`.
pub fn null_space(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return CMatrix::zeros(0, 0);
    }
    // Zero rows do not change the kernel but make nalgebra return a full V.
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rel_tol * sigma_max;
    let picked: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= cutoff || sigma_max == 0.0)
        .collect();
    let mut basis = CMatrix::zeros(cols, picked.len());
    for (out_col, &i) in picked.iter().enumerate() {
        for r in 0..cols {
            basis[(r, out_col)] = v_t[(i, r)].conj();
        }
    }
    basis
}

/// Eigenvalues of a Hermitian matrix in non-decreasing order.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn singular_values_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1.0), c(-3.0), c(2.0)]));
        let sv = singular_values(&m);
        assert_eq!(sv.len(), 3);
        assert!((sv[0] - 3.0).abs() < 1e-14);
        assert!((sv[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn null_space_of_wide_matrix() {
        // [1 1 1] has a two-dimensional kernel.
        let m = CMatrix::from_element(1, 3, c(1.0));
        let k = null_space(&m, 1e-12);
        assert_eq!(k.ncols(), 2);
        let prod = &m * &k;
        assert!(prod.norm() < 1e-14);
        let gram = k.adjoint() * &k;
        assert!((gram - CMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn rank_counts_relative_to_largest() {
        assert_eq!(numerical_rank(&[10.0, 1.0, 1e-12], 1e-10), 2);
        assert_eq!(numerical_rank(&[], 1e-10), 0);
        assert_eq!(numerical_rank(&[0.0, 0.0], 1e-10), 0);
    }
}
