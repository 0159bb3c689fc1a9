//! Numerical toolkit for operator representations of sequences and for
//! frames generated by iterating a diagonal operator on the unit disc.
//!
//! Everything works on finite truncations:
//!
//! * [`disc`]: sequences in the open unit disc, pseudo-hyperbolic distance,
//!   truncated Carleson products and the ratio test.
//! * [`hardy`]: polynomials as truncated `H²(𝔻)` elements, the weighted
//!   evaluation operator and minimal-norm interpolation through the
//!   normalized reproducing-kernel Gram matrix.
//! * [`frames`]: the diagonal system `T e_k = λ_k e_k`, its seed vector `h`,
//!   orbit matrices `{Tⁿh}` and their singular-value frame bounds.
//! * [`repr`]: synthesis operators, the right shift, the restricted norm
//!   of `T f_k = f_{k+1}` and the example families that separate
//!   frame properties from boundedness of `T`.

pub mod disc;
pub mod error;
pub mod frames;
pub mod hardy;
pub mod linalg;
pub mod repr;

pub use error::{Error, Result};
pub use num_complex::Complex64;
