//! Exact arithmetic over the Gaussian rationals ℚ(i) and dense linear algebra on top of it.

mod matrix;
mod scalar;
mod sparse;

pub use matrix::{
    add_vec, dot, in_span, is_zero_vec, normalize_first, scale_vec, span_basis, span_dim, sub_vec, Echelon,
    ExactMatrix, Vector,
};
pub use scalar::GaussianRational;
pub use sparse::SparseSystem;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse Gaussian rational from {0:?}")]
    Parse(String),
    #[error("expected {} entries for a {}x{} matrix, found {found}", .expected.0 * .expected.1, .expected.0, .expected.1)]
    Shape { expected: (usize, usize), found: usize },
}

/// Shorthand for an integer Gaussian rational `re + im·i`.
pub fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}
