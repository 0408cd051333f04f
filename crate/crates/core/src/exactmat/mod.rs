//! Exact integer/rational symmetric-matrix kernel.

mod hnf;
pub mod linalg;
mod matrix;
mod psd;

pub use hnf::{integer_rowspace_basis, integer_rowspace_basis_i64};
pub use matrix::IntSymMatrix;
pub(crate) use matrix::dot;
pub use psd::{determinant, lambda_min_at_least, lambda_min_bracket, psd_check, psd_check_int, PsdVerdict};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix has order zero")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
}
