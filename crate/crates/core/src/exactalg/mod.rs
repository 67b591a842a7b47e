//! Exact arithmetic: prime fields and rationals, dense linear algebra, and
//! sparse commutative polynomials for symbolic determinants.

mod field;
mod matrix;
mod poly;

pub(crate) use field::format_ratio;
pub use field::{is_prime, Field, FieldCtx, PrimeField, RationalField, Scalar};
pub use matrix::{ExactMatrix, Rref};
pub use poly::{sym_det, CommPoly, Monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("symbolic determinant of an empty grid")]
    EmptyGrid,
    #[error("symbolic determinant of size {0} is too large")]
    TooLarge(usize),
}
