//! Truncated point schemes: multilinearization, point enumeration over
//! prime fields, and the search-tree report.

mod output;
mod solve;
mod system;

use thiserror::Error;

use crate::exactalg::AlgError;
use crate::freealg::PresentationError;

pub use output::{
    solution_from_json, solution_to_csv, solution_to_json, solution_to_markdown, SolutionDocument,
};
pub use solve::{
    brute_force, brute_force_size, enumerate, fibration_report, has_point, p_sup,
    projective_points, FibrationNode, FibrationReport, PSup, PSupValue, SolutionSet, SolveOptions,
    DEFAULT_BRUTE_FORCE_GUARD, DEFAULT_GUARD,
};
pub use system::{
    linearize_top, multilinearize, support_pattern, verify_point, Form, LayerPoint,
    MultilinearSystem, SchemePoint, SymbolicMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("point enumeration needs a prime field, not the rationals")]
    RationalField,
    #[error("{estimate} layer-0 candidates exceed the guard of {guard}")]
    GuardExceeded { estimate: u64, guard: u64 },
    #[error("search abandoned after {budget} nodes")]
    NodeBudgetExceeded { budget: u64 },
    #[error("presentation is only meaningful in characteristic 2, got p = {0}")]
    Char2Only(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient {coefficient} is undefined modulo {p}")]
    CoefficientUndefined { coefficient: String, p: u64 },
    #[error("degree must be at least 1, got {0}")]
    InvalidDegree(usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Algebra(#[from] AlgError),
}
