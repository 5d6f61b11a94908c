//! Sparse multivariate polynomials, dense linear algebra over fields,
//! constant-coefficient differential operators and matrices of forms.

mod diffop;
mod formmatrix;
mod matrix;
mod poly;
mod ring;
mod text;

pub use diffop::{kernel_of_operators, DiffOp};
pub use formmatrix::{subsets, FormMatrix};
pub use matrix::{Echelon, Matrix};
pub use poly::{Poly, PolyCtx};
pub use ring::{monomials_of_degree, Mono, PolyRing, Registry, MAX_VARS};

use thiserror::Error;

use crate::exactfield::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("a ring may have at most {max} variables, got {0}", max = MAX_VARS)]
    TooManyVariables(usize),
    #[error("block sizes must be positive and sum to the number of variables")]
    BadBlocks,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not skew-symmetric (entry {0},{1})")]
    NotSkew(usize, usize),
    #[error("entry {row},{col} has degree {found:?}, expected {expected:?}")]
    Profile { row: usize, col: usize, expected: Vec<u32>, found: Vec<u32> },
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type PolyResult<T> = Result<T, PolyError>;
