//! Exact linear algebra over `F_ell`: sparse matrices, ranks, kernels and
//! homology ranks of finite windows of chain complexes.

mod complex;
mod field;
mod matrix;

pub use complex::{quasi_iso_check, ChainMapSegment, ComplexSegment, DegreeVerdict};
pub use field::PrimeField;
pub use matrix::{axpy, SparseMatrix, SparseVec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("cannot combine {left:?} with {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("degree {degree} outside window [{lo}, {hi}]")]
    OutOfWindow { degree: i64, lo: i64, hi: i64 },
    #[error("not a chain map: d f != f d out of degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("parse error: {0}")]
    Parse(String),
}
