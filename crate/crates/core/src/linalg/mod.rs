//! Exact sparse linear algebra over [`Rational`]: rank, nullspace, span
//! membership and coordinate projection.

mod sparse;

pub use sparse::{Echelon, SparseMatrix, SparseRow};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate {index} out of range for dimension {dimension}")]
    CoordinateOutOfRange { index: usize, dimension: usize },
    #[error("entry ({row}, {col}) outside a {n_rows}x{n_cols} matrix")]
    EntryOutOfBounds { row: usize, col: usize, n_rows: usize, n_cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub fn rank(matrix: &SparseMatrix) -> usize {
    Echelon::compute(matrix).rank()
}

pub fn nullspace(matrix: &SparseMatrix) -> VectorBasis {
    VectorBasis {
        dimension: matrix.n_cols(),
        vectors: Echelon::compute(matrix).nullspace(),
    }
}

/// Linearly independent dense vectors in a space of fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorBasis {
    dimension: usize,
    vectors: Vec<Vec<Rational>>,
}

impl VectorBasis {
    pub fn empty(dimension: usize) -> Self {
        VectorBasis { dimension, vectors: Vec::new() }
    }

    /// Accepts `vectors` only if they are independent.
    pub fn from_independent(dimension: usize, vectors: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let m = stack(dimension, &vectors)?;
        if rank(&m) != vectors.len() {
            return Err(LinalgError::Dependent);
        }
        Ok(VectorBasis { dimension, vectors })
    }

    pub(crate) fn from_independent_unchecked(dimension: usize, vectors: Vec<Vec<Rational>>) -> Self {
        VectorBasis { dimension, vectors }
    }

    /// The reduced echelon basis of the span of `vectors`.
    pub fn span_of(dimension: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        let m = stack(dimension, vectors)?;
        let echelon = Echelon::compute(&m);
        let vectors = echelon
            .pivot_rows()
            .iter()
            .map(|(_, row)| {
                let mut v = vec![Rational::zero(); dimension];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        Ok(VectorBasis { dimension, vectors })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn as_matrix(&self) -> SparseMatrix {
        stack(self.dimension, &self.vectors).expect("basis vectors have the ambient dimension")
    }

    /// True iff `v` is a rational combination of the basis vectors.
    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinalgError> {
        if v.len() != self.dimension {
            return Err(LinalgError::DimensionMismatch { expected: self.dimension, found: v.len() });
        }
        if v.iter().all(Rational::is_zero) {
            return Ok(true);
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        Ok(rank(&stack(self.dimension, &rows)?) == self.vectors.len())
    }

    /// Dimension of the image of the span under projection onto `coords`.
    pub fn project_dimension(&self, coords: &BTreeSet<usize>) -> Result<usize, LinalgError> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.dimension) {
            return Err(LinalgError::CoordinateOutOfRange { index: bad, dimension: self.dimension });
        }
        Ok(rank(&self.project(coords)))
    }

    /// The basis vectors restricted to `coords` (renumbered in increasing order), as matrix rows.
    pub fn project(&self, coords: &BTreeSet<usize>) -> SparseMatrix {
        let rows = self
            .vectors
            .iter()
            .map(|v| {
                coords
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !v[c].is_zero())
                    .map(|(k, &c)| (k, v[c].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix::from_sparse_rows(coords.len(), rows).expect("projected rows are well formed")
    }
}

pub fn in_span(v: &[Rational], basis: &VectorBasis) -> Result<bool, LinalgError> {
    basis.contains(v)
}

pub fn project_dimension(basis: &VectorBasis, coords: &BTreeSet<usize>) -> Result<usize, LinalgError> {
    basis.project_dimension(coords)
}

fn stack(dimension: usize, vectors: &[Vec<Rational>]) -> Result<SparseMatrix, LinalgError> {
    SparseMatrix::from_dense(dimension, vectors)
}
