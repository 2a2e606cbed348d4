//! Dense matrices of polynomials and index-based permutation matrices.
//!
//! Matrices here are small (desk scale) but must be exact, so entries are
//! [`Polynomial`] values and every operation is carried out in the ring.
//! Permutation matrices are stored as index maps and applied by moving
//! entries, never by dense multiplication.

use std::fmt;
use std::ops::Index;

use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    DimensionMismatch {
        operation: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    ShapeMismatch {
        rows: usize,
        cols: usize,
        entries: usize,
    },
    NotAPermutation,
    EmptyMatrix,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::DimensionMismatch { operation, left, right } => write!(
                f,
                "dimension mismatch in {operation}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            MatrixError::ShapeMismatch { rows, cols, entries } => write!(
                f,
                "{rows}x{cols} matrix needs {} entries, got {entries}",
                rows * cols
            ),
            MatrixError::NotAPermutation => write!(f, "index image is not a bijection"),
            MatrixError::EmptyMatrix => write!(f, "matrix must have at least one row and column"),
        }
    }
}

impl std::error::Error for MatrixError {}

/// A dense rows x cols matrix of polynomials, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch { rows, cols, entries: entries.len() });
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_matrix(&Polynomial::one(), n)
    }

    /// `f * I_n`.
    pub fn scalar_matrix(f: &Polynomial, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { f.clone() } else { Polynomial::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| -p).collect(),
        }
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                operation: "mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = PolyMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.entries[i * other.cols + j];
                    *cell = &*cell + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product: each entry `a_ij` of `self` is replaced by the
    /// block `a_ij * other`.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = vec![Polynomial::zero(); rows * cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        let b = other.get(r, c);
                        if b.is_zero() {
                            continue;
                        }
                        entries[(i * other.rows + r) * cols + (j * other.cols + c)] = a * b;
                    }
                }
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    /// Block diagonal `[self, 0; 0, other]`.
    pub fn direct_sum(&self, other: &PolyMatrix) -> PolyMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        PolyMatrix::from_fn(rows, cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                Polynomial::zero()
            }
        })
    }

    /// Assembles `[a, b; c, d]`. All four blocks must have matching edges.
    pub fn from_blocks(
        a: &PolyMatrix,
        b: &PolyMatrix,
        c: &PolyMatrix,
        d: &PolyMatrix,
    ) -> Result<PolyMatrix, MatrixError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(MatrixError::DimensionMismatch {
                operation: "from_blocks",
                left: (a.rows, a.cols),
                right: (d.rows, d.cols),
            });
        }
        Ok(PolyMatrix::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - a.cols).clone(),
                (false, true) => c.get(i - a.rows, j).clone(),
                (false, false) => d.get(i - a.rows, j - a.cols).clone(),
            }
        }))
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |i, j| self.get(row0 + i, col0 + j).clone())
    }

    /// Checks whether this matrix equals `f * I`, returning the first
    /// offending position otherwise.
    pub fn scalar_identity_mismatch(&self, f: &Polynomial) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want_diag = i == j;
                let entry = self.get(i, j);
                let ok = if want_diag { entry == f } else { entry.is_zero() };
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Polynomial;
    fn index(&self, (i, j): (usize, usize)) -> &Polynomial {
        self.get(i, j)
    }
}

impl fmt::Display for PolyMatrix {
    /// Rows separated by newlines, entries by commas, each entry canonical.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// A permutation matrix stored as an index map: `image[i]` is the column
/// holding the 1 in row `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationMatrix {
    image: Vec<usize>,
}

impl PermutationMatrix {
    pub fn identity(n: usize) -> Self {
        PermutationMatrix { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self, MatrixError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &c in &image {
            if c >= n || seen[c] {
                return Err(MatrixError::NotAPermutation);
            }
            seen[c] = true;
        }
        Ok(PermutationMatrix { image })
    }

    /// The perfect shuffle `S(m, n)`, the mn x mn permutation with ones at
    /// `(a*m + k, k*n + a)` for `k < m`, `a < n`. For square `A` (m x m) and
    /// `B` (n x n) it satisfies `S (A kron B) S^T = B kron A`.
    pub fn perfect_shuffle(m: usize, n: usize) -> Self {
        let mut image = vec![0; m * n];
        for a in 0..n {
            for k in 0..m {
                image[a * m + k] = k * n + a;
            }
        }
        PermutationMatrix { image }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// Transpose, which for a permutation matrix is also the inverse.
    pub fn transpose(&self) -> Self {
        let mut image = vec![0; self.image.len()];
        for (i, &c) in self.image.iter().enumerate() {
            image[c] = i;
        }
        PermutationMatrix { image }
    }

    /// Matrix product `self * other` as permutations.
    pub fn compose(&self, other: &PermutationMatrix) -> Result<Self, MatrixError> {
        if self.size() != other.size() {
            return Err(MatrixError::DimensionMismatch {
                operation: "compose",
                left: (self.size(), self.size()),
                right: (other.size(), other.size()),
            });
        }
        Ok(PermutationMatrix {
            image: self.image.iter().map(|&k| other.image[k]).collect(),
        })
    }

    pub fn kron(&self, other: &PermutationMatrix) -> Self {
        let n = other.size();
        let mut image = Vec::with_capacity(self.size() * n);
        for &a in &self.image {
            for &b in &other.image {
                image.push(a * n + b);
            }
        }
        PermutationMatrix { image }
    }

    pub fn direct_sum(&self, other: &PermutationMatrix) -> Self {
        let off = self.size();
        let image = self
            .image
            .iter()
            .copied()
            .chain(other.image.iter().map(|&c| c + off))
            .collect();
        PermutationMatrix { image }
    }

    /// `P * A`: row `i` of the result is row `image[i]` of `A`.
    pub fn apply_left(&self, a: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.size() != a.rows() {
            return Err(MatrixError::DimensionMismatch {
                operation: "apply_left",
                left: (self.size(), self.size()),
                right: (a.rows(), a.cols()),
            });
        }
        Ok(PolyMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(self.image[i], j).clone()))
    }

    /// `A * P`: column `j` of the result is column `inverse(j)` of `A`.
    pub fn apply_right(&self, a: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.size() != a.cols() {
            return Err(MatrixError::DimensionMismatch {
                operation: "apply_right",
                left: (a.rows(), a.cols()),
                right: (self.size(), self.size()),
            });
        }
        let inv = self.transpose();
        Ok(PolyMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, inv.image[j]).clone()))
    }

    /// `P * A * P^T`, computed entirely by index moves.
    pub fn conjugate(&self, a: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.size() != a.rows() || self.size() != a.cols() {
            return Err(MatrixError::DimensionMismatch {
                operation: "conjugate",
                left: (self.size(), self.size()),
                right: (a.rows(), a.cols()),
            });
        }
        Ok(PolyMatrix::from_fn(a.rows(), a.cols(), |i, j| {
            a.get(self.image[i], self.image[j]).clone()
        }))
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        let n = self.size();
        PolyMatrix::from_fn(n, n, |i, j| {
            if self.image[i] == j {
                Polynomial::one()
            } else {
                Polynomial::zero()
            }
        })
    }
}
