use std::fmt;

use super::field::Field;
use super::AlgError;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Result of a row reduction.
///
/// `nullspace` holds one vector per free column: that vector has a 1 in its
/// free column, zeros in every other free column, and the negated reduced
/// entries in the pivot columns. This basis is unique for a given kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<E> {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub nullspace: Vec<Vec<E>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        ExactMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Result<Self, AlgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(AlgError::RaggedRow {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(ExactMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix from small integer entries mapped into the field.
    pub fn from_i64(field: F, rows: &[&[i64]]) -> Result<Self, AlgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, converted, cols)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// The submatrix made of the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        ExactMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, AlgError> {
        if v.len() != self.cols {
            return Err(AlgError::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| {
                        self.field.add(&acc, &self.field.mul(a, b))
                    })
            })
            .collect())
    }

    /// Row-reduces a copy of the matrix to reduced echelon form and
    /// returns its rank, pivot columns and the canonical nullspace basis.
    pub fn rref(&self) -> Rref<F::Elem> {
        let mut work = self.clone();
        let pivots = work.reduce_in_place();
        let rank = pivots.len();
        let nullspace = work.nullspace_from_reduced(&pivots);
        Rref {
            rank,
            pivots,
            nullspace,
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce_in_place().len()
    }

    /// In-place Gauss-Jordan elimination. Returns the pivot columns; the
    /// first `pivots.len()` rows hold the reduced echelon form afterwards.
    pub fn reduce_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(found, pivot_row);
            let inv = f.inv(self.get(pivot_row, col)).expect("pivot is nonzero");
            for c in col..cols {
                let v = f.mul(self.get(pivot_row, c), &inv);
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..cols {
                    let v = f.sub(self.get(r, c), &f.mul(&factor, self.get(pivot_row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn nullspace_from_reduced(&self, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(self.get(r, free));
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<F::Elem, AlgError> {
        if self.rows != self.cols {
            return Err(AlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut acc = f.one();
        for col in 0..n {
            let Some(found) = (col..n).find(|&r| !f.is_zero(m.get(r, col))) else {
                return Ok(f.zero());
            };
            if found != col {
                m.swap_rows(found, col);
                acc = f.neg(&acc);
            }
            let pivot = m.get(col, col).clone();
            acc = f.mul(&acc, &pivot);
            let inv = f.inv(&pivot).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(acc)
    }
}

impl<F: Field> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, RationalField};
    use num_traits::Zero;

    #[test]
    fn zero_matrix_has_full_nullspace() {
        let f5 = PrimeField::new(5).unwrap();
        let m = ExactMatrix::zeros(f5, 3, 3);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.nullspace.len(), 3);
        assert_eq!(r.nullspace[0], vec![1, 0, 0]);
    }

    #[test]
    fn empty_matrix() {
        let f = PrimeField::new(3).unwrap();
        let m = ExactMatrix::zeros(f, 0, 4);
        let r = m.rref();
        assert_eq!(r.rank, 0);
        assert_eq!(r.nullspace.len(), 4);
        assert_eq!(ExactMatrix::zeros(f, 0, 0).det().unwrap(), 1);
    }

    #[test]
    fn fk3_matrix_at_all_ones_has_rank_three() {
        // rows: E3, E4, E1_12, E1_13, E1_23 with (x12, x13, x23) = (1, 1, 1)
        let f5 = PrimeField::new(5).unwrap();
        let m = ExactMatrix::from_i64(
            f5,
            &[
                &[1, -1, -1],
                &[-1, -1, 1],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
            ],
        )
        .unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 3);
        assert!(r.nullspace.is_empty());
    }

    #[test]
    fn reduced_fk4_matrix_at_all_ones() {
        // Hand elimination: rows 1..4 are already triangular with diagonal
        // (1, 2, 1, 2) after reordering, so the rank is 4 over F_7.
        let f7 = PrimeField::new(7).unwrap();
        let m = ExactMatrix::from_i64(
            f7,
            &[
                &[1, 0, 1, 0],
                &[0, 0, 2, 0],
                &[0, 1, 0, 1],
                &[0, 0, 0, 2],
                &[1, 0, 0, -1],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn nullspace_is_canonical() {
        let f = PrimeField::new(7).unwrap();
        let m = ExactMatrix::from_i64(f, &[&[1, 2, 3], &[2, 4, 6]]).unwrap();
        let r = m.rref();
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.nullspace, vec![vec![5, 1, 0], vec![4, 0, 1]]);
        for v in &r.nullspace {
            assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn determinants() {
        let q = RationalField;
        assert_eq!(ExactMatrix::identity(q, 4).det().unwrap(), q.one());
        let d = ExactMatrix::from_i64(q, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]).unwrap();
        assert_eq!(d.det().unwrap(), q.from_i64(30));
        // M(1,2,3) of the E_3 matrix at (x12, x13, x23) = (1, 0, 0):
        // rows (0,-1,0), (0,0,1), (1,0,0); cofactor expansion along the
        // first column gives 1 * det([[-1,0],[0,1]]) = -1.
        let m = ExactMatrix::from_i64(q, &[&[0, -1, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap();
        let det = m.det().unwrap();
        assert!(!det.is_zero());
        assert_eq!(det, q.from_i64(-1));
        let rect = ExactMatrix::zeros(q, 2, 3);
        assert_eq!(rect.det(), Err(AlgError::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let f = PrimeField::new(2).unwrap();
        assert!(ExactMatrix::from_rows(f, vec![vec![1, 0], vec![1]], 2).is_err());
    }
}
