//! Dense matrices over a [`Field`] with exact Gaussian elimination.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub(crate) fn check_field(expected: Field, x: &FieldElement) -> Result<()> {
    let found = x.field();
    if found == expected {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: expected,
            right: found,
        })
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn dot(field: Field, a: &[FieldElement], b: &[FieldElement]) -> Result<FieldElement> {
    check_dim(a.len(), b.len())?;
    a.iter()
        .zip(b)
        .try_fold(field.zero(), |acc, (x, y)| acc.add(&x.mul(y)?))
}

pub(crate) fn zip_with<F>(a: &[FieldElement], b: &[FieldElement], f: F) -> Result<Vec<FieldElement>>
where
    F: Fn(&FieldElement, &FieldElement) -> Result<FieldElement>,
{
    check_dim(a.len(), b.len())?;
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

pub(crate) fn scale_all(s: &FieldElement, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
    a.iter().map(|x| s.mul(x)).collect()
}

/// Row-major `rows × cols` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        for x in &data {
            check_field(field, x)?;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            check_dim(cols, row.len())?;
            data.extend(row);
        }
        Matrix::new(field, n, cols, data)
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows)
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `self · v`.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        check_dim(self.cols, v.len())?;
        (0..self.rows)
            .map(|i| dot(self.field, self.row(i), v))
            .collect()
    }

    /// `vᵀ · self`.
    pub fn apply_left(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.transpose().apply(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_dim(self.cols, other.rows)?;
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        let t = other.transpose();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                data.push(dot(self.field, self.row(i), t.row(j))?);
            }
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if self.field.is_exact() {
            (from..self.rows).find(|&r| !self.get(r, col).is_zero())
        } else {
            (from..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .max_by(|&a, &b| {
                    self.get(a, col)
                        .to_f64()
                        .abs()
                        .total_cmp(&self.get(b, col).to_f64().abs())
                })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Row-reduces `[self | rhs]` in place, returning the determinant of the
    /// square part. On a zero pivot the determinant is zero and the function
    /// returns early.
    fn eliminate(&mut self, rhs: &mut Matrix) -> Result<FieldElement> {
        let n = self.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = self.pivot_row(col, col) else {
                return Ok(self.field.zero());
            };
            if p != col {
                self.swap_rows(p, col);
                rhs.swap_rows(p, col);
                det = det.neg();
            }
            let pivot = self.get(col, col).clone();
            det = det.mul(&pivot)?;
            let inv = pivot.inv()?;
            for j in 0..self.cols {
                let v = self.get(col, j).mul(&inv)?;
                self.set(col, j, v);
            }
            for j in 0..rhs.cols {
                let v = rhs.get(col, j).mul(&inv)?;
                rhs.set(col, j, v);
            }
            for r in 0..n {
                if r == col || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in 0..self.cols {
                    let v = self.get(r, j).sub(&factor.mul(self.get(col, j))?)?;
                    self.set(r, j, v);
                }
                for j in 0..rhs.cols {
                    let v = rhs.get(r, j).sub(&factor.mul(rhs.get(col, j))?)?;
                    rhs.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut a = self.clone();
        let mut rhs = Matrix::zeros(self.field, self.rows, 0);
        a.eliminate(&mut rhs)
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant().is_ok_and(|d| !d.is_zero())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve_matrix(&Matrix::identity(self.field, self.rows))
    }

    /// Solves `self · X = rhs`.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        check_dim(self.rows, rhs.rows)?;
        let mut a = self.clone();
        let mut x = rhs.clone();
        if a.eliminate(&mut x)?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(x)
    }

    /// Solves `self · x = b`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let rhs = Matrix::new(self.field, b.len(), 1, b.to_vec())?;
        Ok(self.solve_matrix(&rhs)?.data)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq((0..self.rows).map(|i| self.row(i)))
    }
}
