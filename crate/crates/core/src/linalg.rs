//! Dense exact linear algebra over a single [`Field`].
//!
//! Vectors are plain `Vec<Scalar>` coordinate lists; the free functions at
//! the bottom of this module do the vector arithmetic used everywhere else.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::scalar::{Field, Scalar};

/// Row-major dense matrix. Column `j` holds the image of the `j`-th basis
/// vector, so `m.mul_vec(x)` applies the map to coordinates `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        let mut l = f.debug_list();
        for r in 0..self.rows {
            let row: Vec<alloc::string::String> =
                self.row(r).iter().map(|s| alloc::string::ToString::to_string(s)).collect();
            l.entry(&row);
        }
        l.finish()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length and
    /// every entry must belong to `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    c
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(
                        alloc::string::ToString::to_string(&s.field()),
                        alloc::string::ToString::to_string(&field),
                    ));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    /// Like [`Matrix::from_rows`] with an explicit shape, so that `0 x n`
    /// and `n x 0` matrices keep their column count.
    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(s) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(
                alloc::string::ToString::to_string(&s.field()),
                alloc::string::ToString::to_string(&field),
            ));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Integer matrix, mostly for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    /// Matrix whose columns are the given coordinate vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, s) in col.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert_eq!(s.field(), self.field, "matrix entry from a different field");
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a coordinate vector. Panics on length mismatch.
    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols, "vector length does not match matrix");
        let mut out = zero_vec(self.field, self.rows);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * xj;
                }
            }
        }
        out
    }

    fn zip(&self, other: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Reduced row echelon form and the pivot columns. Pivots are chosen as
    /// the first nonzero entry scanning columns left to right.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let pivot_entry = m.data[r * m.cols + j].clone();
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &(&factor * &pivot_entry);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the null space.
    pub fn kernel(&self) -> KernelBasis {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut raw = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vec(self.field, self.cols);
            v[f] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f);
            }
            raw.push(v);
        }
        KernelBasis::canonical(self.field, self.cols, raw)
    }

    /// One solution of `self * x = b`, free variables set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, Error> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..b.cols {
                aug.set(i, self.cols + j, b.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let x = self
            .solve(&Matrix::identity(self.field, n))
            .map_err(|_| Error::Singular)?;
        if self.rank() < n {
            return Err(Error::Singular);
        }
        Ok(x)
    }

    /// Re-expresses every entry in another field (see [`Field::convert`]).
    pub fn convert(&self, field: Field) -> Result<Matrix, Error> {
        let data = self
            .data
            .iter()
            .map(|s| field.convert(s))
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_flat(field, self.rows, self.cols, data)
    }
}

/// A canonical basis of a null space: the rows of the reduced echelon form of
/// any spanning set, so equal subspaces yield identical bases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KernelBasis {
    pub ambient: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

impl KernelBasis {
    /// Canonical basis of the span of `vectors` inside `field^ambient`.
    pub fn canonical(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return KernelBasis {
                ambient,
                vectors,
            };
        }
        let m = Matrix::from_flat(field, vectors.len(), ambient, vectors.concat())
            .expect("basis vectors share the ambient dimension");
        let (r, pivots) = m.rref();
        KernelBasis {
            ambient,
            vectors: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += a * x`.
pub fn axpy(acc: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    assert_eq!(acc.len(), x.len(), "vector length mismatch");
    if a.is_zero() {
        return;
    }
    for (o, xi) in acc.iter_mut().zip(x) {
        if !xi.is_zero() {
            *o += a * xi;
        }
    }
}

pub fn add_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(x.len(), y.len(), "vector length mismatch");
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(x.len(), y.len(), "vector length mismatch");
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(a: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
    x.iter().map(|b| a * b).collect()
}
