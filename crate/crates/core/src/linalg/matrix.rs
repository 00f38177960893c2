use std::fmt;
use std::ops::{Add, Index, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

/// Dense complex matrix stored row-major.
///
/// Every constructor rejects empty shapes and non-finite entries, so any
/// value of this type satisfies `data.len() == rows * cols` with finite data.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

/// Wire form: `{"rows": m, "cols": n, "data": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        let data = j.data.iter().map(|&[re, im]| Complex::new(re, im)).collect();
        ComplexMatrix::new(j.rows, j.cols, data)
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson { rows: m.rows, cols: m.cols, data: m.data.iter().map(|z| [z.re, z.im]).collect() }
    }
}

fn check_finite(data: &[Complex]) -> Result<()> {
    match data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimension(format!("matrix shape {rows}x{cols} must be at least 1x1")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        check_finite(&data)?;
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real entries given row-major.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// Builds a matrix from nested rows. Panics on ragged or empty input; meant
    /// for literals in examples and tests.
    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.as_ref().len(), ncols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self::new(rows.len(), ncols, data).expect("valid matrix literal")
    }

    /// Real-valued counterpart of [`ComplexMatrix::from_rows`].
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let converted: Vec<Vec<Complex>> =
            rows.iter().map(|r| r.as_ref().iter().map(|&x| Complex::new(x, 0.0)).collect()).collect();
        Self::from_rows(&converted)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex>]) -> Result<Self> {
        let ncols = columns.len();
        let nrows = columns.first().map(Vec::len).unwrap_or(0);
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Self::from_fn(nrows, ncols, |i, j| columns[j][i])
    }

    /// Single-column matrix.
    pub fn column_vector(v: &[Complex]) -> Result<Self> {
        Self::new(v.len(), 1, v.to_vec())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diag_real(values: &[f64]) -> Result<Self> {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex::new(values[i], 0.0) } else { ZERO })
    }

    pub fn diag(values: &[Complex]) -> Result<Self> {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i] } else { ZERO })
    }

    /// `e_index` of the standard basis of `C^dim` as a column (0-based index).
    pub fn basis_vector(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidDimension(format!("basis index {index} out of range for dim {dim}")));
        }
        Self::from_fn(dim, 1, |i, _| if i == index { ONE } else { ZERO })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.data[i * self.cols + j]
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: Complex) -> Result<Self> {
        let mut data = self.data.clone();
        data[i * self.cols + j] = value;
        Self::new(self.rows, self.cols, data)
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; m * n];
        for i in 0..m {
            let row = &mut out[i * n..(i + 1) * n];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == ZERO {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(other.row(l)) {
                    *o += a * b;
                }
            }
        }
        Ok(Self { rows: m, cols: n, data: out })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let (m, n) = self.shape();
        let mut data = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in 0..m {
                data.push(self.get(i, j).conj());
            }
        }
        Self { rows: n, cols: m, data }
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let (m, n) = self.shape();
        let mut data = Vec::with_capacity(m * n);
        for j in 0..n {
            for i in 0..m {
                data.push(self.get(i, j));
            }
        }
        Self { rows: n, cols: m, data }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexMatrix {
        self.map(|z| z.conj())
    }

    pub fn trace(&self) -> Result<Complex> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn scale(&self, s: Complex) -> ComplexMatrix {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.map(|z| z * s)
    }

    fn map(&self, f: impl Fn(Complex) -> Complex) -> ComplexMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex, Complex) -> Complex) -> Result<ComplexMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!("shapes {:?} and {:?} differ", self.shape(), other.shape())));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Frobenius norm, i.e. the Hilbert-Schmidt norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖_F`; panics on a shape mismatch.
    pub fn distance(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "distance between different shapes");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖A − A†‖_F`.
    pub fn hermitian_residual(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.distance(&self.adjoint()))
    }

    /// `‖A†A − I‖_F`, the deviation of the columns from an orthonormal family.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("adjoint product is well-shaped");
        let id = Self::identity(self.cols).expect("cols >= 1");
        gram.distance(&id)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (m1, n1) = self.shape();
        let (m2, n2) = other.shape();
        Self::from_fn(m1 + m2, n1 + n2, |i, j| {
            if i < m1 && j < n1 {
                self.get(i, j)
            } else if i >= m1 && j >= n1 {
                other.get(i - m1, j - n1)
            } else {
                ZERO
            }
        })
        .expect("direct sum of valid matrices")
    }

    /// Sub-matrix made of the first `k` columns.
    pub fn leading_columns(&self, k: usize) -> Result<ComplexMatrix> {
        if k == 0 || k > self.cols {
            return Err(Error::InvalidDimension(format!("cannot take {k} of {} columns", self.cols)));
        }
        Self::from_fn(self.rows, k, |i, j| self.get(i, j))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix addition shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix subtraction shape mismatch")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Euclidean inner product `⟨x, y⟩ = Σ x_k conj(y_k)`, linear in `x`.
pub fn inner(x: &[Complex], y: &[Complex]) -> Complex {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[Complex]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_distance(x: &[Complex], y: &[Complex]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}
