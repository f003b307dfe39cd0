//! Dense row-major matrices over a [`Field`].

mod inverse;
mod spd;

use std::fmt;
use std::ops::Index;

use crate::error::{dims, Error, Result};
use crate::scalar::Field;

pub use inverse::gauss_inverse;
pub use spd::{is_spd, SpdCertificate};

/// Dense matrix stored row-major.
///
/// Zero-sized shapes are allowed so that empty factorizations (rank 0) and
/// the empty prefix of a column sweep have a representation; the text format
/// only ever produces positive dimensions.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::new",
                expected: format!("{} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    op: "Matrix::from_rows",
                    expected: format!("{c} entries in row {}", i + 1),
                    got: row.len().to_string(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Integer-valued matrix, convenient for fixtures and tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// `s·I_n`.
    pub fn scalar_identity(n: usize, s: &T) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { s.clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn map<U: Field>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                expected: dims(self.rows, self.cols),
                got: dims(other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(Field::neg)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.mul(s))
    }

    /// Matrix product in the field: `C[i][j] = Σ_k A[i][k]·B[k][j]`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                expected: format!("{} rows on the right", self.cols),
                got: dims(other.rows, other.cols),
            });
        }
        let (n, p) = (self.rows, other.cols);
        let mut data = vec![T::zero(); n * p];
        for i in 0..n {
            let out = &mut data[i * p..(i + 1) * p];
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(k)) {
                    if !b.is_zero() {
                        *o = o.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(Matrix {
            rows: n,
            cols: p,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `A^*`: transpose with entrywise conjugation.
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Column `j` (0-based) as an m×1 matrix.
    pub fn take_col(&self, j: usize) -> Result<Self> {
        if j >= self.cols {
            return Err(Error::IndexOutOfRange {
                op: "take_col",
                index: j,
                limit: self.cols,
            });
        }
        Ok(Self::from_fn(self.rows, 1, |i, _| self.get(i, j).clone()))
    }

    /// The first `k` columns.
    pub fn take_cols(&self, k: usize) -> Result<Self> {
        if k > self.cols {
            return Err(Error::IndexOutOfRange {
                op: "take_cols",
                index: k,
                limit: self.cols,
            });
        }
        Ok(Self::from_fn(self.rows, k, |i, j| self.get(i, j).clone()))
    }

    /// Leading principal k×k submatrix.
    pub fn leading_principal(&self, k: usize) -> Result<Self> {
        if k > self.rows || k > self.cols {
            return Err(Error::IndexOutOfRange {
                op: "leading_principal",
                index: k,
                limit: self.rows.min(self.cols),
            });
        }
        Ok(Self::from_fn(k, k, |i, j| self.get(i, j).clone()))
    }

    /// First `k-1` entries of column `k` (1-based `k`): the border `l_k` of the
    /// leading principal submatrix of order `k`.
    pub fn border_column(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.cols || k > self.rows {
            return Err(Error::IndexOutOfRange {
                op: "border_column",
                index: k,
                limit: self.rows.min(self.cols),
            });
        }
        Ok(Self::from_fn(k - 1, 1, |i, _| self.get(i, k - 1).clone()))
    }

    /// Diagonal entry `(k, k)` with 1-based `k`.
    pub fn corner(&self, k: usize) -> Result<T> {
        if k == 0 || k > self.cols || k > self.rows {
            return Err(Error::IndexOutOfRange {
                op: "corner",
                index: k,
                limit: self.rows.min(self.cols),
            });
        }
        Ok(self.get(k - 1, k - 1).clone())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                expected: format!("{} rows", self.rows),
                got: dims(other.rows, other.cols),
            });
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                expected: format!("{} columns", self.cols),
                got: dims(other.rows, other.cols),
            });
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Frobenius norm. Only defined over the float field; exact fields
    /// report exact zero/nonzero instead.
    pub fn fro_norm(&self) -> Result<f64> {
        if T::KIND.is_exact() {
            return Err(Error::UnsupportedField {
                op: "fro_norm",
                field: T::KIND.name(),
            });
        }
        Ok(self.norm_f64())
    }

    /// Frobenius norm of the numeric values; non-constant entries count as NaN.
    pub(crate) fn norm_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|a| a.to_f64().unwrap_or(f64::NAN))
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Field> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|a| a.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)).take(self.rows))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type Q = Matrix<Rational>;

    fn q(rows: &[&[i64]]) -> Q {
        Q::from_i64_rows(rows).unwrap()
    }

    /// Independent triple-loop product.
    fn naive_matmul(a: &Q, b: &Q) -> Q {
        let mut c = Q::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = Rational::zero();
                for k in 0..a.cols() {
                    s = s.add(&a[(i, k)].mul(&b[(k, j)]));
                }
                c.set(i, j, s);
            }
        }
        c
    }

    #[test]
    fn identity_product() {
        let x = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(Q::identity(3).matmul(&x).unwrap(), x);
    }

    #[test]
    fn inner_product() {
        assert_eq!(
            q(&[&[1, 2]]).matmul(&q(&[&[3], &[4]])).unwrap(),
            q(&[&[11]])
        );
    }

    #[test]
    fn matmul_dimension_mismatch() {
        assert!(matches!(
            q(&[&[1, 2]]).matmul(&q(&[&[1, 2]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn conj_transpose_basics() {
        let a = q(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.conj_transpose(), q(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.conj_transpose().conj_transpose(), a);
        assert_eq!(q(&[&[1], &[2], &[3]]).conj_transpose().shape(), (1, 3));
    }

    #[test]
    fn block_helpers() {
        let n = q(&[&[4, 1, 2], &[1, 5, 3], &[2, 3, 6]]);
        assert_eq!(n.leading_principal(3).unwrap(), n);
        assert_eq!(n.leading_principal(2).unwrap(), q(&[&[4, 1], &[1, 5]]));
        assert_eq!(n.border_column(3).unwrap(), q(&[&[2], &[3]]));
        assert_eq!(n.border_column(1).unwrap().shape(), (0, 1));
        assert_eq!(n.corner(3).unwrap(), Rational::from_i64(6));
        assert!(matches!(n.corner(4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(n.take_col(3), Err(Error::IndexOutOfRange { .. })));
        let v = q(&[&[1, 2, 3], &[4, 5, 6]])
            .vstack(&q(&[&[7, 8, 9]]))
            .unwrap();
        assert_eq!(v.shape(), (3, 3));
        assert!(q(&[&[1, 2]]).vstack(&q(&[&[1]])).is_err());
    }

    #[test]
    fn fro_norm_values() {
        assert_eq!(Matrix::<f64>::zeros(3, 3).fro_norm().unwrap(), 0.0);
        assert_eq!(
            Matrix::<f64>::from_rows(vec![vec![3.0, 4.0]])
                .unwrap()
                .fro_norm()
                .unwrap(),
            5.0
        );
        assert!((Matrix::<f64>::identity(7).fro_norm().unwrap() - 7f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            Q::identity(2).fro_norm(),
            Err(Error::UnsupportedField { .. })
        ));
    }

    fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Q> {
        proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |v| {
            Q::new(rows, cols, v.into_iter().map(Rational::from_i64).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn matmul_matches_naive(a in int_matrix(4, 3), b in int_matrix(3, 2)) {
            prop_assert_eq!(a.matmul(&b).unwrap(), naive_matmul(&a, &b));
        }

        #[test]
        fn product_transpose_law(a in int_matrix(3, 4), b in int_matrix(4, 2)) {
            let lhs = a.matmul(&b).unwrap().conj_transpose();
            let rhs = b.conj_transpose().matmul(&a.conj_transpose()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn hstack_rebuilds_prefix(a in int_matrix(3, 5), k in 1usize..=5) {
            let joined = a.take_cols(k - 1).unwrap().hstack(&a.take_col(k - 1).unwrap()).unwrap();
            prop_assert_eq!(joined, a.take_cols(k).unwrap());
        }
    }
}
