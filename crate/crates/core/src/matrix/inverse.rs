use super::Matrix;
use crate::error::{dims, Error, Result};
use crate::scalar::Field;

/// Explicit inverse by elimination.
///
/// Exact fields use fraction-free Gauss-Jordan (Bareiss-style: every update is
/// `(p·a_ij − a_ik·a_kj) / p_prev`), which keeps integer inputs integral until
/// the final division by the determinant. The float field uses full pivoting
/// and reports `SingularMatrix` when the best pivot falls below
/// `n·ε·max|a_ij|`.
pub fn gauss_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "gauss_inverse",
            expected: "square matrix".into(),
            got: dims(a.rows(), a.cols()),
        });
    }
    if T::KIND.is_exact() {
        fraction_free_inverse(a)
    } else {
        full_pivot_inverse(a)
    }
}

fn fraction_free_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.rows();
    let w = 2 * n;
    // augmented [A | I]
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            row
        })
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&i| !m[i][k].is_zero())
            .ok_or(Error::SingularMatrix)?;
        m.swap(k, pivot_row);
        let pivot = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let factor = m[i][k].clone();
            for j in 0..w {
                let scaled = pivot.mul(&m[i][j]);
                let updated = if factor.is_zero() || m[k][j].is_zero() {
                    scaled
                } else {
                    scaled.sub(&factor.mul(&m[k][j]))
                };
                m[i][j] = if prev.is_one() {
                    updated
                } else {
                    updated.div(&prev)?
                };
            }
        }
        prev = pivot;
    }
    // Left block is now diagonal; divide each row by its diagonal entry.
    let mut out = Matrix::zeros(n, n);
    for (i, row) in m.iter().enumerate() {
        let d = row[i].inv()?;
        for j in 0..n {
            out.set(i, j, row[n + j].mul(&d));
        }
    }
    Ok(out)
}

fn full_pivot_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.rows();
    let abs = |v: &T| v.to_f64().map_or(f64::NAN, f64::abs);
    let scale = a.entries().iter().map(abs).fold(0.0, f64::max);
    let tol = n as f64 * f64::EPSILON * scale;
    let mut m: Vec<Vec<T>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    // col_perm[k] = original column now sitting at position k
    let mut col_perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (mut pr, mut pc, mut best) = (k, k, -1.0);
        for i in k..n {
            for j in k..n {
                let v = abs(&m[i][j]);
                if v > best {
                    (pr, pc, best) = (i, j, v);
                }
            }
        }
        if best.is_nan() || best <= tol || best == 0.0 {
            return Err(Error::SingularMatrix);
        }
        m.swap(k, pr);
        inv.swap(k, pr);
        if pc != k {
            for row in m.iter_mut() {
                row.swap(k, pc);
            }
            col_perm.swap(k, pc);
        }
        let pinv = m[k][k].inv()?;
        for j in 0..n {
            m[k][j] = m[k][j].mul(&pinv);
            inv[k][j] = inv[k][j].mul(&pinv);
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..n {
                m[i][j] = m[i][j].sub(&f.mul(&m[k][j]));
                inv[i][j] = inv[i][j].sub(&f.mul(&inv[k][j]));
            }
        }
    }
    // We inverted A·Q; A^{-1} = Q·(A·Q)^{-1}, i.e. row k goes to row col_perm[k].
    let mut out = Matrix::zeros(n, n);
    for (k, row) in inv.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            out.set(col_perm[k], j, v);
        }
    }
    Ok(out)
}
