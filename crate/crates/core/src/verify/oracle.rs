use super::penrose_residuals;
use crate::error::{Error, Result};
use crate::matrix::{gauss_inverse, Matrix};
use crate::scalar::Field;

/// `A = F·G` with `F` the pivot columns of `A` and `G` the nonzero rows of
/// its reduced row echelon form. Exact fields only.
pub fn full_rank_factorize<T: Field>(a: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    if !T::KIND.is_exact() {
        return Err(Error::UnsupportedField {
            op: "full_rank_factorize",
            field: T::KIND.name(),
        });
    }
    let (m, n) = a.shape();
    let mut r: Vec<Vec<T>> = a.iter_rows().map(|row| row.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..n {
        if lead == m {
            break;
        }
        let Some(p) = (lead..m).find(|&i| !r[i][col].is_zero()) else {
            continue;
        };
        r.swap(lead, p);
        let inv = r[lead][col].inv()?;
        for v in r[lead].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..m {
            if i == lead || r[i][col].is_zero() {
                continue;
            }
            let f = r[i][col].clone();
            for j in col..n {
                let v = r[i][j].sub(&f.mul(&r[lead][j]));
                r[i][j] = v;
            }
        }
        pivots.push(col);
        lead += 1;
    }
    let rank = pivots.len();
    let g = Matrix::new(rank, n, r.into_iter().take(rank).flatten().collect())?;
    let f = Matrix::from_fn(m, rank, |i, j| a[(i, pivots[j])].clone());
    Ok((f, g))
}

/// `A_{M,N}^† = N^{-1} G^* (G N^{-1} G^*)^{-1} (F^* M F)^{-1} F^* M`.
///
/// The result is checked against the four defining equations before it is
/// returned; a failed check is reported as `OracleInconsistent`.
pub fn wmp_oracle<T: Field>(a: &Matrix<T>, m: &Matrix<T>, n: &Matrix<T>) -> Result<Matrix<T>> {
    let (rows, cols) = a.shape();
    let (f, g) = full_rank_factorize(a)?;
    let x = if f.cols() == 0 {
        Matrix::zeros(cols, rows)
    } else {
        let ninv = gauss_inverse(n)?;
        let gs = g.conj_transpose();
        let fs_m = f.conj_transpose().matmul(m)?;
        let right_core = gauss_inverse(&g.matmul(&ninv)?.matmul(&gs)?)?;
        let left_core = gauss_inverse(&fs_m.matmul(&f)?)?;
        ninv.matmul(&gs)?
            .matmul(&right_core)?
            .matmul(&left_core)?
            .matmul(&fs_m)?
    };
    let res = penrose_residuals(a, &x, m, n)?;
    if !res.passes(0.0) {
        return Err(Error::OracleInconsistent(format!(
            "residuals {} {} {} {}",
            res.r1, res.r2, res.r3, res.r4
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type Q = Matrix<Rational>;

    #[test]
    fn identity_factorization() {
        let (f, g) = full_rank_factorize(&Q::identity(3)).unwrap();
        assert_eq!(f, Q::identity(3));
        assert_eq!(g, Q::identity(3));
    }

    #[test]
    fn rank_one_factorization() {
        let a = Q::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        let (f, g) = full_rank_factorize(&a).unwrap();
        assert_eq!(f, Q::from_i64_rows(&[&[1], &[2]]).unwrap());
        assert_eq!(g, Q::from_i64_rows(&[&[1, 2]]).unwrap());
    }

    #[test]
    fn zero_matrix_has_empty_factorization() {
        let (f, g) = full_rank_factorize(&Q::zeros(2, 3)).unwrap();
        assert_eq!(f.shape(), (2, 0));
        assert_eq!(g.shape(), (0, 3));
        let x = wmp_oracle(&Q::zeros(2, 3), &Q::identity(2), &Q::identity(3)).unwrap();
        assert_eq!(x, Q::zeros(3, 2));
    }

    #[test]
    fn float_unsupported() {
        assert!(matches!(
            full_rank_factorize(&Matrix::<f64>::identity(2)),
            Err(Error::UnsupportedField { .. })
        ));
    }

    #[test]
    fn unit_column() {
        let a = Q::from_i64_rows(&[&[1], &[0], &[0]]).unwrap();
        let x = wmp_oracle(&a, &Q::identity(3), &Q::identity(1)).unwrap();
        assert_eq!(x, a.transpose());
    }

    #[test]
    fn identity_oracle() {
        let i = Q::identity(4);
        assert_eq!(wmp_oracle(&i, &i, &i).unwrap(), i);
    }

    /// Rank by the largest nonvanishing minor, computed by cofactor expansion.
    fn minor_rank(a: &Q) -> usize {
        fn det(a: &Q, rows: &[usize], cols: &[usize]) -> Rational {
            if rows.is_empty() {
                return <Rational as Field>::one();
            }
            let mut acc = <Rational as Field>::zero();
            for (k, &c) in cols.iter().enumerate() {
                let v = &a[(rows[0], c)];
                if v.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = Field::mul(v, &det(a, &rows[1..], &rest));
                acc = if k % 2 == 0 {
                    Field::add(&acc, &term)
                } else {
                    Field::sub(&acc, &term)
                };
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let (m, n) = a.shape();
        for k in (1..=m.min(n)).rev() {
            for rs in subsets(m, k) {
                for cs in subsets(n, k) {
                    if !det(a, &rs, &cs).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn factorization_reproduces_matrix(
            entries in proptest::collection::vec(-2i64..=2, 20),
            rank_cut in 0usize..4,
        ) {
            // 5×4, some rows forced to combinations of others
            let mut rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            for i in (5 - rank_cut.min(4))..5 {
                rows[i] = rows[0].iter().zip(&rows[1]).map(|(a, b)| a - 2 * b).collect();
            }
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let a = Q::from_i64_rows(&refs).unwrap();
            let (f, g) = full_rank_factorize(&a).unwrap();
            prop_assert_eq!(f.cols(), minor_rank(&a));
            prop_assert_eq!(f.matmul(&g).unwrap(), a);
        }
    }
}
