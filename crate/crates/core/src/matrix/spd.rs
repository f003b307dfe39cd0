use super::Matrix;
use crate::scalar::Field;

/// Outcome of a symmetric-positive-definite test.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdCertificate {
    pub ok: bool,
    /// 1-based order of the first leading principal minor that is not positive.
    pub failing_minor_index: Option<usize>,
    /// `max |a_ij − a_ji|`; infinite when the defect is not a number
    /// (non-constant rational function entries).
    pub symmetry_defect: f64,
}

/// Symmetry plus positivity of every leading principal minor.
///
/// Exact fields require exact symmetry and take minor signs from
/// fraction-free elimination without pivoting (the k-th Bareiss pivot *is*
/// the k-th leading minor). Floats accept a symmetry defect up to
/// `tol·max(1, ‖A‖_F)` and require positive elimination pivots, which have
/// the same signs as the ratios of consecutive minors.
pub fn is_spd<T: Field>(a: &Matrix<T>, tol: f64) -> SpdCertificate {
    let n = a.rows();
    if !a.is_square() {
        return SpdCertificate {
            ok: false,
            failing_minor_index: None,
            symmetry_defect: f64::INFINITY,
        };
    }

    let mut defect = 0.0f64;
    let mut symmetric = true;
    for i in 0..n {
        for j in i + 1..n {
            let d = a[(i, j)].sub(&a[(j, i)].conj());
            if !d.is_zero() {
                symmetric = false;
                defect = defect.max(d.to_f64().map_or(f64::INFINITY, f64::abs));
            }
        }
    }
    let symmetry_ok = if T::KIND.is_exact() {
        symmetric
    } else {
        defect <= tol * a.norm_f64().max(1.0)
    };

    let failing = if T::KIND.is_exact() {
        first_nonpositive_minor_exact(a)
    } else {
        first_nonpositive_pivot(a)
    };

    SpdCertificate {
        ok: symmetry_ok && failing.is_none(),
        failing_minor_index: failing,
        symmetry_defect: defect,
    }
}

fn first_nonpositive_minor_exact<T: Field>(a: &Matrix<T>) -> Option<usize> {
    let n = a.rows();
    let mut m: Vec<Vec<T>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut prev = T::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        if pivot.is_positive() != Some(true) {
            return Some(k + 1);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = pivot.mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div(&prev).expect("previous pivot is positive");
            }
        }
        prev = pivot;
    }
    None
}

fn first_nonpositive_pivot<T: Field>(a: &Matrix<T>) -> Option<usize> {
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|v| v.to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot = m[k][k];
        if pivot.is_nan() || pivot <= 0.0 {
            return Some(k + 1);
        }
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            for j in k + 1..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RatFun, Rational};

    #[test]
    fn identity_is_spd() {
        let c = is_spd(&Matrix::<Rational>::identity(5), 0.0);
        assert!(c.ok);
        assert_eq!(c.failing_minor_index, None);
        assert_eq!(c.symmetry_defect, 0.0);
    }

    #[test]
    fn indefinite_fails_at_second_minor() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 2], &[2, 1]]).unwrap();
        let c = is_spd(&a, 0.0);
        assert!(!c.ok);
        assert_eq!(c.failing_minor_index, Some(2));
        let f = Matrix::<f64>::from_i64_rows(&[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(is_spd(&f, 1e-9).failing_minor_index, Some(2));
    }

    #[test]
    fn asymmetric_rejected() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[2, 1], &[0, 2]]).unwrap();
        let c = is_spd(&a, 1.0);
        assert!(!c.ok);
        assert_eq!(c.symmetry_defect, 1.0);
        assert_eq!(c.failing_minor_index, None);
    }

    #[test]
    fn float_symmetry_tolerance() {
        let a = Matrix::<f64>::from_rows(vec![vec![2.0, 1.0 + 1e-13], vec![1.0, 2.0]]).unwrap();
        assert!(is_spd(&a, 1e-9).ok);
        assert!(!is_spd(&a, 0.0).ok);
    }

    #[test]
    fn ratfun_constant_weight() {
        assert!(is_spd(&Matrix::<RatFun>::identity(3), 0.0).ok);
        let x = Matrix::from_rows(vec![vec![RatFun::x()]]).unwrap();
        assert!(!is_spd(&x, 0.0).ok);
    }

    #[test]
    fn gram_plus_identity() {
        let b = Matrix::<Rational>::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 0]]).unwrap();
        let g = b
            .conj_transpose()
            .matmul(&b)
            .unwrap()
            .add(&Matrix::identity(3))
            .unwrap();
        assert!(is_spd(&g, 0.0).ok);
    }
}
