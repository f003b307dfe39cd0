use super::{
    abs_f64, scalar_negligible, scalar_of, vector_negligible, Branch, RecursionConfig,
    WeightPartition,
};
use crate::error::{dims, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Intermediate quantities of one column update.
///
/// Field names follow the Moore-Penrose form; the LM-inverse step stores its own
/// quantities in the matching slots (`v → d`, `d → c`, `d_L†`/`h → b_star`).
#[derive(Debug, Clone, PartialEq)]
pub struct IterationScratch<T> {
    /// `X_{k-1} a_k`, (k−1)×1.
    pub d: Matrix<T>,
    /// Column residual `(I − A_{k-1} X_{k-1}) a_k`, m×1.
    pub c: Matrix<T>,
    /// New last row `b_k^*`, 1×m.
    pub b_star: Matrix<T>,
    /// `δ_k`, only on the zero branch.
    pub delta: Option<T>,
    /// `(I − X_{k-1} A_{k-1}) W_{k-1}^{-1} l_k`, (k−1)×1.
    pub p: Matrix<T>,
    /// `[X_{k-1} a_k + p; −1]`, k×1 (Udwadia zero branch only).
    pub q: Option<Matrix<T>>,
    /// `[X_{k-1}; 0]`, k×m (Udwadia zero branch only).
    pub u: Option<Matrix<T>>,
    pub branch: Branch,
}

fn column_check<T: Field>(a: &Matrix<T>, m: usize, op: &'static str) -> Result<()> {
    if a.shape() != (m, 1) {
        return Err(Error::DimensionMismatch {
            op,
            expected: dims(m, 1),
            got: dims(a.rows(), a.cols()),
        });
    }
    Ok(())
}

/// Quadratic-form zero test scale: `‖v‖² · ‖W‖_F`.
fn form_scale<T: Field>(v: &Matrix<T>, w: &Matrix<T>) -> f64 {
    if T::KIND.is_exact() {
        return 0.0;
    }
    let n = v.norm_f64();
    n * n * w.norm_f64()
}

pub(crate) fn first_column<T: Field>(
    a1: &Matrix<T>,
    left: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<(Matrix<T>, Branch)> {
    let m = left.rows();
    column_check(a1, m, "init_first_column")?;
    if vector_negligible(a1, 0.0, cfg.zero_tol_rel) {
        return Ok((Matrix::zeros(1, m), Branch::Zero));
    }
    let am = a1.conj_transpose().matmul(left)?;
    let form = scalar_of(&am.matmul(a1)?);
    if scalar_negligible(&form, form_scale(a1, left), cfg.zero_tol_rel) {
        return Err(Error::DegenerateWeight { column: 1 });
    }
    Ok((am.scale(&form.inv()?), Branch::Nonzero))
}

/// First column: `X_1 = (a_1^* M a_1)^{-1} a_1^* M` for `a_1 ≠ 0`, the zero
/// row otherwise. `left` is the m×m left weight.
pub fn init_first_column<T: Field>(
    a1: &Matrix<T>,
    left: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<Matrix<T>> {
    first_column(a1, left, cfg).map(|(x, _)| x)
}

fn check_step_shapes<T: Field>(
    x_prev: &Matrix<T>,
    a_prev: &Matrix<T>,
    a_k: &Matrix<T>,
    part: &WeightPartition<T>,
    right_inv_prev: &Matrix<T>,
    left: &Matrix<T>,
    op: &'static str,
) -> Result<usize> {
    let m = left.rows();
    let km1 = x_prev.rows();
    let ok = x_prev.cols() == m
        && a_prev.shape() == (m, km1)
        && part.leading.rows() == km1
        && right_inv_prev.shape() == (km1, km1)
        && left.is_square();
    if !ok {
        return Err(Error::DimensionMismatch {
            op,
            expected: format!("X {km1}x{m}, A_prev {m}x{km1}, weight blocks of order {km1}"),
            got: format!(
                "X {}, A_prev {}, leading {}, inverse {}",
                dims(x_prev.rows(), x_prev.cols()),
                dims(a_prev.rows(), a_prev.cols()),
                dims(part.leading.rows(), part.leading.cols()),
                dims(right_inv_prev.rows(), right_inv_prev.cols()),
            ),
        });
    }
    column_check(a_k, m, op)?;
    Ok(km1 + 1)
}

/// Float zero test scale for `δ_k = q^* W_k q` with `q = [w; −1]`.
fn delta_scale<T: Field>(w: &Matrix<T>, part: &WeightPartition<T>) -> f64 {
    if T::KIND.is_exact() {
        return 0.0;
    }
    let n = w.norm_f64();
    (1.0 + n * n) * (part.leading.norm_f64() + 2.0 * part.border.norm_f64() + abs_f64(&part.corner))
}

fn check_delta<T: Field>(delta: &T, scale: f64, k: usize, cfg: &RecursionConfig) -> Result<()> {
    if scalar_negligible(delta, scale, cfg.zero_tol_rel) {
        return Err(Error::DegenerateDelta { column: k });
    }
    // δ_k is a quadratic form in an SPD weight; a negative exact value means
    // the weight was not positive definite.
    if T::KIND.is_exact() && delta.is_positive() == Some(false) {
        return Err(Error::DegenerateDelta { column: k });
    }
    Ok(())
}

/// Weighted Moore-Penrose update for column k ≥ 2.
///
/// ```text
/// d_k = X_{k-1} a_k
/// c_k = a_k − A_{k-1} d_k
/// b_k^* = (c_k^* M c_k)^{-1} c_k^* M                               if c_k ≠ 0
///       = δ_k^{-1} (d_k^* N_{k-1} − l_k^*) X_{k-1}                 if c_k = 0
/// δ_k  = n_kk + d_k^* N_{k-1} d_k − (d_k^* l_k + l_k^* d_k)
///        − l_k^* (I − X_{k-1}A_{k-1}) N_{k-1}^{-1} l_k
/// X_k  = [X_{k-1} − (d_k + (I − X_{k-1}A_{k-1}) N_{k-1}^{-1} l_k) b_k^* ; b_k^*]
/// ```
///
/// `part` is the k-th bordering of the right weight `N`, `right_inv_prev` is
/// `N_{k-1}^{-1}` and `left` is `M`.
pub fn wang_step<T: Field>(
    x_prev: &Matrix<T>,
    a_prev: &Matrix<T>,
    a_k: &Matrix<T>,
    part: &WeightPartition<T>,
    right_inv_prev: &Matrix<T>,
    left: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<(Matrix<T>, IterationScratch<T>)> {
    let k = check_step_shapes(x_prev, a_prev, a_k, part, right_inv_prev, left, "wang_step")?;
    let tol = cfg.zero_tol_rel;

    let d = x_prev.matmul(a_k)?;
    let c = a_k.sub(&a_prev.matmul(&d)?)?;
    let projector = Matrix::identity(k - 1).sub(&x_prev.matmul(a_prev)?)?;
    let tmp1 = projector.matmul(&right_inv_prev.matmul(&part.border)?)?;

    let (b_star, delta, branch) = if !vector_negligible(&c, a_k.norm_f64(), tol) {
        let cm = c.conj_transpose().matmul(left)?;
        let form = scalar_of(&cm.matmul(&c)?);
        if scalar_negligible(&form, form_scale(&c, left), tol) {
            return Err(Error::DegenerateWeight { column: k });
        }
        (cm.scale(&form.inv()?), None, Branch::Nonzero)
    } else {
        let d_star = d.conj_transpose();
        let l_star = part.border.conj_transpose();
        let dn = d_star.matmul(&part.leading)?;
        let cross = scalar_of(&d_star.matmul(&part.border)?).add(&scalar_of(&l_star.matmul(&d)?));
        let delta = part
            .corner
            .add(&scalar_of(&dn.matmul(&d)?))
            .sub(&cross)
            .sub(&scalar_of(&l_star.matmul(&tmp1)?));
        check_delta(&delta, delta_scale(&d.add(&tmp1)?, part), k, cfg)?;
        let b = dn.sub(&l_star)?.matmul(x_prev)?.scale(&delta.inv()?);
        (b, Some(delta), Branch::Zero)
    };

    let top = x_prev.sub(&d.add(&tmp1)?.matmul(&b_star)?)?;
    let x_k = top.vstack(&b_star)?;
    Ok((
        x_k,
        IterationScratch {
            d,
            c,
            b_star,
            delta,
            p: tmp1,
            q: None,
            u: None,
            branch,
        },
    ))
}

/// LM-inverse update for column k ≥ 2.
///
/// ```text
/// d = (I − A_{k-1} X_{k-1}) a_k
/// p = (I − X_{k-1} A_{k-1}) M_{k-1}^{-1} m̃_k
/// b_k^* = d^* L / (d^* L d)                                  if d ≠ 0
///       = q^* M_k U / (q^* M_k q),  q = [X_{k-1} a_k + p; −1],
///                                   U = [X_{k-1}; 0]          if d = 0
/// X_k = [X_{k-1} − X_{k-1} a_k b_k^* − p b_k^* ; b_k^*]
/// ```
///
/// `part` is the k-th bordering of the right weight `M`, `right_inv_prev`
/// is `M_{k-1}^{-1}`, `right_k` is `M_k` and `left` is `L`.
#[allow(clippy::too_many_arguments)]
pub fn udwadia_step<T: Field>(
    x_prev: &Matrix<T>,
    a_prev: &Matrix<T>,
    a_k: &Matrix<T>,
    part: &WeightPartition<T>,
    right_inv_prev: &Matrix<T>,
    left: &Matrix<T>,
    right_k: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<(Matrix<T>, IterationScratch<T>)> {
    let k = check_step_shapes(
        x_prev,
        a_prev,
        a_k,
        part,
        right_inv_prev,
        left,
        "udwadia_step",
    )?;
    if right_k.shape() != (k, k) {
        return Err(Error::DimensionMismatch {
            op: "udwadia_step",
            expected: dims(k, k),
            got: dims(right_k.rows(), right_k.cols()),
        });
    }
    let m = left.rows();
    let tol = cfg.zero_tol_rel;

    let residual_map = Matrix::identity(m).sub(&a_prev.matmul(x_prev)?)?;
    let d = residual_map.matmul(a_k)?;
    let projector = Matrix::identity(k - 1).sub(&x_prev.matmul(a_prev)?)?;
    let p = projector.matmul(&right_inv_prev.matmul(&part.border)?)?;
    let v = x_prev.matmul(a_k)?;

    let (b_star, delta, q, u, branch) = if !vector_negligible(&d, a_k.norm_f64(), tol) {
        let dl = d.conj_transpose().matmul(left)?;
        let form = scalar_of(&dl.matmul(&d)?);
        if scalar_negligible(&form, form_scale(&d, left), tol) {
            return Err(Error::DegenerateWeight { column: k });
        }
        (dl.scale(&form.inv()?), None, None, None, Branch::Nonzero)
    } else {
        let w = v.add(&p)?;
        let q = w.vstack(&Matrix::new(1, 1, vec![T::one().neg()])?)?;
        let u = x_prev.vstack(&Matrix::zeros(1, m))?;
        let qm = q.conj_transpose().matmul(right_k)?;
        let denom = scalar_of(&qm.matmul(&q)?);
        check_delta(&denom, delta_scale(&w, part), k, cfg)?;
        let h = qm.matmul(&u)?.scale(&denom.inv()?);
        (h, Some(denom), Some(q), Some(u), Branch::Zero)
    };

    let top = x_prev.sub(&v.matmul(&b_star)?)?.sub(&p.matmul(&b_star)?)?;
    let x_k = top.vstack(&b_star)?;
    Ok((
        x_k,
        IterationScratch {
            d: v,
            c: d,
            b_star,
            delta,
            p,
            q,
            u,
            branch,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Matrix<Rational>;

    fn cfg() -> RecursionConfig {
        RecursionConfig::default()
    }

    fn q(rows: &[&[i64]]) -> Q {
        Q::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn first_column_unit_vector() {
        let x = init_first_column(&q(&[&[1], &[0], &[0]]), &Q::identity(3), &cfg()).unwrap();
        assert_eq!(x, q(&[&[1, 0, 0]]));
    }

    #[test]
    fn first_column_zero() {
        let (x, b) = first_column(&Q::zeros(3, 1), &Q::identity(3), &cfg()).unwrap();
        assert_eq!(x, Q::zeros(1, 3));
        assert_eq!(b, Branch::Zero);
    }

    #[test]
    fn first_column_is_left_inverse() {
        let a1 = q(&[&[1], &[2], &[-1]]);
        let m = q(&[&[3, 1, 0], &[1, 4, 1], &[0, 1, 2]]);
        let x = init_first_column(&a1, &m, &cfg()).unwrap();
        assert_eq!(x.matmul(&a1).unwrap(), Q::identity(1));
    }

    #[test]
    fn first_column_degenerate_weight() {
        let a1 = q(&[&[1], &[-1]]);
        let m = q(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            init_first_column(&a1, &m, &cfg()),
            Err(Error::DegenerateWeight { column: 1 })
        ));
    }

    fn identity_setup() -> (Q, Q, Q, WeightPartition<Rational>, Q, Q) {
        let i2 = Q::identity(2);
        let x1 = q(&[&[1, 0]]);
        let a1 = q(&[&[1], &[0]]);
        let a2 = q(&[&[0], &[1]]);
        let part = WeightPartition::of(&i2, 2).unwrap();
        (x1, a1, a2, part, Q::identity(1), i2)
    }

    #[test]
    fn wang_identity_input() {
        let (x1, a1, a2, part, ninv, m) = identity_setup();
        let (x2, s) = wang_step(&x1, &a1, &a2, &part, &ninv, &m, &cfg()).unwrap();
        assert_eq!(s.d, Q::zeros(1, 1));
        assert_eq!(s.c, a2);
        assert_eq!(s.b_star, q(&[&[0, 1]]));
        assert_eq!(s.branch, Branch::Nonzero);
        assert_eq!(x2, Q::identity(2));
    }

    #[test]
    fn udwadia_identity_input() {
        let (x1, a1, a2, part, minv, l) = identity_setup();
        let (x2, s) =
            udwadia_step(&x1, &a1, &a2, &part, &minv, &l, &Q::identity(2), &cfg()).unwrap();
        assert_eq!(s.branch, Branch::Nonzero);
        assert_eq!(x2, Q::identity(2));
    }

    #[test]
    fn dependent_column_takes_zero_branch() {
        // A = [a | 2a], unit weights
        let a1 = q(&[&[1], &[2], &[2]]);
        let a2 = q(&[&[2], &[4], &[4]]);
        let m = Q::identity(3);
        let n = Q::identity(2);
        let x1 = init_first_column(&a1, &m, &cfg()).unwrap();
        let part = WeightPartition::of(&n, 2).unwrap();
        let (xw, sw) = wang_step(&x1, &a1, &a2, &part, &Q::identity(1), &m, &cfg()).unwrap();
        let (xu, su) = udwadia_step(&x1, &a1, &a2, &part, &Q::identity(1), &m, &n, &cfg()).unwrap();
        assert_eq!(sw.branch, Branch::Zero);
        assert_eq!(su.branch, Branch::Zero);
        assert_eq!(sw.delta, su.delta);
        assert!(sw.delta.unwrap() > Rational::from_integer(0.into()));
        assert_eq!(xw, xu);
        // A† of the rank-one [a | 2a] is [a; 2a]^T / (5·9)
        let a = a1.hstack(&a2).unwrap();
        let expected = a
            .conj_transpose()
            .scale(&Rational::new(1.into(), 45.into()));
        assert_eq!(xw, expected);
    }

    #[test]
    fn shape_mismatch_reported() {
        let (x1, a1, _, part, ninv, m) = identity_setup();
        let bad = q(&[&[1], &[2], &[3]]);
        assert!(matches!(
            wang_step(&x1, &a1, &bad, &part, &ninv, &m, &cfg()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
