use super::bordered::BorderedInverseState;
use super::steps::{first_column, udwadia_step, wang_step, IterationScratch};
use super::{bordered_inverse_step, Branch, RecursionConfig, WeightPartition};
use crate::error::{dims, Error, Result, WeightSide};
use crate::matrix::{is_spd, Matrix};
use crate::scalar::Field;

/// Everything one column update may read.
pub struct StepInput<'a, T> {
    pub x_prev: &'a Matrix<T>,
    pub a_prev: &'a Matrix<T>,
    pub a_k: &'a Matrix<T>,
    /// k-th bordering of the right weight.
    pub part: &'a WeightPartition<T>,
    /// Inverse of the right weight's leading block of order k−1.
    pub right_inv_prev: &'a Matrix<T>,
    pub left: &'a Matrix<T>,
    /// The full right weight.
    pub right: &'a Matrix<T>,
}

/// A column update rule that can be driven by [`sweep`].
pub trait ColumnRecursion {
    const NAME: &'static str;

    fn step<T: Field>(
        input: &StepInput<'_, T>,
        cfg: &RecursionConfig,
    ) -> Result<(Matrix<T>, IterationScratch<T>)>;
}

/// The weighted Moore-Penrose column recursion (`wang`).
#[derive(Debug, Clone, Copy)]
pub struct Wang;

/// The generalized LM-inverse column recursion (`udwadia`).
#[derive(Debug, Clone, Copy)]
pub struct Udwadia;

impl ColumnRecursion for Wang {
    const NAME: &'static str = "wang";

    fn step<T: Field>(
        input: &StepInput<'_, T>,
        cfg: &RecursionConfig,
    ) -> Result<(Matrix<T>, IterationScratch<T>)> {
        wang_step(
            input.x_prev,
            input.a_prev,
            input.a_k,
            input.part,
            input.right_inv_prev,
            input.left,
            cfg,
        )
    }
}

impl ColumnRecursion for Udwadia {
    const NAME: &'static str = "udwadia";

    fn step<T: Field>(
        input: &StepInput<'_, T>,
        cfg: &RecursionConfig,
    ) -> Result<(Matrix<T>, IterationScratch<T>)> {
        let right_k = input.right.leading_principal(input.part.order())?;
        udwadia_step(
            input.x_prev,
            input.a_prev,
            input.a_k,
            input.part,
            input.right_inv_prev,
            input.left,
            &right_k,
            cfg,
        )
    }
}

/// Result of a full column sweep.
#[derive(Debug, Clone)]
pub struct Sweep<T> {
    /// `X_n`, n×m.
    pub inverse: Matrix<T>,
    /// Branch taken at each column, starting with column 1.
    pub trace: Vec<Branch>,
    /// `X_1, …, X_n` when requested, otherwise empty.
    pub prefixes: Vec<Matrix<T>>,
}

/// Shape checks, plus the SPD check on both weights when enabled.
pub fn validate_inputs<T: Field>(
    a: &Matrix<T>,
    left: &Matrix<T>,
    right: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<()> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(Error::DimensionMismatch {
            op: "sweep",
            expected: "nonempty matrix".into(),
            got: dims(m, n),
        });
    }
    if left.shape() != (m, m) {
        return Err(Error::DimensionMismatch {
            op: "left weight",
            expected: dims(m, m),
            got: dims(left.rows(), left.cols()),
        });
    }
    if right.shape() != (n, n) {
        return Err(Error::DimensionMismatch {
            op: "right weight",
            expected: dims(n, n),
            got: dims(right.rows(), right.cols()),
        });
    }
    if cfg.validate_weights {
        for (side, w) in [(WeightSide::Left, left), (WeightSide::Right, right)] {
            let cert = is_spd(w, cfg.zero_tol_rel);
            if !cert.ok {
                return Err(Error::WeightNotSpd {
                    side,
                    minor: cert.failing_minor_index,
                });
            }
        }
    }
    Ok(())
}

/// Drives a column recursion over all columns of `a`.
///
/// The inverse of the right weight's leading blocks is grown by bordering in
/// lockstep with the sweep; it is never formed by a fresh inversion.
pub fn sweep<T: Field, R: ColumnRecursion>(
    a: &Matrix<T>,
    left: &Matrix<T>,
    right: &Matrix<T>,
    cfg: &RecursionConfig,
    keep_prefixes: bool,
) -> Result<Sweep<T>> {
    validate_inputs(a, left, right, cfg)?;
    let n = a.cols();

    let mut a_prev = a.take_col(0)?;
    let (mut x, first) = first_column(&a_prev, left, cfg)?;
    let mut trace = vec![first];
    let mut prefixes = Vec::new();
    if keep_prefixes {
        prefixes.push(x.clone());
    }
    if n == 1 {
        return Ok(Sweep {
            inverse: x,
            trace,
            prefixes,
        });
    }

    let mut bordered = BorderedInverseState::start(right, cfg)?;
    for k in 2..=n {
        let a_k = a.take_col(k - 1)?;
        let part = WeightPartition::of(right, k)?;
        let input = StepInput {
            x_prev: &x,
            a_prev: &a_prev,
            a_k: &a_k,
            part: &part,
            right_inv_prev: &bordered.inv,
            left,
            right,
        };
        let (next, scratch) = R::step(&input, cfg)?;
        trace.push(scratch.branch);
        if k < n {
            bordered = bordered_inverse_step(&bordered, &part, cfg)?;
        }
        a_prev = a_prev.hstack(&a_k)?;
        x = next;
        if keep_prefixes {
            prefixes.push(x.clone());
        }
    }
    Ok(Sweep {
        inverse: x,
        trace,
        prefixes,
    })
}

/// Weighted Moore-Penrose inverse `A_{M,N}^†` by the [`Wang`] recursion.
pub fn wmp_wang<T: Field>(
    a: &Matrix<T>,
    m: &Matrix<T>,
    n: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<Matrix<T>> {
    sweep::<T, Wang>(a, m, n, cfg, false).map(|s| s.inverse)
}

/// Generalized LM-inverse `A_{L,M}^†` by the [`Udwadia`] recursion. `l` is m×m and
/// `m` is n×n.
pub fn lm_udwadia<T: Field>(
    a: &Matrix<T>,
    l: &Matrix<T>,
    m: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<Matrix<T>> {
    sweep::<T, Udwadia>(a, l, m, cfg, false).map(|s| s.inverse)
}

/// `X_k = (A_k)^†_{M,N_k}` for every k = 1..n.
pub fn prefix_inverses<T: Field>(
    a: &Matrix<T>,
    m: &Matrix<T>,
    n: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<Vec<Matrix<T>>> {
    sweep::<T, Wang>(a, m, n, cfg, true).map(|s| s.prefixes)
}
