//! Column-partitioning recursions for the weighted Moore-Penrose inverse.
//!
//! `A_k = [A_{k-1} | a_k]` is swept one column at a time. Two update rules are
//! provided, the weighted Moore-Penrose form ([`wang_step`]) and the LM-inverse
//! form ([`udwadia_step`]); both consume the inverse of the leading principal
//! block of the right weight, which is grown alongside the sweep by the
//! bordering rule in [`bordered_inverse_step`].
//!
//! Weights are named by side throughout: the *left* weight is m×m (`M` in
//! the Moore-Penrose form, `L` in the LM form) and the *right* weight is n×n
//! (`N`, respectively `M`).

mod bordered;
mod steps;
mod sweep;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Field;

pub use bordered::{bordered_inverse, bordered_inverse_step, BorderedInverseState};
pub use steps::{init_first_column, udwadia_step, wang_step, IterationScratch};
pub use sweep::{
    lm_udwadia, prefix_inverses, sweep, validate_inputs, wmp_wang, ColumnRecursion, StepInput,
    Sweep, Udwadia, Wang,
};

/// Which recursion(s) to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Wang,
    Udwadia,
    Both,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Wang => "wang",
            Algorithm::Udwadia => "udwadia",
            Algorithm::Both => "both",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RecursionConfig {
    /// Relative threshold for the float field's zero tests (column residual,
    /// quadratic forms, Schur complements). Ignored by exact fields.
    pub zero_tol_rel: f64,
    pub algorithm: Algorithm,
    /// Run the SPD check on both weights before sweeping.
    pub validate_weights: bool,
}

impl Default for RecursionConfig {
    fn default() -> Self {
        RecursionConfig {
            zero_tol_rel: 1e-9,
            algorithm: Algorithm::Both,
            validate_weights: true,
        }
    }
}

impl RecursionConfig {
    pub fn unvalidated() -> Self {
        RecursionConfig {
            validate_weights: false,
            ..Self::default()
        }
    }
}

/// Which case of the update a column took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The new column is independent of the previous ones (residual ≠ 0).
    Nonzero,
    /// The new column lies in the span of the previous ones (residual = 0).
    Zero,
}

/// The k-th bordering of a weight matrix:
///
/// ```text
/// W_k = [ leading   border ]
///       [ border^*  corner ]
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct WeightPartition<T> {
    /// `W_{k-1}`, (k−1)×(k−1).
    pub leading: Matrix<T>,
    /// (k−1)×1.
    pub border: Matrix<T>,
    pub corner: T,
}

impl<T: Field> WeightPartition<T> {
    /// Partition of the leading principal submatrix of order `k` (k ≥ 2).
    pub fn of(weight: &Matrix<T>, k: usize) -> Result<Self> {
        Ok(WeightPartition {
            leading: weight.leading_principal(k - 1)?,
            border: weight.border_column(k)?,
            corner: weight.corner(k)?,
        })
    }

    pub fn order(&self) -> usize {
        self.leading.rows() + 1
    }

    /// Reassembles `W_k`.
    pub fn assemble(&self) -> Result<Matrix<T>> {
        let corner = Matrix::new(1, 1, vec![self.corner.clone()])?;
        let top = self.leading.hstack(&self.border)?;
        let bottom = self.border.conj_transpose().hstack(&corner)?;
        top.vstack(&bottom)
    }
}

/// Float zero test for a vector: `‖v‖₂ ≤ tol·max(1, reference)`. Exact
/// fields test exact zero.
pub(crate) fn vector_negligible<T: Field>(v: &Matrix<T>, reference: f64, tol: f64) -> bool {
    if T::KIND.is_exact() {
        v.is_zero()
    } else {
        v.norm_f64() <= tol * reference.max(1.0)
    }
}

/// Float zero test for a scalar against an explicit magnitude scale.
pub(crate) fn scalar_negligible<T: Field>(s: &T, scale: f64, tol: f64) -> bool {
    if T::KIND.is_exact() {
        s.is_zero()
    } else {
        s.approx_zero(tol * scale)
    }
}

pub(crate) fn abs_f64<T: Field>(s: &T) -> f64 {
    s.to_f64().map_or(0.0, f64::abs)
}

/// Entry of a 1×1 matrix.
pub(crate) fn scalar_of<T: Field>(m: &Matrix<T>) -> T {
    debug_assert_eq!(m.shape(), (1, 1));
    m[(0, 0)].clone()
}
