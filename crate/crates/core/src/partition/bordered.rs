use super::{abs_f64, scalar_negligible, scalar_of, RecursionConfig, WeightPartition};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Inverse of the leading principal block `W_k` together with the pieces of
/// the last bordering step.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderedInverseState<T> {
    pub k: usize,
    /// `W_k^{-1}`.
    pub inv: Matrix<T>,
    /// `g_kk = (w_kk − l_k^* W_{k-1}^{-1} l_k)^{-1}`.
    pub last_g: T,
    /// `f_k = −g_kk W_{k-1}^{-1} l_k`.
    pub last_f: Matrix<T>,
}

impl<T: Field> BorderedInverseState<T> {
    /// `W_1^{-1} = [1 / w_11]`.
    pub fn start(weight: &Matrix<T>, cfg: &RecursionConfig) -> Result<Self> {
        let w11 = weight.corner(1)?;
        if scalar_negligible(&w11, 1.0, cfg.zero_tol_rel) {
            return Err(Error::DegenerateWeight { column: 1 });
        }
        let g = w11.inv()?;
        Ok(BorderedInverseState {
            k: 1,
            inv: Matrix::new(1, 1, vec![g.clone()])?,
            last_g: g,
            last_f: Matrix::zeros(0, 1),
        })
    }
}

/// One bordering step `W_{k-1}^{-1} → W_k^{-1}`:
///
/// ```text
/// g_kk    = (w_kk − l_k^* W_{k-1}^{-1} l_k)^{-1}
/// f_k     = −g_kk W_{k-1}^{-1} l_k
/// E_{k-1} = W_{k-1}^{-1} + g_kk^{-1} f_k f_k^*
/// W_k^{-1} = [[E_{k-1}, f_k], [f_k^*, g_kk]]
/// ```
///
/// Fails with `DegenerateWeight` when the Schur complement vanishes, which
/// means the weight is not positive definite.
pub fn bordered_inverse_step<T: Field>(
    state: &BorderedInverseState<T>,
    part: &WeightPartition<T>,
    cfg: &RecursionConfig,
) -> Result<BorderedInverseState<T>> {
    let k = part.order();
    if state.k + 1 != k || state.inv.rows() != part.leading.rows() {
        return Err(Error::DimensionMismatch {
            op: "bordered_inverse_step",
            expected: format!("state of order {}", k - 1),
            got: format!("state of order {}", state.k),
        });
    }
    let h = state.inv.matmul(&part.border)?;
    let schur = part
        .corner
        .sub(&scalar_of(&part.border.conj_transpose().matmul(&h)?));
    if scalar_negligible(&schur, abs_f64(&part.corner), cfg.zero_tol_rel) {
        return Err(Error::DegenerateWeight { column: k });
    }
    let g = schur.inv()?;
    let f = h.scale(&g.neg());
    let e = state
        .inv
        .add(&f.matmul(&f.conj_transpose())?.scale(&g.inv()?))?;

    let g_block = Matrix::new(1, 1, vec![g.clone()])?;
    let top = e.hstack(&f)?;
    let bottom = f.conj_transpose().hstack(&g_block)?;
    Ok(BorderedInverseState {
        k,
        inv: top.vstack(&bottom)?,
        last_g: g,
        last_f: f,
    })
}

/// Full inverse of a positive definite weight by repeated bordering.
pub fn bordered_inverse<T: Field>(weight: &Matrix<T>, cfg: &RecursionConfig) -> Result<Matrix<T>> {
    if !weight.is_square() || weight.rows() == 0 {
        return Err(Error::DimensionMismatch {
            op: "bordered_inverse",
            expected: "nonempty square matrix".into(),
            got: format!("{}x{}", weight.rows(), weight.cols()),
        });
    }
    let mut state = BorderedInverseState::start(weight, cfg)?;
    for k in 2..=weight.rows() {
        state = bordered_inverse_step(&state, &WeightPartition::of(weight, k)?, cfg)?;
    }
    Ok(state.inv)
}
