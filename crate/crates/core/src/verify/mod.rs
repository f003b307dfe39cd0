//! Ground truth for the recursions: the four defining equations as a
//! residual check, a closed-form oracle built on a full-rank factorization,
//! and a cross-engine equivalence report.

mod equivalence;
mod oracle;

use std::fmt;

use crate::error::{dims, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

pub use equivalence::{equivalence_check, Discrepancy, EquivalenceReport};
pub use oracle::{full_rank_factorize, wmp_oracle};

/// Default float acceptance threshold relative to a reference norm.
pub const FLOAT_RESIDUAL_REL: f64 = 1e-8;

/// `FLOAT_RESIDUAL_REL · max(1, reference)`.
pub fn float_threshold(reference: f64) -> f64 {
    FLOAT_RESIDUAL_REL * reference.max(1.0)
}

/// Residual of one defining equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual {
    /// Exact fields: whether the residual matrix is identically zero.
    Exact { zero: bool },
    /// Float: Frobenius norm of the residual matrix.
    Norm(f64),
}

impl Residual {
    fn of<T: Field>(r: &Matrix<T>) -> Self {
        if T::KIND.is_exact() {
            Residual::Exact { zero: r.is_zero() }
        } else {
            Residual::Norm(r.norm_f64())
        }
    }

    pub fn passes(self, threshold: f64) -> bool {
        match self {
            Residual::Exact { zero } => zero,
            Residual::Norm(v) => v <= threshold,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact { zero: true } => f.write_str("0"),
            Residual::Exact { zero: false } => f.write_str("nonzero"),
            Residual::Norm(v) => write!(f, "{v:.3e}"),
        }
    }
}

/// Residuals of `AXA = A`, `XAX = X`, `(MAX)^* = MAX`, `(NXA)^* = NXA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenroseResiduals {
    pub r1: Residual,
    pub r2: Residual,
    pub r3: Residual,
    pub r4: Residual,
}

impl PenroseResiduals {
    pub const LABELS: [&'static str; 4] = ["AXA=A", "XAX=X", "(MAX)*=MAX", "(NXA)*=NXA"];

    pub fn as_array(&self) -> [Residual; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }

    /// Exact residuals must vanish; norms must not exceed `threshold`.
    pub fn passes(&self, threshold: f64) -> bool {
        self.as_array().iter().all(|r| r.passes(threshold))
    }

    pub fn max_norm(&self) -> f64 {
        self.as_array()
            .iter()
            .map(|r| match r {
                Residual::Exact { zero: true } => 0.0,
                Residual::Exact { zero: false } => f64::INFINITY,
                Residual::Norm(v) => *v,
            })
            .fold(0.0, f64::max)
    }
}

/// Evaluates the four defining equations for candidate `x` (n×m).
pub fn penrose_residuals<T: Field>(
    a: &Matrix<T>,
    x: &Matrix<T>,
    m: &Matrix<T>,
    n: &Matrix<T>,
) -> Result<PenroseResiduals> {
    let (rows, cols) = a.shape();
    let checks = [
        ("penrose_residuals: X", x.shape(), (cols, rows)),
        ("penrose_residuals: M", m.shape(), (rows, rows)),
        ("penrose_residuals: N", n.shape(), (cols, cols)),
    ];
    for (op, got, want) in checks {
        if got != want {
            return Err(Error::DimensionMismatch {
                op,
                expected: dims(want.0, want.1),
                got: dims(got.0, got.1),
            });
        }
    }
    let ax = a.matmul(x)?;
    let xa = x.matmul(a)?;
    let max = m.matmul(&ax)?;
    let nxa = n.matmul(&xa)?;
    Ok(PenroseResiduals {
        r1: Residual::of(&ax.matmul(a)?.sub(a)?),
        r2: Residual::of(&xa.matmul(x)?.sub(x)?),
        r3: Residual::of(&max.conj_transpose().sub(&max)?),
        r4: Residual::of(&nxa.conj_transpose().sub(&nxa)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn identity_passes() {
        let i = Matrix::<Rational>::identity(3);
        let r = penrose_residuals(&i, &i, &i, &i).unwrap();
        assert!(r.passes(0.0));
        assert_eq!(r.max_norm(), 0.0);
    }

    #[test]
    fn zero_candidate_fails_first_equation() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 2], &[3, 4], &[5, 6]]).unwrap();
        let r = penrose_residuals(
            &a,
            &Matrix::zeros(2, 3),
            &Matrix::identity(3),
            &Matrix::identity(2),
        )
        .unwrap();
        assert_eq!(r.r1, Residual::Exact { zero: false });
        assert_eq!(r.r2, Residual::Exact { zero: true });
        assert!(!r.passes(f64::INFINITY));
    }

    #[test]
    fn float_norms() {
        let a = Matrix::<f64>::identity(2);
        let x = Matrix::<f64>::scalar_identity(2, &2.0);
        let r = penrose_residuals(&a, &x, &a, &a).unwrap();
        assert_eq!(r.r1, Residual::Norm(2f64.sqrt()));
        assert!(!r.passes(1.0));
        assert_eq!(r.r3, Residual::Norm(0.0));
    }

    #[test]
    fn shape_checked() {
        let a = Matrix::<Rational>::identity(2);
        assert!(matches!(
            penrose_residuals(&a, &Matrix::identity(3), &a, &a),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
