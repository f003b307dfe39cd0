use crate::error::Result;
use crate::matrix::Matrix;
use crate::partition::{sweep, Branch, RecursionConfig, Udwadia, Wang};
use crate::scalar::Field;

/// Entrywise distance between two candidate inverses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Discrepancy {
    Exact { equal: bool },
    Float { max_entry: f64, frobenius: f64 },
}

impl Discrepancy {
    pub fn between<T: Field>(x: &Matrix<T>, y: &Matrix<T>) -> Result<Self> {
        let d = x.sub(y)?;
        if T::KIND.is_exact() {
            return Ok(Discrepancy::Exact { equal: d.is_zero() });
        }
        let max_entry = d
            .entries()
            .iter()
            .map(|v| v.to_f64().map_or(f64::INFINITY, f64::abs))
            .fold(0.0, f64::max);
        Ok(Discrepancy::Float {
            max_entry,
            frobenius: d.norm_f64(),
        })
    }

    /// Exact: equality. Float: Frobenius gap at most `tol`.
    pub fn within(&self, tol: f64) -> bool {
        match *self {
            Discrepancy::Exact { equal } => equal,
            Discrepancy::Float { frobenius, .. } => frobenius <= tol,
        }
    }
}

/// Both recursions run on the same input.
#[derive(Debug, Clone)]
pub struct EquivalenceReport<T> {
    pub wang: Matrix<T>,
    pub udwadia: Matrix<T>,
    pub gap: Discrepancy,
    pub trace_wang: Vec<Branch>,
    pub trace_udwadia: Vec<Branch>,
}

impl<T> EquivalenceReport<T> {
    pub fn traces_match(&self) -> bool {
        self.trace_wang == self.trace_udwadia
    }

    pub fn zero_branches(&self) -> usize {
        self.trace_wang
            .iter()
            .filter(|b| **b == Branch::Zero)
            .count()
    }

    /// Outputs agree within `tol` and both took the same branch at every column.
    pub fn is_equivalent(&self, tol: f64) -> bool {
        self.gap.within(tol) && self.traces_match()
    }
}

/// Runs the [`Wang`] and [`Udwadia`] sweeps with the same weights (`m` left, `n`
/// right) and compares their outputs and branch traces.
pub fn equivalence_check<T: Field>(
    a: &Matrix<T>,
    m: &Matrix<T>,
    n: &Matrix<T>,
    cfg: &RecursionConfig,
) -> Result<EquivalenceReport<T>> {
    let w = sweep::<T, Wang>(a, m, n, cfg, false)?;
    let u = sweep::<T, Udwadia>(a, m, n, cfg, false)?;
    Ok(EquivalenceReport {
        gap: Discrepancy::between(&w.inverse, &u.inverse)?,
        wang: w.inverse,
        udwadia: u.inverse,
        trace_wang: w.trace,
        trace_udwadia: u.trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn identity_all_nonzero() {
        let i = Matrix::<Rational>::identity(3);
        let r = equivalence_check(&i, &i, &i, &RecursionConfig::default()).unwrap();
        assert_eq!(r.gap, Discrepancy::Exact { equal: true });
        assert!(r.traces_match());
        assert!(r.trace_wang.iter().all(|b| *b == Branch::Nonzero));
    }

    #[test]
    fn dependent_columns_hit_zero_branch() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 2, 0], &[0, 0, 1], &[1, 2, 1]]).unwrap();
        let m = Matrix::from_i64_rows(&[&[2, 1, 0], &[1, 3, 0], &[0, 0, 1]]).unwrap();
        let n = Matrix::from_i64_rows(&[&[4, 1, 1], &[1, 3, 0], &[1, 0, 2]]).unwrap();
        let r = equivalence_check(&a, &m, &n, &RecursionConfig::default()).unwrap();
        assert!(r.is_equivalent(0.0));
        assert_eq!(
            r.trace_wang,
            vec![Branch::Nonzero, Branch::Zero, Branch::Nonzero]
        );
    }
}
