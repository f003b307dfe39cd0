//! Scalar fields the recursions run over.
//!
//! Every algorithm in the crate is generic over [`Field`]. Three realizations
//! are provided: exact rationals ([`Rational`]), IEEE doubles (`f64`) and
//! univariate rational functions over ℚ ([`RatFun`]). A matrix is always over
//! exactly one of them; the runtime tag [`FieldKind`] is only used at the text
//! and CLI boundary.

mod float;
mod poly;
mod ratfun;
pub(crate) mod rational;
mod zpoly;

use std::fmt;

use crate::error::Result;

pub use poly::{poly_gcd, Polynomial};
pub use ratfun::RatFun;
pub use rational::{rat, Rational};

/// Runtime tag for the three supported fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Float,
    RatFun,
}

impl FieldKind {
    pub fn is_exact(self) -> bool {
        !matches!(self, FieldKind::Float)
    }

    /// Name used in `field=` headers and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Rational => "rational",
            FieldKind::Float => "float",
            FieldKind::RatFun => "ratfun",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "rational" => Some(FieldKind::Rational),
            "float" => Some(FieldKind::Float),
            "ratfun" => Some(FieldKind::RatFun),
            _ => None,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A commutative field with the hooks the partitioning recursions need.
///
/// Exact fields answer [`Field::is_zero`] structurally. The float field never
/// hard-codes a threshold: callers that need a tolerance go through
/// [`Field::approx_zero`] with a problem-scaled `tol`.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Complex conjugation. All implemented fields are real, so this is the identity.
    fn conj(&self) -> Self {
        self.clone()
    }

    /// Numeric value, when the element is a (constant) real number.
    fn to_f64(&self) -> Option<f64>;

    /// Sign test used by the SPD certificate. `None` when the element has no
    /// meaningful order (a non-constant rational function).
    fn is_positive(&self) -> Option<bool>;

    /// Exact fields ignore `tol` and test exact zero; floats test `|a| <= tol`.
    fn approx_zero(&self, tol: f64) -> bool {
        if Self::KIND.is_exact() {
            self.is_zero()
        } else {
            self.to_f64().is_some_and(|v| v.abs() <= tol)
        }
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}
