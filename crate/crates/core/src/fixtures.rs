//! Two worked examples with known inverses, bundled as matrix files.
//!
//! The first example's reference tables are printed to three decimals; they are
//! stored here as the exact rationals of those decimals.

use crate::error::Result;
use crate::matio::parse_matrix_as;
use crate::matrix::Matrix;
use crate::scalar::{RatFun, Rational};

pub const EXAMPLE1_A: &str = include_str!("../fixtures/example1_a.txt");
pub const EXAMPLE1_LEFT_WEIGHT: &str = include_str!("../fixtures/example1_left_weight.txt");
pub const EXAMPLE1_RIGHT_WEIGHT: &str = include_str!("../fixtures/example1_right_weight.txt");
pub const EXAMPLE1_WEIGHTED_REFERENCE: &str =
    include_str!("../fixtures/example1_weighted_reference.txt");
pub const EXAMPLE1_UNWEIGHTED_REFERENCE: &str =
    include_str!("../fixtures/example1_unweighted_reference.txt");
pub const EXAMPLE2_A: &str = include_str!("../fixtures/example2_a.txt");
pub const EXAMPLE2_REFERENCE: &str = include_str!("../fixtures/example2_reference.txt");

/// Tolerance implied by three printed decimals.
pub const PRINTED_DECIMALS_TOL: (i64, i64) = (1, 2000);

/// 11×10 matrix of rank 9 with its 11×11 left and 10×10 right weights.
pub struct Example1 {
    pub a: Matrix<Rational>,
    pub left: Matrix<Rational>,
    pub right: Matrix<Rational>,
    pub weighted_reference: Matrix<Rational>,
    pub unweighted_reference: Matrix<Rational>,
}

pub fn example1() -> Result<Example1> {
    Ok(Example1 {
        a: parse_matrix_as(EXAMPLE1_A)?,
        left: parse_matrix_as(EXAMPLE1_LEFT_WEIGHT)?,
        right: parse_matrix_as(EXAMPLE1_RIGHT_WEIGHT)?,
        weighted_reference: parse_matrix_as(EXAMPLE1_WEIGHTED_REFERENCE)?,
        unweighted_reference: parse_matrix_as(EXAMPLE1_UNWEIGHTED_REFERENCE)?,
    })
}

/// 12×12 polynomial matrix of rank 11 and its reference Moore-Penrose inverse.
pub struct Example2 {
    pub a: Matrix<RatFun>,
    pub reference: Matrix<RatFun>,
}

pub fn example2() -> Result<Example2> {
    Ok(Example2 {
        a: parse_matrix_as(EXAMPLE2_A)?,
        reference: parse_matrix_as(EXAMPLE2_REFERENCE)?,
    })
}

/// Largest `|x_ij − y_ij|` as an exact rational.
pub fn max_abs_diff(x: &Matrix<Rational>, y: &Matrix<Rational>) -> Option<Rational> {
    if x.shape() != y.shape() {
        return None;
    }
    x.entries()
        .iter()
        .zip(y.entries())
        .map(|(a, b)| num_traits::Signed::abs(&(a - b)))
        .max()
}
