use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::FileField;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, FieldKind, Polynomial, Rational};

/// Parameters of the random polynomial-matrix generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub rows: usize,
    pub cols: usize,
    /// Highest power of `x` that may appear.
    pub degree: usize,
    /// Probability that an entry is drawn at all (otherwise it is 0).
    pub prob1: f64,
    /// Probability that each individual term is kept.
    pub prob2: f64,
    /// Inclusive range of the integer coefficients.
    pub coeff_range: (i64, i64),
    pub seed: u64,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            rows: 1,
            cols: 1,
            degree: 0,
            prob1: 1.0,
            prob2: 1.0,
            coeff_range: (-10, 10),
            seed: 0,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        let prob_ok = |p: f64| (0.0..=1.0).contains(&p);
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidSpec("rows and cols must be positive".into()));
        }
        if !prob_ok(self.prob1) || !prob_ok(self.prob2) {
            return Err(Error::InvalidSpec(
                "probabilities must lie in [0, 1]".into(),
            ));
        }
        if self.coeff_range.0 > self.coeff_range.1 {
            return Err(Error::InvalidSpec("empty coefficient range".into()));
        }
        Ok(())
    }
}

/// One random polynomial.
///
/// With probability `1 − prob1` the result is 0. Otherwise each power
/// `x^i`, `i = 0..=degree`, gets an integer coefficient drawn uniformly from
/// `coeff_range`, kept with probability `prob2`. The coefficient is drawn
/// even when the term is dropped, so the stream position does not depend on
/// `prob2`. A zero sum is replaced by 1 when `prob1 ≥ 1`.
pub fn random_poly<R: Rng + ?Sized>(spec: &GenSpec, rng: &mut R) -> Polynomial {
    let u: f64 = rng.sample(Open01);
    if u > spec.prob1 {
        return Polynomial::zero();
    }
    let (lo, hi) = spec.coeff_range;
    let mut coeffs = Vec::with_capacity(spec.degree + 1);
    for _ in 0..=spec.degree {
        let keep = rng.sample::<f64, _>(Open01) < spec.prob2;
        let c = rng.random_range(lo..=hi);
        coeffs.push(if keep { c } else { 0 });
    }
    let s = Polynomial::from_i64s(&coeffs);
    if s.is_zero() && spec.prob1 >= 1.0 {
        return Polynomial::one();
    }
    s
}

/// Entry `(i, j)` is drawn from ChaCha20 seeded with `seed` on stream
/// `i·cols + j`, so every entry is reproducible on its own.
pub fn random_matrix<T: FileField>(spec: &GenSpec) -> Result<Matrix<T>> {
    spec.validate()?;
    if spec.degree > 0 && T::KIND != FieldKind::RatFun {
        return Err(Error::InvalidSpec(format!(
            "degree {} needs field ratfun, not {}",
            spec.degree,
            T::KIND
        )));
    }
    let mut data = Vec::with_capacity(spec.rows * spec.cols);
    for i in 0..spec.rows {
        for j in 0..spec.cols {
            let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
            rng.set_stream((i * spec.cols + j) as u64);
            data.push(T::from_polynomial(&random_poly(spec, &mut rng))?);
        }
    }
    Matrix::new(spec.rows, spec.cols, data)
}

/// Largest magnitude of the entries of `B` in [`random_spd`].
const SPD_ENTRY_BOUND: i64 = 3;

/// `BᵀB + I` (exact fields) or `BᵀB + n·I` (float) for a random integer
/// n×n matrix `B` with entries in `−3..=3`. Always symmetric positive definite.
pub fn random_spd<T: FileField>(n: usize, seed: u64) -> Matrix<T> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let b = Matrix::<Rational>::from_fn(n, n, |_, _| {
        Rational::from_i64(rng.random_range(-SPD_ENTRY_BOUND..=SPD_ENTRY_BOUND))
    });
    let shift = if T::KIND.is_exact() { 1 } else { n as i64 };
    let g = b
        .transpose()
        .matmul(&b)
        .and_then(|g| g.add(&Matrix::scalar_identity(n, &Rational::from_i64(shift))))
        .expect("square operands");
    g.map(|q| T::from_rational(q))
}
