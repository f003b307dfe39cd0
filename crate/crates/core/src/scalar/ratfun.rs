use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::zpoly::{self, ZPoly};
use super::{Field, FieldKind, Polynomial, Rational};
use crate::error::{Error, Result};

/// Rational function over ℚ in one variable.
///
/// Stored as `scale · num / den` with `num`, `den` primitive integer
/// polynomials with positive leading coefficients and no common factor.
/// Zero is `0 · 1 / 1`. This form is canonical, so structural equality is
/// equality of rational functions. [`numer`](Self::numer) and
/// [`denom`](Self::denom) give the equivalent ℚ-form with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    scale: Rational,
    num: ZPoly,
    den: ZPoly,
}

impl RatFun {
    /// The canonical representative of `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (ln, n) = num.clear_denominators();
        let (ld, d) = den.clear_denominators();
        Ok(Self::from_integer_parts(Rational::new(ld, ln), n, d))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let (l, n) = p.clear_denominators();
        let (c, n) = zpoly::primitive(n);
        if c.is_zero() {
            return Self::zero_value();
        }
        RatFun {
            scale: Rational::new(c, l),
            num: n,
            den: zpoly::one(),
        }
    }

    pub fn x() -> Self {
        Self::from_polynomial(Polynomial::x())
    }

    /// Numerator of the form with monic denominator.
    pub fn numer(&self) -> Polynomial {
        if self.is_zero_value() {
            return Polynomial::zero();
        }
        let lead = Rational::from_integer(self.den.last().expect("nonzero").clone());
        let s = &self.scale / lead;
        Polynomial::from_integers(&self.num, &BigInt::one()).scale(&s)
    }

    /// Monic denominator.
    pub fn denom(&self) -> Polynomial {
        Polynomial::from_integers(&self.den, &BigInt::one()).monic()
    }

    pub fn is_polynomial(&self) -> bool {
        zpoly::is_one(&self.den)
    }

    /// Value when the function is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (zpoly::is_one(&self.num) && zpoly::is_one(&self.den)).then(|| self.scale.clone())
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = zpoly::eval(&self.den, at);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(&self.scale * zpoly::eval(&self.num, at) / d)
    }

    fn zero_value() -> Self {
        RatFun {
            scale: Zero::zero(),
            num: zpoly::one(),
            den: zpoly::one(),
        }
    }

    fn is_zero_value(&self) -> bool {
        Zero::is_zero(&self.scale)
    }

    fn constant(q: Rational) -> Self {
        if Zero::is_zero(&q) {
            return Self::zero_value();
        }
        RatFun {
            scale: q,
            num: zpoly::one(),
            den: zpoly::one(),
        }
    }

    /// `scale · num / den` for arbitrary integer `num` and nonzero `den`.
    fn from_integer_parts(scale: Rational, num: ZPoly, den: ZPoly) -> Self {
        let (cn, n) = zpoly::primitive(num);
        if cn.is_zero() || Zero::is_zero(&scale) {
            return Self::zero_value();
        }
        let (cd, d) = zpoly::primitive(den);
        let g = zpoly::gcd(&n, &d);
        let (n, d) = if zpoly::is_one(&g) {
            (n, d)
        } else {
            (zpoly::div_by_factor(&n, &g), zpoly::div_by_factor(&d, &g))
        };
        RatFun {
            scale: scale * Rational::new(cn, cd),
            num: n,
            den: d,
        }
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        if self.is_zero_value() {
            return rhs.clone();
        }
        if rhs.is_zero_value() {
            return self.clone();
        }
        if self.num == rhs.num && self.den == rhs.den {
            let s = &self.scale + &rhs.scale;
            if Zero::is_zero(&s) {
                return Self::zero_value();
            }
            return RatFun {
                scale: s,
                ..self.clone()
            };
        }
        // s1·a/b + s2·c/d with g = gcd(b, d), b = g·b', d = g·d': the sum is
        // (s1·a·d' + s2·c·b') / (g·b'·d'), and only gcd(t, g) can cancel.
        let l = self.scale.denom().lcm(rhs.scale.denom());
        let k1 = self.scale.numer() * (&l / self.scale.denom());
        let k2 = rhs.scale.numer() * (&l / rhs.scale.denom());
        let g = if self.den == rhs.den {
            self.den.clone()
        } else {
            zpoly::gcd(&self.den, &rhs.den)
        };
        let b1 = zpoly::div_by_factor(&self.den, &g);
        let d1 = zpoly::div_by_factor(&rhs.den, &g);
        let t = zpoly::add(
            &zpoly::scale(&zpoly::mul(&self.num, &d1), &k1),
            &zpoly::scale(&zpoly::mul(&rhs.num, &b1), &k2),
        );
        let (ct, t) = zpoly::primitive(t);
        if ct.is_zero() {
            return Self::zero_value();
        }
        let h = zpoly::gcd(&t, &g);
        let (t, g) = if zpoly::is_one(&h) {
            (t, g)
        } else {
            (zpoly::div_by_factor(&t, &h), zpoly::div_by_factor(&g, &h))
        };
        RatFun {
            scale: Rational::new(ct, l),
            num: t,
            den: zpoly::mul(&zpoly::mul(&b1, &d1), &g),
        }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero_value() || rhs.is_zero_value() {
            return Self::zero_value();
        }
        let scale = &self.scale * &rhs.scale;
        if self.as_constant().is_some() {
            return RatFun {
                scale,
                ..rhs.clone()
            };
        }
        if rhs.as_constant().is_some() {
            return RatFun {
                scale,
                ..self.clone()
            };
        }
        // Cross-cancel before multiplying: (a/g1)(c/g2) / ((b/g2)(d/g1)).
        let g1 = zpoly::gcd(&self.num, &rhs.den);
        let g2 = zpoly::gcd(&rhs.num, &self.den);
        let a = zpoly::div_by_factor(&self.num, &g1);
        let d = zpoly::div_by_factor(&rhs.den, &g1);
        let c = zpoly::div_by_factor(&rhs.num, &g2);
        let b = zpoly::div_by_factor(&self.den, &g2);
        RatFun {
            scale,
            num: zpoly::mul(&a, &c),
            den: zpoly::mul(&b, &d),
        }
    }
}

impl Field for RatFun {
    const KIND: FieldKind = FieldKind::RatFun;

    fn zero() -> Self {
        Self::zero_value()
    }

    fn one() -> Self {
        Self::constant(One::one())
    }

    fn from_i64(v: i64) -> Self {
        Self::constant(Rational::from_integer(v.into()))
    }

    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }

    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.add_impl(rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add_impl(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }

    fn neg(&self) -> Self {
        RatFun {
            scale: -&self.scale,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero_value() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun {
            scale: self.scale.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    fn to_f64(&self) -> Option<f64> {
        self.as_constant().and_then(|c| ToPrimitive::to_f64(&c))
    }

    fn is_positive(&self) -> Option<bool> {
        self.as_constant().map(|c| Signed::is_positive(&c))
    }

    fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| One::is_one(&c))
    }
}

fn needs_parens(p: &Polynomial) -> bool {
    let terms = p.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count();
    terms > 1
        || p.leading()
            .is_some_and(|c| !c.is_integer() || c.is_negative())
}

/// Canonical text form: `x+1`, `x/(x^2+1)`, `(x-1)/(x^2+2)`. A unit
/// denominator is omitted. Contains no whitespace.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numer();
        if self.is_polynomial() {
            return write!(f, "{num}");
        }
        let den = self.denom();
        if needs_parens(&num) {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let den_bare = den.coeffs().iter().filter(|c| !Zero::is_zero(*c)).count() == 1;
        if den_bare {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}
