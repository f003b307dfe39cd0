//! Text formats and random generators.
//!
//! A matrix file is a header line `matrix ROWS COLS field=TAG` followed by
//! one line per matrix row, entries separated by whitespace. `TAG` is
//! `rational`, `float` or `ratfun`. Blank lines are ignored. Reading accepts
//! LF or CRLF; writing emits LF.

mod expr;
mod generate;

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, FieldKind, Polynomial, RatFun, Rational};

pub use expr::{parse_polynomial_expr, parse_ratfun_expr, MAX_EXPONENT};
pub use generate::{random_matrix, random_poly, random_spd, GenSpec};

/// A matrix whose field is only known at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Rational(Matrix<Rational>),
    Float(Matrix<f64>),
    RatFun(Matrix<RatFun>),
}

impl AnyMatrix {
    pub fn field(&self) -> FieldKind {
        match self {
            AnyMatrix::Rational(_) => FieldKind::Rational,
            AnyMatrix::Float(_) => FieldKind::Float,
            AnyMatrix::RatFun(_) => FieldKind::RatFun,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyMatrix::Rational(m) => m.shape(),
            AnyMatrix::Float(m) => m.shape(),
            AnyMatrix::RatFun(m) => m.shape(),
        }
    }

    /// Converts into `Matrix<T>`. Rational matrices convert into every field;
    /// rational-function matrices with constant entries convert into rationals.
    pub fn into_field<T: FileField>(self) -> Result<Matrix<T>> {
        T::from_any(self)
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyMatrix::Rational(m) => serialize_matrix(m),
            AnyMatrix::Float(m) => serialize_matrix(m),
            AnyMatrix::RatFun(m) => serialize_matrix(m),
        }
    }
}

fn mismatch(expected: FieldKind, got: FieldKind) -> Error {
    Error::FieldMismatch {
        expected: expected.name(),
        got: got.name(),
    }
}

/// A field with a token syntax in the matrix file format.
pub trait FileField: Field {
    fn parse_token(token: &str) -> Result<Self>;
    fn format_token(&self) -> String;
    fn wrap(m: Matrix<Self>) -> AnyMatrix;
    fn from_any(m: AnyMatrix) -> Result<Matrix<Self>>;
    /// Embeds a polynomial; fields without a variable accept constants only.
    fn from_polynomial(p: &Polynomial) -> Result<Self>;
}

impl FileField for Rational {
    fn parse_token(token: &str) -> Result<Self> {
        parse_rational(token)
    }

    fn format_token(&self) -> String {
        self.to_string()
    }

    fn wrap(m: Matrix<Self>) -> AnyMatrix {
        AnyMatrix::Rational(m)
    }

    fn from_any(m: AnyMatrix) -> Result<Matrix<Self>> {
        match m {
            AnyMatrix::Rational(m) => Ok(m),
            AnyMatrix::RatFun(m) if m.entries().iter().all(|e| e.as_constant().is_some()) => {
                Ok(m.map(|e| e.as_constant().expect("checked constant")))
            }
            other => Err(mismatch(FieldKind::Rational, other.field())),
        }
    }

    fn from_polynomial(p: &Polynomial) -> Result<Self> {
        p.as_constant()
            .ok_or_else(|| constant_only(FieldKind::Rational))
    }
}

impl FileField for f64 {
    fn parse_token(token: &str) -> Result<Self> {
        let v: f64 = token.parse().map_err(|_| {
            ParseError::new(1, 1, format!("invalid float '{token}'"))
                .expecting(&["decimal or scientific number"])
        })?;
        if !v.is_finite() {
            return Err(ParseError::new(1, 1, format!("non-finite float '{token}'")).into());
        }
        Ok(v)
    }

    fn format_token(&self) -> String {
        format!("{self:.16e}")
    }

    fn wrap(m: Matrix<Self>) -> AnyMatrix {
        AnyMatrix::Float(m)
    }

    fn from_any(m: AnyMatrix) -> Result<Matrix<Self>> {
        match m {
            AnyMatrix::Float(m) => Ok(m),
            AnyMatrix::Rational(m) => Ok(m.map(|q| q.to_f64().unwrap_or(f64::NAN))),
            other => Err(mismatch(FieldKind::Float, other.field())),
        }
    }

    fn from_polynomial(p: &Polynomial) -> Result<Self> {
        p.as_constant()
            .and_then(|c| Field::to_f64(&c))
            .ok_or_else(|| constant_only(FieldKind::Float))
    }
}

impl FileField for RatFun {
    fn parse_token(token: &str) -> Result<Self> {
        parse_ratfun_expr(token)
    }

    fn format_token(&self) -> String {
        self.to_string()
    }

    fn wrap(m: Matrix<Self>) -> AnyMatrix {
        AnyMatrix::RatFun(m)
    }

    fn from_any(m: AnyMatrix) -> Result<Matrix<Self>> {
        match m {
            AnyMatrix::RatFun(m) => Ok(m),
            AnyMatrix::Rational(m) => Ok(m.map(RatFun::from_rational)),
            other => Err(mismatch(FieldKind::RatFun, other.field())),
        }
    }

    fn from_polynomial(p: &Polynomial) -> Result<Self> {
        Ok(RatFun::from_polynomial(p.clone()))
    }
}

fn constant_only(field: FieldKind) -> Error {
    Error::InvalidSpec(format!("field {field} holds constants only"))
}

/// `int` or `int/uint`, with an optional leading minus.
fn parse_rational(token: &str) -> Result<Rational> {
    let bad = |col: usize, what: &str| -> Error {
        ParseError::new(1, col, format!("invalid rational '{token}': {what}"))
            .expecting(&["integer", "integer/integer"])
            .into()
    };
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(1, "bad numerator"));
    }
    let n: BigInt = num.parse().map_err(|_| bad(1, "bad numerator"))?;
    let Some(den) = den else {
        return Ok(Rational::from_integer(n));
    };
    if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad(num.len() + 2, "bad denominator"));
    }
    let d: BigInt = den
        .parse()
        .map_err(|_| bad(num.len() + 2, "bad denominator"))?;
    if d == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Lines with their 1-based numbers, blank lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

/// 1-based character column of each whitespace-separated token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col = 0;
    let mut byte_start = 0;
    for (b, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(c) = start.take() {
                out.push((c, &line[byte_start..b]));
            }
        } else if start.is_none() {
            start = Some(col);
            byte_start = b;
        }
    }
    if let Some(c) = start {
        out.push((c, &line[byte_start..]));
    }
    out
}

struct Header {
    rows: usize,
    cols: usize,
    field: FieldKind,
}

fn parse_header(line_no: usize, line: &str) -> Result<Header> {
    let toks = tokens(line);
    let at = |i: usize| toks.get(i).map_or(line.chars().count() + 1, |t| t.0);
    let err = |i: usize, msg: &str, expected: &[&str]| -> Error {
        ParseError::new(line_no, at(i), msg)
            .expecting(expected)
            .into()
    };
    if toks.first().map(|t| t.1) != Some("matrix") {
        return Err(err(0, "missing header", &["matrix"]));
    }
    let count = |i: usize| -> Result<usize> {
        toks.get(i)
            .and_then(|t| t.1.parse::<usize>().ok())
            .ok_or_else(|| err(i, "expected a dimension", &["nonnegative integer"]))
    };
    let rows = count(1)?;
    let cols = count(2)?;
    let field = toks
        .get(3)
        .and_then(|t| t.1.strip_prefix("field="))
        .and_then(FieldKind::from_name)
        .ok_or_else(|| {
            err(
                3,
                "expected a field tag",
                &["field=rational", "field=float", "field=ratfun"],
            )
        })?;
    if toks.len() > 4 {
        return Err(err(4, "trailing header content", &["end of line"]));
    }
    Ok(Header { rows, cols, field })
}

fn parse_body<T: FileField>(
    header: &Header,
    lines: &mut dyn Iterator<Item = (usize, &str)>,
) -> Result<Matrix<T>> {
    let mut data = Vec::with_capacity(header.rows * header.cols);
    // With no columns every row line is blank, and blank lines are dropped.
    let body_rows = if header.cols == 0 { 0 } else { header.rows };
    for r in 0..body_rows {
        let Some((line_no, line)) = lines.next() else {
            return Err(Error::DimensionMismatch {
                op: "parse_matrix",
                expected: format!("{} rows", header.rows),
                got: format!("{r} rows"),
            });
        };
        let toks = tokens(line);
        if toks.len() != header.cols {
            return Err(Error::DimensionMismatch {
                op: "parse_matrix",
                expected: format!("{} entries on line {line_no}", header.cols),
                got: format!("{}", toks.len()),
            });
        }
        for (col, tok) in toks {
            let v = T::parse_token(tok).map_err(|e| match e {
                Error::Parse(p) => Error::Parse(p.relocate(line_no, col - 1)),
                other => other,
            })?;
            data.push(v);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::DimensionMismatch {
            op: "parse_matrix",
            expected: format!("{} rows", header.rows),
            got: format!("extra content on line {line_no}"),
        });
    }
    Matrix::new(header.rows, header.cols, data)
}

/// Parses a matrix file in whatever field its header declares.
pub fn parse_matrix(text: &str) -> Result<AnyMatrix> {
    let mut lines = content_lines(text);
    let Some((line_no, first)) = lines.next() else {
        return Err(ParseError::new(1, 1, "empty input")
            .expecting(&["matrix"])
            .into());
    };
    let header = parse_header(line_no, first)?;
    Ok(match header.field {
        FieldKind::Rational => AnyMatrix::Rational(parse_body(&header, &mut lines)?),
        FieldKind::Float => AnyMatrix::Float(parse_body(&header, &mut lines)?),
        FieldKind::RatFun => AnyMatrix::RatFun(parse_body(&header, &mut lines)?),
    })
}

/// Parses a matrix file and converts it into `T`.
pub fn parse_matrix_as<T: FileField>(text: &str) -> Result<Matrix<T>> {
    parse_matrix(text)?.into_field()
}

/// Canonical text form; `parse_matrix` inverts it exactly.
pub fn serialize_matrix<T: FileField>(m: &Matrix<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "matrix {} {} field={}",
        m.rows(),
        m.cols(),
        T::KIND.name()
    );
    for row in m.iter_rows() {
        let toks: Vec<String> = row.iter().map(FileField::format_token).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

/// Reads and parses a matrix file. I/O errors carry the path.
pub fn read_file(path: &std::path::Path) -> Result<AnyMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}
