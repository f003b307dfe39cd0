use num_bigint::BigInt;

use crate::error::{Error, ParseError, Result};
use crate::scalar::{Field, Polynomial, RatFun, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::X => "'x'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Tokens with their 1-based starting column.
fn lex(text: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
                continue;
            }
            'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            other => {
                return Err(
                    ParseError::new(1, col, format!("unexpected character '{other}'"))
                        .expecting(&["integer", "x", "("]),
                )
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> Error {
        ParseError::new(
            1,
            self.col(),
            format!("unexpected {}", self.peek().describe()),
        )
        .expecting(expected)
        .into()
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[label]))
        }
    }

    /// expr := ['-'] term (('+' | '-') term)*
    fn expr(&mut self) -> Result<RatFun> {
        let negate = *self.peek() == Tok::Minus;
        if negate {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// term := factor (('*' | '/') factor)*
    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// factor := base ('^' (uint | '{' uint '}'))?
    fn factor(&mut self) -> Result<RatFun> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let braced = *self.peek() == Tok::LBrace;
        if braced {
            self.bump();
        }
        let col = self.col();
        let exp = match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                v
            }
            _ => return Err(self.error(&["unsigned integer exponent"])),
        };
        if braced {
            self.expect(Tok::RBrace, "'}'")?;
        }
        let exp = u32::try_from(&exp)
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| {
                ParseError::new(1, col, format!("exponent {exp} exceeds {MAX_EXPONENT}"))
            })?;
        Ok(pow(&base, exp))
    }

    /// base := integer | 'x' | '(' expr ')'
    fn base(&mut self) -> Result<RatFun> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(RatFun::from_rational(&Rational::from_integer(v)))
            }
            Tok::X => {
                self.bump();
                Ok(RatFun::x())
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error(&["integer", "x", "("])),
        }
    }
}

fn pow(base: &RatFun, exp: u32) -> RatFun {
    let num = base.numer().pow(exp);
    if base.is_polynomial() {
        return RatFun::from_polynomial(num);
    }
    RatFun::new(num, base.denom().pow(exp)).expect("nonzero denominator")
}

/// Parses a univariate rational-function expression in `x`.
///
/// ```text
/// expr   := ['-'] term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := base ('^' uint | '^' '{' uint '}')?
/// base   := integer | 'x' | '(' expr ')'
/// ```
///
/// Juxtaposition is not multiplication (`2x` is an error), and a unary
/// minus is accepted only at the head of an `expr`. Division by a value that
/// is identically zero yields `DivisionByZero`; every other failure is a
/// `ParseError` on line 1 with the column of the offending token.
pub fn parse_ratfun_expr(text: &str) -> Result<RatFun> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let value = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["'+'", "'-'", "'*'", "'/'", "'^'", "end of input"]));
    }
    Ok(value)
}

/// Parses a polynomial expression; fails if the result has a denominator.
pub fn parse_polynomial_expr(text: &str) -> Result<Polynomial> {
    let r = parse_ratfun_expr(text)?;
    if r.is_polynomial() {
        Ok(r.numer())
    } else {
        Err(ParseError::new(1, 1, format!("'{text}' is not a polynomial")).into())
    }
}
