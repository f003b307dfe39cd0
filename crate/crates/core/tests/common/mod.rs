//! Instance generators and an independent expression evaluator shared by the
//! integration and acceptance tests.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use wmpinv::matio::random_spd;
use wmpinv::matrix::Matrix;
use wmpinv::scalar::{Field, Rational};

/// One weighted-inverse problem: `a` is m×n, `left` m×m, `right` n×n.
pub struct Instance<T> {
    pub a: Matrix<T>,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
    /// Rank the instance was built with.
    pub rank: usize,
}

fn int_matrix<T: Field>(rng: &mut ChaCha20Rng, rows: usize, cols: usize, bound: i64) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| {
        T::from_i64(rng.random_range(-bound..=bound))
    })
}

/// Random problem with `1 ≤ m, n ≤ max_dim`. Odd seeds are rank deficient
/// (built as a product through a thinner inner dimension); even seeds are
/// generic and so almost surely of full rank.
pub fn instance<T: wmpinv::matio::FileField>(seed: u64, max_dim: usize) -> Instance<T> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let m = rng.random_range(1..=max_dim);
    let n = rng.random_range(1..=max_dim);
    let full = m.min(n);
    let (a, rank) = if seed % 2 == 1 && full > 1 {
        let r = rng.random_range(1..full);
        let f = int_matrix::<T>(&mut rng, m, r, 4);
        let g = int_matrix::<T>(&mut rng, r, n, 4);
        (f.matmul(&g).expect("inner dimensions agree"), r)
    } else {
        (int_matrix::<T>(&mut rng, m, n, 9), full)
    };
    Instance {
        a,
        left: random_spd(m, seed.wrapping_mul(2).wrapping_add(1_000_000)),
        right: random_spd(n, seed.wrapping_mul(2).wrapping_add(1_000_001)),
        rank,
    }
}

/// Random expression text in the entry grammar. Unary minus is placed only
/// where the grammar allows it: at the head of an expression.
pub fn random_expr(rng: &mut ChaCha20Rng, depth: u32) -> String {
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..3) {
            0 => "x".to_string(),
            _ => rng.random_range(0..30u32).to_string(),
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.random_range(0..7) {
        0 => format!("{a} + {}", random_expr(rng, depth - 1)),
        1 => format!("{a}-{}", wrap(random_expr(rng, depth - 1))),
        2 => format!("{}*{}", wrap(a), wrap(random_expr(rng, depth - 1))),
        3 => format!("{} / {}", wrap(a), wrap(random_expr(rng, depth - 1))),
        4 => format!("{}^{}", wrap(a), rng.random_range(0..4u32)),
        5 => format!("{}^{{{}}}", wrap(a), rng.random_range(0..4u32)),
        _ => format!("(-{})", wrap(a)),
    }
}

fn wrap(s: String) -> String {
    if s.chars().all(|c| c.is_ascii_alphanumeric()) {
        s
    } else {
        format!("({s})")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    X,
    Op(char),
    Neg,
    LParen,
    RParen,
}

fn precedence(t: &Tok) -> u8 {
    match t {
        Tok::Op('+') | Tok::Op('-') => 1,
        Tok::Neg => 2,
        Tok::Op('*') | Tok::Op('/') => 3,
        Tok::Op('^') => 4,
        _ => 0,
    }
}

/// Evaluates `text` at `x = at` by shunting-yard over exact rationals.
///
/// Written independently of the library parser. Returns `None` on any
/// division by zero along the way, including removable singularities.
/// Panics on malformed input.
pub fn eval_expr(text: &str, at: &Rational) -> Option<Rational> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push(Tok::Num(Rational::from_integer(s.parse().unwrap())));
            continue;
        }
        let prev_is_operand = matches!(toks.last(), Some(Tok::Num(_) | Tok::X | Tok::RParen));
        toks.push(match c {
            'x' => Tok::X,
            '(' | '{' => Tok::LParen,
            ')' | '}' => Tok::RParen,
            '-' if !prev_is_operand => Tok::Neg,
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            _ => panic!("unexpected character {c:?} in {text:?}"),
        });
        i += 1;
    }

    let mut output = Vec::new();
    let mut ops: Vec<Tok> = Vec::new();
    for t in toks {
        match t {
            Tok::Num(_) | Tok::X => output.push(t),
            Tok::LParen | Tok::Neg => ops.push(t),
            Tok::RParen => {
                while let Some(top) = ops.pop() {
                    if top == Tok::LParen {
                        break;
                    }
                    output.push(top);
                }
            }
            Tok::Op(c) => {
                let p = precedence(&t);
                while let Some(top) = ops.last() {
                    let q = precedence(top);
                    let pops = *top != Tok::LParen && (q > p || (q == p && c != '^'));
                    if !pops {
                        break;
                    }
                    output.push(ops.pop().unwrap());
                }
                ops.push(t);
            }
        }
    }
    while let Some(top) = ops.pop() {
        output.push(top);
    }

    let mut stack: Vec<Rational> = Vec::new();
    for t in output {
        match t {
            Tok::Num(v) => stack.push(v),
            Tok::X => stack.push(at.clone()),
            Tok::Neg => {
                let v = stack.pop().unwrap();
                stack.push(-v);
            }
            Tok::Op(c) => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(match c {
                    '+' => a + b,
                    '-' => a - b,
                    '*' => a * b,
                    '/' if Zero::is_zero(&b) => return None,
                    '/' => a / b,
                    '^' => {
                        let e: u32 = num_traits::ToPrimitive::to_u32(&b).unwrap();
                        (0..e).fold(<Rational as One>::one(), |acc, _| acc * &a)
                    }
                    _ => unreachable!(),
                });
            }
            _ => unreachable!(),
        }
    }
    assert_eq!(stack.len(), 1, "malformed expression {text:?}");
    stack.pop()
}

/// Sample points used for evaluation agreement.
pub fn sample_points() -> Vec<Rational> {
    [
        (0, 1),
        (1, 1),
        (-1, 1),
        (2, 1),
        (-3, 1),
        (1, 2),
        (-5, 3),
        (7, 4),
    ]
    .into_iter()
    .map(|(n, d)| wmpinv::scalar::rat(n, d))
    .collect()
}
