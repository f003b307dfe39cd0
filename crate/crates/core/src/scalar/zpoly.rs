//! Dense polynomials over ℤ, the representation behind [`RatFun`](super::RatFun).
//!
//! A `ZPoly` is a little-endian coefficient vector with no trailing zeros.
//! The gcd is computed modularly: images modulo 62-bit primes are combined
//! by Chinese remaindering until the candidate divides both inputs.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(v: &mut ZPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn one() -> ZPoly {
    vec![BigInt::one()]
}

pub(crate) fn is_one(a: &[BigInt]) -> bool {
    a.len() == 1 && a[0].is_one()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if is_one(a) {
        return b.to_vec();
    }
    if is_one(b) {
        return a.to_vec();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    if c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x * c).collect()
}

/// `(c, p)` with `a = c·p`, `p` primitive with positive leading coefficient.
/// The zero polynomial gives `(0, [])`.
pub(crate) fn primitive(mut a: ZPoly) -> (BigInt, ZPoly) {
    trim(&mut a);
    let Some(lead) = a.last() else {
        return (BigInt::zero(), a);
    };
    let negative = lead.is_negative();
    let mut c = BigInt::zero();
    for x in &a {
        c = c.gcd(x);
        if c.is_one() {
            break;
        }
    }
    if negative {
        c = -c;
    }
    if !c.is_one() {
        for x in a.iter_mut() {
            *x = &*x / &c;
        }
    }
    (c, a)
}

/// `a / b` when the division is exact in ℤ[x], otherwise `None`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if is_one(b) {
        return Some(a.to_vec());
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[k + j] -= &qk * bj;
            }
        }
        q[k] = qk;
    }
    if r.iter().any(|x| !x.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Exact division known to succeed (by a factor obtained from [`gcd`]).
pub(crate) fn div_by_factor(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    div_exact(a, b).expect("divisor is a factor")
}

pub(crate) fn eval(a: &[BigInt], at: &crate::scalar::Rational) -> crate::scalar::Rational {
    let mut acc = crate::scalar::Rational::zero();
    for c in a.iter().rev() {
        acc = acc * at + crate::scalar::Rational::from_integer(c.clone());
    }
    acc
}

/// Greatest common divisor of two primitive polynomials with positive
/// leading coefficients. The result is primitive with positive leading
/// coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        return one();
    }
    if a == b {
        return a.to_vec();
    }
    modular_gcd(a, b).unwrap_or_else(|| gcd_prs(a, b))
}

/// Primitive pseudo-remainder sequence; slow, kept as the fallback for
/// inputs whose coefficients outgrow the prime table.
pub(crate) fn gcd_prs(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return one();
        }
        let r = primitive(pseudo_rem(&a, &b)).1;
        a = b;
        b = r;
    }
    primitive(a).1
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                r[shift + j] -= &lr * bj;
            }
        }
        trim(&mut r);
    }
    r
}

const PRIME_COUNT: usize = 400;

/// Descending primes below 2^62.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for b in BASES {
        let mut x = powmod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn residue(c: &BigInt, p: u64) -> u64 {
    let r = (c.magnitude() % p).to_u64().expect("residue below p");
    if c.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|c| residue(c, p)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` by nonzero `b` modulo `p`, in place.
fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv_lb = invmod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let f = mulmod(a[top], inv_lb, p);
        if f != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                let t = mulmod(f, bj, p);
                let v = &mut a[shift + j];
                *v = if *v >= t { *v - t } else { *v + p - t };
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Monic gcd modulo `p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = invmod(*a.last().expect("nonzero inputs"), p);
    a.iter().map(|&c| mulmod(c, inv, p)).collect()
}

fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let la = a.last().expect("nonzero");
    let lb = b.last().expect("nonzero");
    let lc_g = la.gcd(lb);
    let max_deg = a.len().min(b.len()) - 1;

    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<ZPoly> = None;

    for &p in primes() {
        if residue(la, p) == 0 || residue(lb, p) == 0 {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(one());
        }
        if d > best_deg {
            continue;
        }
        let scale = residue(&lc_g, p);
        let image: Vec<u64> = g.iter().map(|&c| mulmod(c, scale, p)).collect();
        if d < best_deg {
            best_deg = d;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = BigInt::from(p);
            previous = None;
            continue;
        }
        // Chinese remaindering into [0, modulus·p).
        let m_inv = invmod(residue(&modulus, p), p);
        for (x, &r) in acc.iter_mut().zip(&image) {
            let cur = residue(x, p);
            let diff = if r >= cur { r - cur } else { r + p - cur };
            let t = mulmod(diff, m_inv, p);
            if t != 0 {
                *x += &modulus * t;
            }
        }
        modulus *= p;

        let half = &modulus >> 1;
        let symmetric: ZPoly = acc
            .iter()
            .map(|x| if x > &half { x - &modulus } else { x.clone() })
            .collect();
        if previous.as_ref() == Some(&symmetric) {
            let candidate = primitive(symmetric.clone()).1;
            if candidate.len() - 1 <= max_deg
                && div_exact(a, &candidate).is_some()
                && div_exact(b, &candidate).is_some()
            {
                return Some(candidate);
            }
        }
        previous = Some(symmetric);
    }
    None
}
