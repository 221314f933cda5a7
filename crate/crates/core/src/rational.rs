//! Small helpers around [`BigRational`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// `2^-n` as an exact rational.
pub fn pow2_neg(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << n)
}

/// `2^n` as an exact rational.
pub fn pow2(n: u64) -> Rational {
    Rational::from_integer(BigInt::one() << n)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Smallest `e` with `q <= 2^e`, for `q > 0`. Negative when `q < 1`.
pub fn ceil_log2(q: &Rational) -> i64 {
    assert!(q.is_positive(), "ceil_log2 of a non-positive rational");
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    // Start from a bit-length estimate and fix up by at most a couple of steps.
    let mut e = num.bits() as i64 - den.bits() as i64;
    while !le_pow2(num, den, e) {
        e += 1;
    }
    while le_pow2(num, den, e - 1) {
        e -= 1;
    }
    e
}

// num / den <= 2^e
fn le_pow2(num: &BigUint, den: &BigUint, e: i64) -> bool {
    if e >= 0 {
        *num <= den << (e as u64)
    } else {
        num << ((-e) as u64) <= *den
    }
}

/// Largest `p` with `q < 2^-p`, or `None` when `q >= 1`. Zero maps to `cap`.
pub fn precision_below(q: &Rational, cap: u32) -> Option<u32> {
    if q.is_zero() {
        return Some(cap);
    }
    let q = q.abs();
    if q >= Rational::one() {
        return None;
    }
    // q < 2^-p  <=>  p < -log2(q); with e = ceil_log2(q) <= 0 we get q <= 2^e,
    // so p = -e works when q < 2^e, otherwise p = -e - 1.
    let e = ceil_log2(&q);
    let p = if q < pow2_signed(e) { -e } else { -e - 1 };
    Some((p.max(0) as u32).min(cap))
}

fn pow2_signed(e: i64) -> Rational {
    if e >= 0 {
        pow2(e as u64)
    } else {
        pow2_neg((-e) as u64)
    }
}

/// Parses `a/b`, `a`, or a decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().ok()?,
        };
        let frac_val: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut frac_part = Rational::new(frac_val, scale);
        if negative {
            frac_part = -frac_part;
        }
        return Some(Rational::from_integer(whole) + frac_part);
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Canonical `a/b` rendering: lowest terms, `b >= 1`, sign on the numerator.
pub struct Canonical<'a>(pub &'a Rational);

impl fmt::Display for Canonical<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational is always kept reduced with a positive denominator.
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn canonical(q: &Rational) -> String {
    Canonical(q).to_string()
}
