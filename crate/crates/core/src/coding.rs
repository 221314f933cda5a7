//! Arithmetic coding of pairs and finite sequences of naturals.
//!
//! Pairs use `(m, n) = 2^m (2n + 1) - 1`, a bijection `N x N -> N`.
//! A sequence `<n_0, ..., n_{k-1}>` is coded as
//! `p(k-1) * prod_{i<k} p(i)^{n_i} - 1` with `p(0) = 2, p(1) = 3, ...`, and
//! the empty sequence as `0`. Every natural is the code of exactly one
//! sequence, but the length of that sequence is the index of the largest
//! prime factor of `code + 1`, so decoding is capped at
//! [`MAX_DECODE_LEN`].

use std::fmt;
use std::sync::{Mutex, PoisonError};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::stream::NatStream;

/// Longest sequence [`decode`] will reconstruct.
pub const MAX_DECODE_LEN: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("not a sequence code of length below {limit}: {code}")]
    TooLong { code: BigUint, limit: usize },
}

/// Code of a pair of naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairCode(pub BigUint);

/// Code of a finite sequence of naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqCode(pub BigUint);

impl SeqCode {
    pub const EMPTY: SeqCode = SeqCode(BigUint::ZERO);
}

impl From<u64> for SeqCode {
    fn from(v: u64) -> Self {
        SeqCode(BigUint::from(v))
    }
}

impl From<u64> for PairCode {
    fn from(v: u64) -> Self {
        PairCode(BigUint::from(v))
    }
}

impl fmt::Display for SeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for PairCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn pair(m: u64, n: &BigUint) -> PairCode {
    PairCode((((n << 1u32) + 1u32) << m) - 1u32)
}

/// Inverse of [`pair`]: `(K(c), L(c))`.
pub fn unpair(c: &PairCode) -> (u64, BigUint) {
    let v = &c.0 + 1u32;
    let m = v.trailing_zeros().expect("c + 1 is positive");
    let odd = v >> m;
    (m, (odd - 1u32) >> 1u32)
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `i`-th prime, `p(0) = 2`.
pub fn nth_prime(i: usize) -> u64 {
    let mut primes = PRIMES.lock().unwrap_or_else(PoisonError::into_inner);
    if primes.is_empty() {
        primes.push(2);
    }
    while primes.len() <= i {
        let mut candidate = primes.last().copied().unwrap() + 1;
        while !primes
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| candidate % p != 0)
        {
            candidate += 1;
        }
        primes.push(candidate);
    }
    primes[i]
}

pub fn encode(ns: &[u64]) -> SeqCode {
    if ns.is_empty() {
        return SeqCode::EMPTY;
    }
    let mut acc = BigUint::from(nth_prime(ns.len() - 1));
    for (i, &e) in ns.iter().enumerate() {
        if e > 0 {
            let e = u32::try_from(e).expect("sequence entry too large to encode");
            acc *= BigUint::from(nth_prime(i)).pow(e);
        }
    }
    SeqCode(acc - 1u32)
}

pub fn decode(s: &SeqCode) -> Result<Vec<u64>, CodingError> {
    let mut rest = &s.0 + 1u32;
    if rest.is_one() {
        return Ok(Vec::new());
    }
    let mut exponents: Vec<u64> = Vec::new();
    for i in 0.. {
        if rest.is_one() {
            break;
        }
        if i >= MAX_DECODE_LEN {
            return Err(CodingError::TooLong {
                code: s.0.clone(),
                limit: MAX_DECODE_LEN,
            });
        }
        let p = BigUint::from(nth_prime(i));
        let mut e = 0u64;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&rest, &p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        exponents.push(e);
    }
    // The largest prime carries one extra factor marking the length.
    let last = exponents
        .last_mut()
        .expect("code + 1 > 1 has a prime factor");
    *last -= 1;
    Ok(exponents)
}

pub fn concat(s: &SeqCode, t: &SeqCode) -> Result<SeqCode, CodingError> {
    let mut left = decode(s)?;
    left.extend(decode(t)?);
    Ok(encode(&left))
}

/// `s ⊑ t`: `s` is an initial segment of `t` (not necessarily proper).
pub fn is_prefix(s: &SeqCode, t: &SeqCode) -> Result<bool, CodingError> {
    if s.0.is_zero() {
        return Ok(true);
    }
    let (s, t) = (decode(s)?, decode(t)?);
    Ok(t.starts_with(&s))
}

/// `s ⊥ t`: neither is an initial segment of the other.
pub fn incompatible(s: &SeqCode, t: &SeqCode) -> Result<bool, CodingError> {
    let (s, t) = (decode(s)?, decode(t)?);
    Ok(!t.starts_with(&s) && !s.starts_with(&t))
}

/// Code of the first `m` values of `alpha`.
pub fn prefix_of_stream(alpha: &NatStream, m: u64) -> SeqCode {
    let values: Vec<u64> = (0..m).map(|i| alpha.get(i)).collect();
    encode(&values)
}

/// The `n`-th subsequence `m -> alpha(2^m (2n + 1) - 1)`.
///
/// Panics on reads whose source index does not fit in `u64`.
pub fn subsequence(alpha: &NatStream, n: u64) -> NatStream {
    let alpha = alpha.clone();
    NatStream::from_fn(move |m| {
        let idx = pair(m, &BigUint::from(n))
            .0
            .to_u64()
            .expect("subsequence index exceeds u64");
        alpha.get(idx)
    })
}
