//! Euclid's prime extension, Dickson and almost-full witness searches, and
//! exhaustive finite Ramsey checks.
//!
//! Finite sets are strictly increasing tuples. `[M]^k` is the set of
//! increasing `k`-tuples from `0..M`, always listed in lexicographic order;
//! a colouring of `[M]^k` with `r` colours is numbered by the base-`r`
//! numeral whose digit `j` (least significant first) colours the `j`-th
//! tuple.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::coding::{encode, SeqCode};
use crate::stream::NatStream;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("empty input")]
    Empty,
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("{r}^{slots} colourings exceed the enumeration limit 2^30")]
    TooLarge { r: u64, slots: u64 },
    #[error("sequence is not strictly increasing at index {index}")]
    NotIncreasing { index: u64 },
    #[error("no divisor of {0} found below the trial-division limit")]
    DivisorSearchExhausted(BigUint),
}

/// Largest candidate tried when looking for the least divisor of `lcm + 1`.
pub const DIVISOR_SEARCH_LIMIT: u64 = 1 << 26;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn least_divisor(c: &BigUint) -> Result<BigUint, CombError> {
    if let Some(small) = c.to_u64() {
        let mut d = 2u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                return Ok(d.into());
            }
            d += 1;
        }
        return Ok(c.clone());
    }
    for d in 2..=DIVISOR_SEARCH_LIMIT {
        if (c % d).is_zero() {
            return Ok(d.into());
        }
    }
    Err(CombError::DivisorSearchExhausted(c.clone()))
}

/// A prime outside `qs`: the least divisor greater than 1 of `lcm(qs) + 1`.
pub fn euclid_extend(qs: &[u64]) -> Result<BigUint, CombError> {
    if qs.is_empty() {
        return Err(CombError::Empty);
    }
    if let Some(&bad) = qs.iter().find(|&&q| !is_prime(q)) {
        return Err(CombError::NotPrime(bad));
    }
    let lcm = qs
        .iter()
        .fold(BigUint::one(), |acc, &q| acc.lcm(&BigUint::from(q)));
    least_divisor(&(lcm + 1u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dickson {
    /// `i < j` with `α_k(i) <= α_k(j)` for every `k`.
    Found(usize, usize),
    FuelExhausted,
}

/// Scans `j = 1, 2, ...` and, for each, `i = 0..j`, over indices `< fuel`.
pub fn dickson_witness(seqs: &[NatStream], fuel: usize) -> Result<Dickson, CombError> {
    if seqs.is_empty() {
        return Err(CombError::Empty);
    }
    if fuel < 2 {
        return Err(CombError::InvalidArgs(
            "dickson fuel must be at least 2".into(),
        ));
    }
    for j in 1..fuel {
        for i in 0..j {
            if seqs.iter().all(|a| a.get(i as u64) <= a.get(j as u64)) {
                return Ok(Dickson::Found(i, j));
            }
        }
    }
    Ok(Dickson::FuelExhausted)
}

/// Increasing `k`-tuples of `0..m` in lexicographic order.
pub fn increasing_tuples(m: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut t = Vec::with_capacity(k);
    fn go(start: u64, m: u64, k: usize, t: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if t.len() == k {
            out.push(t.clone());
            return;
        }
        let need = (k - t.len()) as u64;
        for v in start..m {
            if m - v < need {
                break;
            }
            t.push(v);
            go(v + 1, m, k, t, out);
            t.pop();
        }
    }
    go(0, m, k, &mut t, &mut out);
    out
}

/// Index of an increasing `k`-tuple of `0..m` in lexicographic order.
fn lex_rank(t: &[u64], m: u64) -> usize {
    let k = t.len() as u64;
    let mut rank = 0u64;
    let mut prev = 0u64;
    for (pos, &v) in t.iter().enumerate() {
        let left = k - pos as u64 - 1;
        for skipped in prev..v {
            rank += binomial(m - skipped - 1, left);
        }
        prev = v + 1;
    }
    rank as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

type Assign = dyn Fn(&[u64]) -> u64 + Send + Sync;

/// An `r`-colouring of increasing `k`-tuples.
#[derive(Clone)]
pub struct Coloring {
    pub r: u64,
    pub k: usize,
    assign: Arc<Assign>,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coloring")
            .field("r", &self.r)
            .field("k", &self.k)
            .finish_non_exhaustive()
    }
}

impl Coloring {
    pub fn new(r: u64, k: usize, assign: impl Fn(&[u64]) -> u64 + Send + Sync + 'static) -> Self {
        Coloring {
            r,
            k,
            assign: Arc::new(assign),
        }
    }

    /// Colour of the `j`-th tuple of `[m]^k` is `table[j]`.
    pub fn from_table(r: u64, k: usize, m: u64, table: Vec<u64>) -> Self {
        Coloring::new(r, k, move |t| table[lex_rank(t, m)])
    }

    pub fn color(&self, t: &[u64]) -> u64 {
        (self.assign)(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Monochromatic {
    Found { tuple: Vec<u64>, color: u64 },
    NotFound,
}

/// `t ∘ u` for each `u ∈ [len(t)]^k`.
fn sub_tuples(t: &[u64], k: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
    increasing_tuples(t.len() as u64, k)
        .into_iter()
        .map(move |u| u.iter().map(|&i| t[i as usize]).collect())
}

fn mono_color(c: &Coloring, t: &[u64]) -> Option<u64> {
    let mut colors = sub_tuples(t, c.k).map(|s| c.color(&s));
    match colors.next() {
        None => Some(0),
        Some(first) => colors.all(|x| x == first).then_some(first),
    }
}

/// First `t ∈ [m]^n` in lexicographic order on which `c` is constant.
pub fn monochromatic_witness(c: &Coloring, m: u64, n: usize) -> Monochromatic {
    for t in increasing_tuples(m, n) {
        if let Some(color) = mono_color(c, &t) {
            return Monochromatic::Found { tuple: t, color };
        }
    }
    Monochromatic::NotFound
}

/// Candidates for a checker, each given by the slots of its `k`-subtuples.
struct Instance {
    r: u64,
    slots: usize,
    candidates: Vec<Vec<usize>>,
}

impl Instance {
    fn new(m: u64, k: usize, r: u64, tuples: Vec<Vec<u64>>) -> Self {
        let slots = binomial(m, k as u64) as usize;
        let candidates = tuples
            .iter()
            .map(|t| sub_tuples(t, k).map(|s| lex_rank(&s, m)).collect())
            .collect();
        Instance {
            r,
            slots,
            candidates,
        }
    }

    fn digits(&self, mut numeral: u64) -> Vec<u64> {
        (0..self.slots)
            .map(|_| {
                let d = numeral % self.r;
                numeral /= self.r;
                d
            })
            .collect()
    }

    fn has_mono(&self, numeral: u64) -> bool {
        let colors = self.digits(numeral);
        self.candidates
            .iter()
            .any(|slots| match slots.split_first() {
                None => true,
                Some((&first, rest)) => rest.iter().all(|&s| colors[s] == colors[first]),
            })
    }

    /// First colouring numeral without a monochromatic candidate.
    fn counterexample(&self) -> Option<Vec<u64>> {
        let total = self.r.pow(self.slots as u32);
        (0..total)
            .into_par_iter()
            .find_first(|&x| !self.has_mono(x))
            .map(|x| self.digits(x))
    }
}

fn guard(m: u64, n: usize, k: usize, r: u64) -> Result<(), CombError> {
    if m == 0 || n == 0 || k == 0 || r == 0 {
        return Err(CombError::InvalidArgs("M, n, k, r must be positive".into()));
    }
    if !(k <= n && n as u64 <= m) {
        return Err(CombError::InvalidArgs(format!(
            "need k <= n <= M, got k={k} n={n} M={m}"
        )));
    }
    let slots = binomial(m, k as u64);
    let bits = (r as f64).log2() * slots as f64;
    if bits > 30.0 || (r > 1 && slots >= 64) {
        return Err(CombError::TooLarge { r, slots });
    }
    Ok(())
}

/// A colouring of `[M]^k`, as a colour per lexicographic slot, defeating
/// `M -> (n)^k_r`; the first in numeral order.
pub fn arrow_counterexample(
    m: u64,
    n: usize,
    k: usize,
    r: u64,
) -> Result<Option<Vec<u64>>, CombError> {
    guard(m, n, k, r)?;
    Ok(Instance::new(m, k, r, increasing_tuples(m, n)).counterexample())
}

/// `M -> (n)^k_r` by exhaustive enumeration of colourings.
pub fn arrow_check(m: u64, n: usize, k: usize, r: u64) -> Result<bool, CombError> {
    Ok(arrow_counterexample(m, n, k, r)?.is_none())
}

/// Relatively large tuples of `0..m`: `len(t) = t(0) = p` with `n <= p`.
fn relatively_large(m: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for p in n as u64..m {
        for rest in increasing_tuples(m - p - 1, p as usize - 1) {
            let mut t = vec![p];
            t.extend(rest.iter().map(|v| v + p + 1));
            out.push(t);
        }
    }
    out
}

pub fn arrow_star_counterexample(
    m: u64,
    n: usize,
    k: usize,
    r: u64,
) -> Result<Option<Vec<u64>>, CombError> {
    guard(m, n, k, r)?;
    Ok(Instance::new(m, k, r, relatively_large(m, n)).counterexample())
}

/// `M ->* (n)^k_r`: every colouring has a relatively large monochromatic
/// `t` with `len(t) >= n`.
pub fn arrow_star_check(m: u64, n: usize, k: usize, r: u64) -> Result<bool, CombError> {
    Ok(arrow_star_counterexample(m, n, k, r)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlmostFull {
    /// `ζ ∘ s ∈ A`.
    Found(Vec<u64>),
    FuelExhausted,
}

/// Searches increasing `s` over `0..fuel`, shortest first and then
/// lexicographically, for `ζ ∘ s ∈ A`.
pub fn almost_full_witness(
    member: impl Fn(&SeqCode) -> bool,
    zeta: &NatStream,
    fuel: usize,
) -> Result<AlmostFull, CombError> {
    for i in 1..fuel as u64 {
        if zeta.get(i - 1) >= zeta.get(i) {
            return Err(CombError::NotIncreasing { index: i });
        }
    }
    for len in 0..=fuel {
        for s in increasing_tuples(fuel as u64, len) {
            let image: Vec<u64> = s.iter().map(|&i| zeta.get(i)).collect();
            if member(&encode(&image)) {
                return Ok(AlmostFull::Found(s));
            }
        }
    }
    Ok(AlmostFull::FuelExhausted)
}
