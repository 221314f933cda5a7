//! Infinite sequences of naturals, the decimal digits of π, and fugitive
//! numbers read off 0/1 indicator streams.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::memo::Memo;

/// A total, lazily evaluated, memoized sequence `N -> N`.
///
/// Generators must be pure; reading the same index twice must give the same
/// value. Clones share one cache.
#[derive(Clone)]
pub struct NatStream {
    memo: Arc<Memo<u64>>,
}

impl NatStream {
    /// Random-access stream; values are cached per index.
    pub fn from_fn(f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        NatStream {
            memo: Memo::indexed(f),
        }
    }

    /// Stream backed by an iterator, consumed in order as indices are read.
    ///
    /// Panics on a read past the end of a finite iterator.
    pub fn from_iterator<I>(iter: I) -> Self
    where
        I: Iterator<Item = u64> + Send + 'static,
    {
        let mut iter = iter;
        NatStream {
            memo: Memo::sequential(move |n, _| {
                iter.next()
                    .unwrap_or_else(|| panic!("stream iterator ended at index {n}"))
            }),
        }
    }

    /// A finite list continued by repeating its last value (0 if empty).
    pub fn eventually_constant(prefix: Vec<u64>) -> Self {
        let tail = prefix.last().copied().unwrap_or(0);
        NatStream::from_fn(move |n| {
            usize::try_from(n)
                .ok()
                .and_then(|i| prefix.get(i).copied())
                .unwrap_or(tail)
        })
    }

    pub fn constant(value: u64) -> Self {
        NatStream::from_fn(move |_| value)
    }

    pub fn get(&self, n: u64) -> u64 {
        self.memo.get(n)
    }

    pub fn prefix(&self, len: u64) -> Vec<u64> {
        (0..len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for NatStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatStream{:?}..", self.prefix(8))
    }
}

/// Gibbons' unbounded spigot: yields 3, 1, 4, 1, 5, ... without a fixed
/// precision. Each state is a linear fractional transformation `(q, r, t)`
/// applied to the tail of Lambert's series.
struct PiSpigot {
    q: BigInt,
    r: BigInt,
    t: BigInt,
    k: u64,
    n: u64,
    l: u64,
}

impl PiSpigot {
    fn new() -> Self {
        PiSpigot {
            q: 1u32.into(),
            r: BigInt::zero(),
            t: 1u32.into(),
            k: 1,
            n: 3,
            l: 3,
        }
    }
}

impl Iterator for PiSpigot {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            // The next digit is safe once 4q + r - t < n t.
            if &self.q * 4u32 + &self.r < &self.t * (self.n + 1) {
                let digit = self.n;
                let nt = &self.t * self.n;
                let new_n = ((&self.q * 3u32 + &self.r) * 10u32 / &self.t)
                    .to_u64()
                    .expect("spigot digit fits")
                    - 10 * digit;
                self.r = (&self.r - nt) * 10u32;
                self.q *= 10u32;
                self.n = new_n;
                return Some(digit);
            }
            let l = BigInt::from(self.l);
            let new_n = (&self.q * (7 * self.k + 2) + &self.r * &l) / (&self.t * &l);
            self.r = (&self.q * 2u32 + &self.r) * &l;
            self.q *= self.k;
            self.t *= &l;
            self.k += 1;
            self.n = new_n.to_u64().expect("spigot digit fits");
            self.l += 2;
        }
    }
}

/// Decimal digits of π after the point: `π = 3 + Σ d(n) 10^(-n-1)`.
pub fn pi_digits() -> NatStream {
    NatStream::from_iterator(PiSpigot::new().skip(1))
}

/// A fugitive number, known only through bounded comparisons: it is the
/// least `j` with `indicator(j) != 0`, if there is one.
#[derive(Clone, Debug)]
pub struct FugitiveSpec {
    pub indicator: NatStream,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FugitiveOrder {
    /// `k <= n`: the indicator fired at some `j <= n`.
    AtMost,
    /// `n < k`: the indicator is zero on `0..=n`.
    Greater,
}

impl FugitiveSpec {
    pub fn new(indicator: NatStream) -> Self {
        FugitiveSpec { indicator }
    }

    /// Fires exactly at `k`; `None` never fires.
    pub fn firing_at(k: Option<u64>) -> Self {
        FugitiveSpec::new(NatStream::from_fn(move |j| u64::from(Some(j) == k)))
    }

    /// Reads exactly the indices `0..=n`.
    pub fn compare(&self, n: u64) -> FugitiveOrder {
        if (0..=n).any(|j| self.indicator.get(j) != 0) {
            FugitiveOrder::AtMost
        } else {
            FugitiveOrder::Greater
        }
    }

    /// `n = k`: `n` is the least index where the indicator fires.
    pub fn equals(&self, n: u64) -> bool {
        self.indicator.get(n) != 0 && (0..n).all(|j| self.indicator.get(j) == 0)
    }

    /// The firing index if it is at most `n`.
    pub fn resolved_by(&self, n: u64) -> Option<u64> {
        (0..=n).find(|&j| self.indicator.get(j) != 0)
    }
}

pub fn fugitive_compare(f: &FugitiveSpec, n: u64) -> FugitiveOrder {
    f.compare(n)
}

pub fn fugitive_equal(f: &FugitiveSpec, n: u64) -> bool {
    f.equals(n)
}

/// Indicator of positions `j` that start a run of `run_length` copies of
/// `digit` in `digits`.
pub fn pattern_indicator(digits: &NatStream, digit: u64, run_length: u64) -> FugitiveSpec {
    assert!(run_length >= 1, "run length must be positive");
    let digits = digits.clone();
    FugitiveSpec::new(NatStream::from_fn(move |j| {
        u64::from((j..j + run_length).all(|i| digits.get(i) == digit))
    }))
}

/// Outcome of a budgeted hunt for a digit run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hunt {
    Found(u64),
    /// No run lies entirely within the first `digits_read` digits.
    Unresolved {
        digits_read: u64,
    },
}

/// Looks for the first run of `run_length` copies of `digit` using only the
/// first `budget` digits of π.
pub fn hunt_pi(digit: u64, run_length: u64, budget: u64) -> Hunt {
    let digits = pi_digits();
    let spec = pattern_indicator(&digits, digit, run_length);
    if budget < run_length {
        return Hunt::Unresolved {
            digits_read: budget,
        };
    }
    match spec.resolved_by(budget - run_length) {
        Some(j) => Hunt::Found(j),
        None => Hunt::Unresolved {
            digits_read: budget,
        },
    }
}
