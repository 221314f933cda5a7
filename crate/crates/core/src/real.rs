//! Constructive reals as shrinking, dwindling streams of rational intervals.
//!
//! A real `x` is a map `n -> x(n) = (x'(n), x''(n))` with
//! `x'(n) <= x'(n+1) <= x''(n+1) <= x''(n)` (shrinking) and widths falling
//! below every `2^-m` (dwindling). Order is only semi-decidable: `x < y`
//! holds when some index separates the intervals, so searches take fuel and
//! may answer [`Lt::Unknown`]. Equality and `<=` are negative notions and
//! have no decision procedure here.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::memo::Memo;
use crate::rational::{canonical, pow2_neg, ratio, Rational};
use crate::stream::{FugitiveOrder, FugitiveSpec, NatStream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealError {
    #[error("no interval of the requested width among the first {fuel} indices")]
    FuelExhausted { fuel: u64 },
    #[error("bit stream value {value} at index {index} is not 0 or 1")]
    NotBinary { index: u64, value: u64 },
    #[error("input real {input} did not narrow within {budget} indices")]
    BudgetExceeded { input: u64, budget: u64 },
    #[error("interval endpoints out of order: {lo} > {hi}")]
    InvalidInterval { lo: String, hi: String },
    #[error("witness at index {index} does not separate the intervals")]
    InvalidWitness { index: u64 },
    #[error("{0}")]
    Construction(String),
}

/// A closed rational interval `[lo, hi]`; points (`lo = hi`) are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, RealError> {
        if lo > hi {
            return Err(RealError::InvalidInterval {
                lo: canonical(&lo),
                hi: canonical(&hi),
            });
        }
        Ok(RationalInterval { lo, hi })
    }

    pub fn point(q: Rational) -> Self {
        RationalInterval {
            lo: q.clone(),
            hi: q,
        }
    }

    /// `[c - r, c + r]` for `r >= 0`.
    pub fn ball(c: &Rational, r: &Rational) -> Self {
        debug_assert!(!r.is_negative());
        RationalInterval {
            lo: c - r,
            hi: c + r,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// `other ⊆ self`.
    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn add(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn neg(&self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    fn mul(&self, other: &RationalInterval) -> RationalInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        RationalInterval { lo, hi }
    }

    fn abs(&self) -> RationalInterval {
        let zero = Rational::zero();
        let lo = (&zero).max(&self.lo).max(&-&self.hi).clone();
        let hi = self.lo.abs().max(self.hi.abs());
        RationalInterval { lo, hi }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} .. {}", canonical(&self.lo), canonical(&self.hi))
    }
}

type Level = Result<RationalInterval, RealError>;

/// A constructive real. Clones share one interval cache.
#[derive(Clone)]
pub struct CReal {
    memo: Arc<Memo<Level>>,
}

impl fmt::Debug for CReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.interval(0) {
            Ok(i) => write!(f, "CReal({i} ..)"),
            Err(e) => write!(f, "CReal(<{e}>)"),
        }
    }
}

/// Certifies `x < y` by an index `n` with `x''(n) < y'(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LtWitness {
    pub index: u64,
}

impl LtWitness {
    /// Re-reads the raw intervals and checks the separation.
    pub fn verify(&self, x: &CReal, y: &CReal) -> Result<bool, RealError> {
        Ok(x.interval(self.index)?.hi < y.interval(self.index)?.lo)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lt {
    Found(LtWitness),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `x < y`
    Lt,
    /// `y < x`
    Gt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Apart {
    Found(Direction, LtWitness),
    Unknown,
}

/// Outcome of [`cotrans_split`], each side carrying its own witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Split {
    /// `x < z`
    LeftIsLess(LtWitness),
    /// `z < y`
    RightIsLess(LtWitness),
}

impl CReal {
    /// Random-access construction; `f(n)` must be pure.
    pub fn from_fn(f: impl Fn(u64) -> Level + Send + Sync + 'static) -> Self {
        CReal {
            memo: Memo::indexed(f),
        }
    }

    /// Construction where each interval is derived from the previous one.
    pub fn from_steps(
        first: RationalInterval,
        mut step: impl FnMut(u64, &RationalInterval) -> Level + Send + 'static,
    ) -> Self {
        CReal {
            memo: Memo::sequential(move |n, prev: Option<&Level>| match prev {
                None => Ok(first.clone()),
                Some(Ok(prev)) => step(n, prev),
                Some(Err(e)) => Err(e.clone()),
            }),
        }
    }

    pub fn interval(&self, n: u64) -> Level {
        self.memo.get(n)
    }

    pub fn from_rational(q: Rational) -> Self {
        CReal::from_fn(move |n| Ok(RationalInterval::ball(&q, &pow2_neg(n))))
    }

    pub fn zero() -> Self {
        CReal::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        CReal::from_rational(Rational::one())
    }

    fn map(
        &self,
        f: impl Fn(&RationalInterval) -> RationalInterval + Send + Sync + 'static,
    ) -> Self {
        let x = self.clone();
        CReal::from_fn(move |n| Ok(f(&x.interval(n)?)))
    }

    fn zip(
        &self,
        other: &CReal,
        f: impl Fn(&RationalInterval, &RationalInterval) -> RationalInterval + Send + Sync + 'static,
    ) -> Self {
        let (x, y) = (self.clone(), other.clone());
        CReal::from_fn(move |n| Ok(f(&x.interval(n)?, &y.interval(n)?)))
    }

    pub fn add(&self, other: &CReal) -> CReal {
        self.zip(other, RationalInterval::add)
    }

    pub fn neg(&self) -> CReal {
        self.map(RationalInterval::neg)
    }

    pub fn sub(&self, other: &CReal) -> CReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CReal) -> CReal {
        self.zip(other, RationalInterval::mul)
    }

    pub fn abs(&self) -> CReal {
        self.map(RationalInterval::abs)
    }

    /// First interval among indices `0..fuel` of width at most `2^-p`.
    pub fn approx(&self, p: u32, fuel: u64) -> Result<RationalInterval, RealError> {
        let target = pow2_neg(p.into());
        for n in 0..fuel {
            let i = self.interval(n)?;
            if i.width() <= target {
                return Ok(i);
            }
        }
        Err(RealError::FuelExhausted { fuel })
    }

    /// Looks for `n < fuel` with `self''(n) < other'(n)`.
    pub fn try_lt(&self, other: &CReal, fuel: u64) -> Result<Lt, RealError> {
        for n in 0..fuel {
            if self.interval(n)?.hi < other.interval(n)?.lo {
                return Ok(Lt::Found(LtWitness { index: n }));
            }
        }
        Ok(Lt::Unknown)
    }

    pub fn try_apart(&self, other: &CReal, fuel: u64) -> Result<Apart, RealError> {
        for n in 0..fuel {
            let (x, y) = (self.interval(n)?, other.interval(n)?);
            if x.hi < y.lo {
                return Ok(Apart::Found(Direction::Lt, LtWitness { index: n }));
            }
            if y.hi < x.lo {
                return Ok(Apart::Found(Direction::Gt, LtWitness { index: n }));
            }
        }
        Ok(Apart::Unknown)
    }
}

impl std::ops::Add for &CReal {
    type Output = CReal;
    fn add(self, rhs: &CReal) -> CReal {
        CReal::add(self, rhs)
    }
}

impl std::ops::Sub for &CReal {
    type Output = CReal;
    fn sub(self, rhs: &CReal) -> CReal {
        CReal::sub(self, rhs)
    }
}

impl std::ops::Mul for &CReal {
    type Output = CReal;
    fn mul(self, rhs: &CReal) -> CReal {
        CReal::mul(self, rhs)
    }
}

impl std::ops::Neg for &CReal {
    type Output = CReal;
    fn neg(self) -> CReal {
        CReal::neg(self)
    }
}

pub fn from_rational(q: Rational) -> CReal {
    CReal::from_rational(q)
}

pub fn approx(x: &CReal, p: u32, fuel: u64) -> Result<RationalInterval, RealError> {
    x.approx(p, fuel)
}

pub fn try_lt(x: &CReal, y: &CReal, fuel: u64) -> Result<Lt, RealError> {
    x.try_lt(y, fuel)
}

pub fn try_apart(x: &CReal, y: &CReal, fuel: u64) -> Result<Apart, RealError> {
    x.try_apart(y, fuel)
}

/// Decides `x < z` or `z < y` from a witness of `x < y`.
///
/// Scans `n >= n0` until `z(n)` is narrower than the gap `y'(n0) - x''(n0)`;
/// `x < z` is tried first. Terminates whenever `z` dwindles.
pub fn cotrans_split(x: &CReal, y: &CReal, w: LtWitness, z: &CReal) -> Result<Split, RealError> {
    let n0 = w.index;
    let x_hi = x.interval(n0)?.hi;
    let y_lo = y.interval(n0)?.lo;
    let gap = &y_lo - &x_hi;
    if !gap.is_positive() {
        return Err(RealError::InvalidWitness { index: n0 });
    }
    let mut n = n0;
    loop {
        let zi = z.interval(n)?;
        if zi.width() < gap {
            // x''(n) <= x''(n0) and y'(n0) <= y'(n), so index n works for both.
            let witness = LtWitness { index: n };
            return Ok(if x_hi < zi.lo {
                Split::LeftIsLess(witness)
            } else {
                Split::RightIsLess(witness)
            });
        }
        n += 1;
    }
}

/// Default per-input search budget of [`diagonal`]: `4 (n + 2)` indices.
pub fn default_diagonal_budget(n: u64) -> u64 {
    4 * (n + 2)
}

/// A real apart from every `xs(n)`.
///
/// `x(0) = (0, 1)`; step `n` finds the first `m0` where `xs(n)` is narrower
/// than a third of `x(n)` and keeps the left third when `xs(n)` lies beyond
/// it, otherwise the right third.
pub fn diagonal(xs: impl Fn(u64) -> CReal + Send + 'static) -> CReal {
    diagonal_with_budget(xs, default_diagonal_budget)
}

pub fn diagonal_with_budget(
    xs: impl Fn(u64) -> CReal + Send + 'static,
    budget: impl Fn(u64) -> u64 + Send + 'static,
) -> CReal {
    let first = RationalInterval {
        lo: Rational::zero(),
        hi: Rational::one(),
    };
    let (one_third, two_thirds) = (ratio(1, 3), ratio(2, 3));
    CReal::from_steps(first, move |step, prev| {
        let n = step - 1;
        let (a, b) = (&prev.lo, &prev.hi);
        let third = prev.width() * &one_third;
        let input = xs(n);
        let limit = budget(n);
        let mut m0 = None;
        for m in 0..limit {
            let i = input.interval(m)?;
            if i.width() < third {
                m0 = Some(i);
                break;
            }
        }
        let i = m0.ok_or(RealError::BudgetExceeded {
            input: n,
            budget: limit,
        })?;
        let t1 = a * &two_thirds + b * &one_third;
        Ok(if t1 < i.lo {
            RationalInterval {
                lo: a.clone(),
                hi: t1,
            }
        } else {
            RationalInterval {
                lo: a * &one_third + b * &two_thirds,
                hi: b.clone(),
            }
        })
    })
}

/// `√2` by dyadic bisection of `q ↦ q² - 2` on `[1, 2]`; width `2^-n`.
pub fn sqrt2() -> CReal {
    let two = Rational::from_integer(2.into());
    CReal::from_steps(
        RationalInterval {
            lo: Rational::one(),
            hi: two.clone(),
        },
        move |_, prev| {
            let m = prev.midpoint();
            Ok(if &m * &m < two {
                RationalInterval {
                    lo: m,
                    hi: prev.hi.clone(),
                }
            } else {
                RationalInterval {
                    lo: prev.lo.clone(),
                    hi: m,
                }
            })
        },
    )
}

/// `p` with `|√2 - m/n| >= 1/p`: `2` when `m/n > 2`, else `4n²`.
pub fn sqrt2_irrationality_witness(m: u64, n: u64) -> BigUint {
    assert!(m >= 1 && n >= 1, "witness needs positive m and n");
    if m > 2 * n {
        BigUint::from(2u32)
    } else {
        BigUint::from(n).pow(2) * 4u32
    }
}

fn oscillating(
    f: &FugitiveSpec,
    pinned: impl Fn(u64) -> Rational + Send + Sync + 'static,
) -> CReal {
    let f = f.clone();
    CReal::from_fn(move |n| {
        Ok(match f.compare(n) {
            FugitiveOrder::Greater => RationalInterval::ball(&Rational::zero(), &pow2_neg(n)),
            FugitiveOrder::AtMost => {
                let k = f.resolved_by(n).expect("indicator fired at or before n");
                RationalInterval::point(pinned(k))
            }
        })
    })
}

/// `ρ₀ = (1/2)^k`, indistinguishable from `0` until `k` is found.
pub fn rho0(f: &FugitiveSpec) -> CReal {
    oscillating(f, pow2_neg)
}

/// `ρ₁ = (-1/2)^k`.
pub fn rho1(f: &FugitiveSpec) -> CReal {
    oscillating(f, |k| {
        let v = pow2_neg(k);
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    })
}

/// `ρ₂ = ρ₀ + ρ₁`: `2^(1-k)` for even `k`, `0` for odd.
pub fn rho2(f: &FugitiveSpec) -> CReal {
    rho0(f).add(&rho1(f))
}

/// The point of `[0, 1]` coded by a 0/1 stream: left and right thirds are
/// removed as in the Cantor set, so interval `n` has width `(2/3)^n`.
pub fn cantor_point(bits: &NatStream) -> CReal {
    let bits = bits.clone();
    let (one_third, two_thirds) = (ratio(1, 3), ratio(2, 3));
    CReal::from_steps(
        RationalInterval {
            lo: Rational::zero(),
            hi: Rational::one(),
        },
        move |step, prev| {
            let index = step - 1;
            let (a, b) = (&prev.lo, &prev.hi);
            match bits.get(index) {
                0 => Ok(RationalInterval {
                    lo: a.clone(),
                    hi: a * &one_third + b * &two_thirds,
                }),
                1 => Ok(RationalInterval {
                    lo: a * &two_thirds + b * &one_third,
                    hi: b.clone(),
                }),
                value => Err(RealError::NotBinary { index, value }),
            }
        },
    )
}
