//! Continuous maps on `[0, 1]` and three constructive intermediate value
//! procedures.
//!
//! A [`ContinuousMap`] is given by interval enclosures together with a
//! modulus of uniform continuity; the modulus is what lets the searches
//! below stop at an a-priori depth with a checkable certificate.
//!
//! * [`approx_ivt`]: bisection to `|f(x) - y| < 2^-p`, no side conditions.
//! * [`ivt_locally_nonconstant`]: thirds construction driven by an oracle
//!   that finds points where `f` is apart from `y`.
//! * [`ivt_countable_exceptions`]: bisection driven by apartness witnesses
//!   for `f(q_n)` against `y`, with `q_n` the enumeration [`rational_enum`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{canonical, ceil_log2, pow2_neg, precision_below, ratio, Rational};
use crate::real::{
    rho0, rho1, rho2, Apart, CReal, Direction, LtWitness, RationalInterval, RealError,
};
use crate::stream::FugitiveSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IvtError {
    #[error(transparent)]
    Real(#[from] RealError),
    #[error("invalid piecewise-linear spec: {0}")]
    InvalidSpec(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("oracle found no apart point in ({lo}, {hi})")]
    OracleFailed { lo: String, hi: String },
    #[error("step {step}: {reason}")]
    WitnessRejected { step: u64, reason: String },
    #[error("no certificate for precision {p}")]
    Uncertified { p: u32 },
}

type Enclose = dyn Fn(&RationalInterval, u32) -> Result<RationalInterval, RealError> + Send + Sync;
type Modulus = dyn Fn(u32) -> u32 + Send + Sync;

/// A continuous `f: [0, 1] -> R`.
///
/// `enclose(I, p)` must contain `f(I)` and, for a point interval, have width
/// at most `2^-p`. Inputs within `2^-modulus(p)` of each other must have
/// images within `2^-p`.
#[derive(Clone)]
pub struct ContinuousMap {
    enclose: Arc<Enclose>,
    modulus: Arc<Modulus>,
}

impl fmt::Debug for ContinuousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousMap").finish_non_exhaustive()
    }
}

impl ContinuousMap {
    pub fn new(
        enclose: impl Fn(&RationalInterval, u32) -> Result<RationalInterval, RealError>
            + Send
            + Sync
            + 'static,
        modulus: impl Fn(u32) -> u32 + Send + Sync + 'static,
    ) -> Self {
        ContinuousMap {
            enclose: Arc::new(enclose),
            modulus: Arc::new(modulus),
        }
    }

    pub fn enclose(&self, input: &RationalInterval, p: u32) -> Result<RationalInterval, RealError> {
        (self.enclose)(input, p)
    }

    pub fn modulus(&self, p: u32) -> u32 {
        (self.modulus)(p)
    }

    /// `f(q)` as a real: interval `k` is `enclose([q, q], k)`, intersected
    /// with its predecessor so the stream shrinks for any lawful map.
    pub fn image_of(&self, q: &Rational) -> CReal {
        let f = self.clone();
        let point = RationalInterval::point(q.clone());
        let first = match f.enclose(&point, 0) {
            Ok(i) => i,
            Err(e) => return CReal::from_fn(move |_| Err(e.clone())),
        };
        CReal::from_steps(first, move |k, prev| {
            let next = f.enclose(&point, k as u32)?;
            RationalInterval::new(next.lo.max(prev.lo.clone()), next.hi.min(prev.hi.clone()))
                .map_err(|_| RealError::Construction("enclosures of one point are disjoint".into()))
        })
    }
}

/// Nodes `0 = t_0 < ... < t_r = 1` with real values.
#[derive(Clone, Debug)]
pub struct PiecewiseLinearSpec {
    breakpoints: Vec<Rational>,
    values: Vec<CReal>,
}

impl PiecewiseLinearSpec {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<CReal>) -> Result<Self, IvtError> {
        if breakpoints.len() < 2 || breakpoints.len() != values.len() {
            return Err(IvtError::InvalidSpec(format!(
                "{} breakpoints for {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if !breakpoints[0].is_zero() || !breakpoints.last().is_some_and(One::is_one) {
            return Err(IvtError::InvalidSpec(
                "breakpoints must run from 0 to 1".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(IvtError::InvalidSpec(
                "breakpoints must increase strictly".into(),
            ));
        }
        Ok(PiecewiseLinearSpec {
            breakpoints,
            values,
        })
    }

    /// Rational node values, embedded as reals.
    pub fn rational(nodes: &[(Rational, Rational)]) -> Result<Self, IvtError> {
        let (ts, vs) = nodes
            .iter()
            .map(|(t, v)| (t.clone(), CReal::from_rational(v.clone())))
            .unzip();
        PiecewiseLinearSpec::new(ts, vs)
    }
}

/// Extra scan length given to node approximations beyond the target index.
pub const NODE_FUEL_SLACK: u64 = 64;

fn node_fuel(p: u32) -> u64 {
    u64::from(p) + 2 + NODE_FUEL_SLACK
}

/// Piecewise-linear interpolation of the nodes.
///
/// Node values are approximated at precision `p + 2`; the enclosure of an
/// interval is the hull of the enclosures at its endpoints and at the
/// breakpoints it contains.
pub fn pwl(spec: PiecewiseLinearSpec) -> Result<ContinuousMap, IvtError> {
    let slope = slope_bound(&spec)?;
    let extra = if slope.is_positive() {
        ceil_log2(&slope).max(0) as u32
    } else {
        0
    };
    let spec = Arc::new(spec);
    Ok(ContinuousMap::new(
        move |input, p| pwl_enclose(&spec, input, p),
        move |p| p + extra,
    ))
}

fn slope_bound(spec: &PiecewiseLinearSpec) -> Result<Rational, IvtError> {
    let nodes: Vec<RationalInterval> = spec
        .values
        .iter()
        .map(|v| v.approx(4, node_fuel(4)))
        .collect::<Result<_, _>>()?;
    let mut bound = Rational::zero();
    for i in 0..nodes.len() - 1 {
        let dt = &spec.breakpoints[i + 1] - &spec.breakpoints[i];
        let rise = (&nodes[i + 1].hi - &nodes[i].lo)
            .abs()
            .max((&nodes[i + 1].lo - &nodes[i].hi).abs());
        bound = bound.max(rise / dt);
    }
    Ok(bound)
}

fn pwl_enclose(
    spec: &PiecewiseLinearSpec,
    input: &RationalInterval,
    p: u32,
) -> Result<RationalInterval, RealError> {
    if input.lo.is_negative() || input.hi > Rational::one() {
        return Err(RealError::Construction(format!(
            "input {input} leaves [0, 1]"
        )));
    }
    let nodes: Vec<RationalInterval> = spec
        .values
        .iter()
        .map(|v| v.approx(p + 2, node_fuel(p)))
        .collect::<Result<_, _>>()?;
    let at = |t: &Rational| point_value(&spec.breakpoints, &nodes, t);
    let mut hull = at(&input.lo);
    hull = hull.hull(&at(&input.hi));
    for t in &spec.breakpoints {
        if &input.lo < t && t < &input.hi {
            hull = hull.hull(&at(t));
        }
    }
    Ok(hull)
}

fn point_value(ts: &[Rational], nodes: &[RationalInterval], t: &Rational) -> RationalInterval {
    let i = ts
        .windows(2)
        .position(|w| t <= &w[1])
        .expect("t lies in [0, 1]");
    let lambda = (t - &ts[i]) / (&ts[i + 1] - &ts[i]);
    let keep = Rational::one() - &lambda;
    RationalInterval {
        lo: &keep * &nodes[i].lo + &lambda * &nodes[i + 1].lo,
        hi: &keep * &nodes[i].hi + &lambda * &nodes[i + 1].hi,
    }
}

pub fn identity() -> ContinuousMap {
    pwl(
        PiecewiseLinearSpec::rational(&[(ratio(0, 1), ratio(0, 1)), (ratio(1, 1), ratio(1, 1))])
            .expect("valid"),
    )
    .expect("rational nodes")
}

fn half_plus(x: CReal) -> CReal {
    CReal::from_rational(ratio(1, 2)).add(&x)
}

/// `0, 1/3, 2/3, 1 ↦ 0, 1/2 + ρ₁, 1/2 + ρ₁, 1`.
pub fn f0(f: &FugitiveSpec) -> ContinuousMap {
    let mid = half_plus(rho1(f));
    let spec = PiecewiseLinearSpec::new(
        vec![ratio(0, 1), ratio(1, 3), ratio(2, 3), ratio(1, 1)],
        vec![CReal::zero(), mid.clone(), mid, CReal::one()],
    )
    .expect("valid breakpoints");
    pwl(spec).expect("nodes of f0 approximate quickly")
}

/// `0, 1/2, 1 ↦ 0, ρ₀, ρ₂`.
pub fn f1(f: &FugitiveSpec) -> ContinuousMap {
    let spec = PiecewiseLinearSpec::new(
        vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)],
        vec![CReal::zero(), rho0(f), rho2(f)],
    )
    .expect("valid breakpoints");
    pwl(spec).expect("nodes of f1 approximate quickly")
}

/// `0, 1/5, 2/5, 3/5, 4/5, 1 ↦ 0, 1/2 + ρ₁, 1/2 + ρ₁, 1/2 + ρ₃, 1/2 + ρ₃, 1`
/// where `ρ₃` is `ρ₁` for the second fugitive `g`.
pub fn f2(f: &FugitiveSpec, g: &FugitiveSpec) -> ContinuousMap {
    let (a, b) = (half_plus(rho1(f)), half_plus(rho1(g)));
    let spec = PiecewiseLinearSpec::new(
        (0..=5).map(|i| ratio(i, 5)).collect(),
        vec![CReal::zero(), a.clone(), a, b.clone(), b, CReal::one()],
    )
    .expect("valid breakpoints");
    pwl(spec).expect("nodes of f2 approximate quickly")
}

/// Evidence that `|f(x) - y| <= bound` for the point `x` determined by the
/// returned real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// An interval of the returned real, containing `x`.
    pub x: RationalInterval,
    /// Encloses `f(X) - y`.
    pub residual: RationalInterval,
    pub bound: Rational,
    /// Largest `p` with `bound < 2^-p`, if `bound < 1`.
    pub precision: Option<u32>,
}

impl Certificate {
    pub fn holds(&self, p: u32) -> bool {
        self.bound < pow2_neg(p.into())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x in {}; f(x) - y in {}", self.x, self.residual)
    }
}

/// Independent check: encloses `f` on `x_interval` and `y` at precision
/// `e`, and bounds their difference.
pub fn certify(
    f: &ContinuousMap,
    x_interval: &RationalInterval,
    y: &CReal,
    e: u32,
    fuel: u64,
) -> Result<Certificate, RealError> {
    let fx = f.enclose(x_interval, e)?;
    let yy = y.approx(e, fuel)?;
    let residual = RationalInterval {
        lo: &fx.lo - &yy.hi,
        hi: &fx.hi - &yy.lo,
    };
    let bound = residual.lo.abs().max(residual.hi.abs());
    let precision = precision_below(&bound, e);
    Ok(Certificate {
        x: x_interval.clone(),
        residual,
        bound,
        precision,
    })
}

#[derive(Clone, Debug)]
pub struct IvtResult {
    pub x: CReal,
    /// Index of the interval used for the certificate.
    pub depth: u64,
    pub certificate: Certificate,
}

/// Computes `x(1..=depth)` eagerly with typed errors, then continues lazily.
fn realize(
    depth: u64,
    mut step: impl FnMut(u64, &RationalInterval) -> Result<RationalInterval, IvtError> + Send + 'static,
) -> Result<(CReal, RationalInterval), IvtError> {
    let mut prefix = vec![RationalInterval {
        lo: Rational::zero(),
        hi: Rational::one(),
    }];
    for n in 1..=depth {
        let next = step(n, prefix.last().expect("non-empty"))?;
        prefix.push(next);
    }
    let last = prefix.last().expect("non-empty").clone();
    let first = prefix[0].clone();
    let x = CReal::from_steps(first, move |n, prev| match prefix.get(n as usize) {
        Some(i) => Ok(i.clone()),
        None => step(n, prev).map_err(|e| match e {
            IvtError::Real(e) => e,
            other => RealError::Construction(other.to_string()),
        }),
    });
    Ok((x, last))
}

/// Largest precision whose residual check passes at `x_interval`.
fn best_certificate(
    f: &ContinuousMap,
    x_interval: &RationalInterval,
    y: &CReal,
    fuel: u64,
) -> Result<Certificate, RealError> {
    let bits = precision_below(&x_interval.width(), 4096).unwrap_or(0);
    certify(f, x_interval, y, bits + 4, fuel)
}

/// One bisection run at internal precision `q`.
fn bisect(
    f: &ContinuousMap,
    y: &CReal,
    q: u32,
    depth: u64,
    fuel: u64,
) -> Result<(CReal, RationalInterval), IvtError> {
    let (f, y) = (f.clone(), y.clone());
    let tol = pow2_neg(u64::from(q) + 1);
    realize(depth, move |_, prev| {
        let m = prev.midpoint();
        let z = f.image_of(&m);
        let mut level = None;
        for k in 0..fuel {
            let (zk, yk) = (z.interval(k)?, y.interval(k)?);
            if zk.width() < tol && yk.width() < tol {
                level = Some((zk, yk));
                break;
            }
        }
        let (s, yl) = level.ok_or(RealError::FuelExhausted { fuel })?;
        Ok(if s.hi < &yl.lo + &tol {
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
    })
}

/// How far beyond `p` the internal bisection precision may be raised when
/// enclosure slack keeps the run at `p` from certifying.
pub const APPROX_IVT_EXTRA_PRECISION: u32 = 12;

/// `x` with `|f(x) - y| < 2^-p`, given `f(0) <= y <= f(1)`.
///
/// Bisects on `[0, 1]` to depth `modulus(p + 1) + 2`, keeping the right
/// half whenever `f(m)` is not clearly above `y`. The returned certificate
/// is recomputed from `enclose` and `approx` alone.
pub fn approx_ivt(f: &ContinuousMap, y: &CReal, p: u32, fuel: u64) -> Result<IvtResult, IvtError> {
    let e = p + 4;
    let (left, right) = (
        f.enclose(&RationalInterval::point(Rational::zero()), e)?,
        f.enclose(&RationalInterval::point(Rational::one()), e)?,
    );
    let yy = y.approx(e, fuel)?;
    if left.lo > yy.hi || yy.lo > right.hi {
        return Err(IvtError::PreconditionFailed(format!(
            "need f(0) <= y <= f(1); f(0) in {left}, y in {yy}, f(1) in {right}"
        )));
    }
    for q in p..=p + APPROX_IVT_EXTRA_PRECISION {
        let depth = u64::from(f.modulus(q + 1)) + 2;
        let (x, last) = bisect(f, y, q, depth, fuel)?;
        let certificate = certify(f, &last, y, e, fuel)?;
        if certificate.holds(p) {
            return Ok(IvtResult {
                x,
                depth,
                certificate,
            });
        }
    }
    Err(IvtError::Uncertified { p })
}

/// A point `q` strictly inside `(lo, hi)` with `f(q) # y`, as claimed by a
/// caller-supplied oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApartPoint {
    pub q: Rational,
    pub direction: Direction,
    /// Separates `f(q)` and `y` in `direction`.
    pub witness: LtWitness,
}

fn verify_apart(
    f: &ContinuousMap,
    y: &CReal,
    q: &Rational,
    direction: Direction,
    witness: LtWitness,
    step: u64,
) -> Result<(), IvtError> {
    let fq = f.image_of(q);
    let ok = match direction {
        Direction::Lt => witness.verify(&fq, y)?,
        Direction::Gt => witness.verify(y, &fq)?,
    };
    if ok {
        Ok(())
    } else {
        Err(IvtError::WitnessRejected {
            step,
            reason: format!(
                "index {} does not separate f({}) from y",
                witness.index,
                canonical(q)
            ),
        })
    }
}

/// Thirds construction: each round asks the oracle for `q` in the middle
/// third of `x(n)` with `f(q) # y`, then keeps `(q, hi)` if `f(q) < y` and
/// `(lo, q)` otherwise, so `width(x(n)) <= (2/3)^n`.
pub fn ivt_locally_nonconstant(
    f: &ContinuousMap,
    y: &CReal,
    oracle: impl Fn(&Rational, &Rational) -> Option<ApartPoint> + Send + 'static,
    depth: u64,
    fuel: u64,
) -> Result<IvtResult, IvtError> {
    let (fm, ym) = (f.clone(), y.clone());
    let (one_third, two_thirds) = (ratio(1, 3), ratio(2, 3));
    let (x, last) = realize(depth, move |n, prev| {
        let lo = &prev.lo * &two_thirds + &prev.hi * &one_third;
        let hi = &prev.lo * &one_third + &prev.hi * &two_thirds;
        let point = oracle(&lo, &hi).ok_or_else(|| IvtError::OracleFailed {
            lo: canonical(&lo),
            hi: canonical(&hi),
        })?;
        if !(lo < point.q && point.q < hi) {
            return Err(IvtError::WitnessRejected {
                step: n,
                reason: format!("{} is outside the middle third", canonical(&point.q)),
            });
        }
        verify_apart(&fm, &ym, &point.q, point.direction, point.witness, n)?;
        Ok(match point.direction {
            Direction::Lt => RationalInterval {
                lo: point.q,
                hi: prev.hi.clone(),
            },
            Direction::Gt => RationalInterval {
                lo: prev.lo.clone(),
                hi: point.q,
            },
        })
    })?;
    let certificate = best_certificate(f, &last, y, fuel)?;
    Ok(IvtResult {
        x,
        depth,
        certificate,
    })
}

/// How many candidate points [`rational_search_oracle`] tries per round.
pub const SEARCH_CANDIDATES: u64 = 64;

/// An oracle that tries the rationals `lo + j (hi - lo) / (c + 1)` for
/// `c = 1, 2, ...` and `1 <= j <= c`, comparing `f(q)` with `y` using
/// `fuel` indices each.
pub fn rational_search_oracle(
    f: &ContinuousMap,
    y: &CReal,
    fuel: u64,
) -> impl Fn(&Rational, &Rational) -> Option<ApartPoint> + Send + 'static {
    let (f, y) = (f.clone(), y.clone());
    move |lo, hi| {
        let mut tried = 0;
        for c in 1.. {
            for j in 1..=c {
                if tried == SEARCH_CANDIDATES {
                    return None;
                }
                tried += 1;
                let q = lo + (hi - lo) * ratio(j, c + 1);
                if let Ok(Apart::Found(direction, witness)) = f.image_of(&q).try_apart(&y, fuel) {
                    return Some(ApartPoint {
                        q,
                        direction,
                        witness,
                    });
                }
            }
        }
        None
    }
}

/// Index of `a/d` in the enumeration of `[0, 1] ∩ Q` that lists
/// `0/1, 1/1, 0/2, 1/2, 2/2, 0/3, ...`: `(d - 1)(d + 2)/2 + a`.
///
/// Fractions appear once per representation; [`rational_enum_index`]
/// returns the index of the lowest-terms one.
pub fn rational_enum(index: u128) -> Rational {
    // Largest d with (d - 1)(d + 2)/2 <= index.
    let mut d = (2 * index).sqrt().max(1);
    while triangle_start(d) > index {
        d -= 1;
    }
    while triangle_start(d + 1) <= index {
        d += 1;
    }
    let a = index - triangle_start(d);
    Rational::new(BigInt::from(a), BigInt::from(d))
}

fn triangle_start(d: u128) -> u128 {
    (d - 1) * (d + 2) / 2
}

/// Inverse of [`rational_enum`] on lowest terms; `None` outside `[0, 1]` or
/// beyond `u128`.
pub fn rational_enum_index(q: &Rational) -> Option<u128> {
    if q.is_negative() || q > &Rational::one() {
        return None;
    }
    let a = q.numer().to_u128()?;
    let d = q.denom().to_u128()?;
    let start = (d - 1).checked_mul(d.checked_add(2)?)? / 2;
    start.checked_add(a)
}

/// Bisection where each midpoint `m = q_i` is resolved by the caller's
/// witness `apart_at(i)` of `f(q_i) # y`: keep `(m, hi)` when `f(m) < y`,
/// else `(lo, m)`.
pub fn ivt_countable_exceptions(
    f: &ContinuousMap,
    y: &CReal,
    apart_at: impl Fn(u128) -> Option<(Direction, LtWitness)> + Send + 'static,
    depth: u64,
    fuel: u64,
) -> Result<IvtResult, IvtError> {
    let (fm, ym) = (f.clone(), y.clone());
    let (x, last) = realize(depth, move |n, prev| {
        let m = prev.midpoint();
        let index = rational_enum_index(&m).ok_or_else(|| IvtError::WitnessRejected {
            step: n,
            reason: format!("midpoint {} has no u128 enumeration index", canonical(&m)),
        })?;
        let (direction, witness) = apart_at(index).ok_or_else(|| IvtError::WitnessRejected {
            step: n,
            reason: format!("no witness for q_{index} = {}", canonical(&m)),
        })?;
        verify_apart(&fm, &ym, &m, direction, witness, n)?;
        Ok(match direction {
            Direction::Lt => RationalInterval {
                lo: m,
                hi: prev.hi.clone(),
            },
            Direction::Gt => RationalInterval {
                lo: prev.lo.clone(),
                hi: m,
            },
        })
    })?;
    let certificate = best_certificate(f, &last, y, fuel)?;
    Ok(IvtResult {
        x,
        depth,
        certificate,
    })
}
