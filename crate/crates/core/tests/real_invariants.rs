use intuit::rational::{ceil_log2, int, pow2_neg, ratio, Rational};
use intuit::real::{
    cotrans_split, diagonal, rho0, rho1, rho2, sqrt2, sqrt2_irrationality_witness, Apart, CReal,
    Direction, Lt, RationalInterval, Split,
};
use intuit::stream::FugitiveSpec;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
enum Expr {
    Rat(i64, i64),
    Rho0(Option<u64>),
    Rho1(Option<u64>),
    Sqrt2,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Abs(Box<Expr>),
}

impl Expr {
    fn build(&self) -> CReal {
        match self {
            Expr::Rat(n, d) => CReal::from_rational(ratio(*n, *d)),
            Expr::Rho0(k) => rho0(&FugitiveSpec::firing_at(*k)),
            Expr::Rho1(k) => rho1(&FugitiveSpec::firing_at(*k)),
            Expr::Sqrt2 => sqrt2(),
            Expr::Add(a, b) => a.build().add(&b.build()),
            Expr::Sub(a, b) => a.build().sub(&b.build()),
            Expr::Mul(a, b) => a.build().mul(&b.build()),
            Expr::Neg(a) => a.build().neg(),
            Expr::Abs(a) => a.build().abs(),
        }
    }

    /// `(C, B)`: width at `n` is at most `C 2^-n`; endpoints stay within `B`.
    fn rate(&self) -> (Rational, Rational) {
        match self {
            Expr::Rat(n, d) => (int(2), ratio(*n, *d).abs() + int(1)),
            Expr::Rho0(_) | Expr::Rho1(_) => (int(2), int(1)),
            Expr::Sqrt2 => (int(1), int(2)),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let ((ca, ba), (cb, bb)) = (a.rate(), b.rate());
                (ca + cb, ba + bb)
            }
            Expr::Mul(a, b) => {
                let ((ca, ba), (cb, bb)) = (a.rate(), b.rate());
                (&ba * &cb + &bb * &ca, ba * bb)
            }
            Expr::Neg(a) | Expr::Abs(a) => a.rate(),
        }
    }

    /// Exact value when every leaf is rational.
    fn exact(&self) -> Option<Rational> {
        Some(match self {
            Expr::Rat(n, d) => ratio(*n, *d),
            Expr::Rho0(None) | Expr::Rho1(None) => int(0),
            Expr::Rho0(Some(k)) => pow2_neg(*k),
            Expr::Rho1(Some(k)) => {
                if k % 2 == 0 {
                    pow2_neg(*k)
                } else {
                    -pow2_neg(*k)
                }
            }
            Expr::Sqrt2 => return None,
            Expr::Add(a, b) => a.exact()? + b.exact()?,
            Expr::Sub(a, b) => a.exact()? - b.exact()?,
            Expr::Mul(a, b) => a.exact()? * b.exact()?,
            Expr::Neg(a) => -a.exact()?,
            Expr::Abs(a) => a.exact()?.abs(),
        })
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-8i64..=8, 1i64..=6).prop_map(|(n, d)| Expr::Rat(n, d)),
        prop::option::of(0u64..12).prop_map(Expr::Rho0),
        prop::option::of(0u64..12).prop_map(Expr::Rho1),
        Just(Expr::Sqrt2),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            inner.prop_map(|a| Expr::Abs(Box::new(a))),
        ]
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=50).prop_map(|(n, d)| ratio(n, d))
}

fn log2_ceil_nonneg(c: &Rational) -> u64 {
    ceil_log2(c).max(0) as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn trees_shrink_and_dwindle(e in expr()) {
        let x = e.build();
        let (c, _) = e.rate();
        for n in 0..=20u64 {
            let (a, b) = (x.interval(n).unwrap(), x.interval(n + 1).unwrap());
            prop_assert!(a.contains_interval(&b), "not shrinking at {}", n);
            prop_assert!(a.width() <= &c * pow2_neg(n), "width above C 2^-n at {}", n);
        }
        let p = 12u32;
        let fuel = u64::from(p) + log2_ceil_nonneg(&c) + 1;
        let a = x.approx(p, fuel).unwrap();
        if let Some(v) = e.exact() {
            prop_assert!(a.contains(&v));
        }
    }

    #[test]
    fn rational_operations_commute_with_embedding(p in rational(), q in rational(), op in 0u8..3) {
        let (x, y) = (CReal::from_rational(p.clone()), CReal::from_rational(q.clone()));
        let (real, exact) = match op {
            0 => (x.add(&y), &p + &q),
            1 => (x.sub(&y), &p - &q),
            _ => (x.mul(&y), &p * &q),
        };
        let a = real.approx(20, 64).unwrap();
        prop_assert!(a.contains(&exact));
        prop_assert!(a.width() <= pow2_neg(20));
    }

    #[test]
    fn try_lt_witnesses_are_literal(e in expr(), f in expr(), fuel in 0u64..24) {
        let (x, y) = (e.build(), f.build());
        if let Lt::Found(w) = x.try_lt(&y, fuel).unwrap() {
            prop_assert!(w.index < fuel);
            prop_assert!(x.interval(w.index).unwrap().hi < y.interval(w.index).unwrap().lo);
        }
        match x.try_apart(&y, fuel).unwrap() {
            Apart::Found(Direction::Lt, w) => prop_assert!(w.verify(&x, &y).unwrap()),
            Apart::Found(Direction::Gt, w) => prop_assert!(w.verify(&y, &x).unwrap()),
            Apart::Unknown => {}
        }
    }

    #[test]
    fn cotrans_split_terminates_with_valid_witness(
        a in rational(), gap in (1i64..40, 1i64..40), z in expr()
    ) {
        let x = CReal::from_rational(a.clone());
        let y = CReal::from_rational(a + ratio(gap.0, gap.1));
        let w = match x.try_lt(&y, 64).unwrap() {
            Lt::Found(w) => w,
            Lt::Unknown => return Err(TestCaseError::fail("x < y should be found")),
        };
        let z = z.build();
        match cotrans_split(&x, &y, w, &z).unwrap() {
            Split::LeftIsLess(v) => prop_assert!(v.verify(&x, &z).unwrap()),
            Split::RightIsLess(v) => prop_assert!(v.verify(&z, &y).unwrap()),
        }
    }

    #[test]
    fn negation_is_an_involution(e in expr()) {
        let x = e.build();
        let nn = x.neg().neg();
        for n in 0..10 {
            prop_assert_eq!(nn.interval(n).unwrap(), x.interval(n).unwrap());
        }
    }
}

fn diagonal_input(seed: u64) -> impl Fn(u64) -> CReal + Send + Sync + Clone {
    // Fifty reals of mixed kinds, drawn afresh for each sequence.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reals: Vec<(u8, i64, i64)> = (0..50)
        .map(|_| {
            (
                rng.gen_range(0..3),
                rng.gen_range(-20..=76),
                rng.gen_range(1..=61),
            )
        })
        .collect();
    move |n| {
        let (kind, a, b) = reals[(n % 50) as usize];
        let q = CReal::from_rational(ratio(a, b));
        match kind {
            0 => q,
            1 => q.add(&rho0(&FugitiveSpec::firing_at(Some(
                (a.unsigned_abs()) % 7,
            )))),
            _ => sqrt2().sub(&q),
        }
    }
}

#[test]
fn diagonal_is_apart_from_all_inputs() {
    for seed in 0..50 {
        let xs = diagonal_input(seed);
        let d = diagonal(xs.clone());
        for n in 0..50 {
            let input = xs(n);
            match d.try_apart(&input, 60).unwrap() {
                Apart::Found(Direction::Lt, w) => assert!(w.verify(&d, &input).unwrap()),
                Apart::Found(Direction::Gt, w) => assert!(w.verify(&input, &d).unwrap()),
                Apart::Unknown => panic!("sequence {seed}: diagonal not apart from input {n}"),
            }
        }
    }
}

#[test]
fn diagonal_width_is_a_power_of_three() {
    let d = diagonal(diagonal_input(7));
    for n in 0..=10u32 {
        let w = d.interval(n.into()).unwrap().width();
        assert_eq!(w, ratio(1, 3i64.pow(n)));
    }
}

/// `floor(√2 · 10^40)` by integer square root.
fn sqrt2_scaled() -> BigUint {
    (BigUint::from(2u32) * BigUint::from(10u32).pow(80)).sqrt()
}

#[test]
fn sqrt2_against_integer_root() {
    let s = sqrt2_scaled();
    let scale = Rational::from_integer(BigInt::from(10).pow(40));
    let lo = Rational::from_integer(BigInt::from(s.clone())) / &scale;
    let hi = Rational::from_integer(BigInt::from(s + 1u32)) / &scale;
    let a = sqrt2().approx(10, 64).unwrap();
    assert!(a.lo <= lo && hi <= a.hi);
    let a = sqrt2().approx(120, 200).unwrap();
    assert!(a.lo <= hi && lo <= a.hi);
}

fn certified_gap(m: u64, n: u64, p: &BigUint) -> bool {
    let q = ratio(m as i64, n as i64);
    let bound = Rational::new(BigInt::from(1), BigInt::from(p.clone()));
    let s = sqrt2();
    (0..400).any(|k| {
        let i: RationalInterval = s.interval(k).unwrap();
        &i.hi + &bound <= q || &q + &bound <= i.lo
    })
}

#[test]
fn irrationality_witnesses_are_certified() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2545_f491);
    let mut cases: Vec<(u64, u64)> = (0..96)
        .map(|_| {
            let n = rng.gen_range(1..=1_000_000u64);
            let m = rng.gen_range(1..=3 * n);
            (m, n)
        })
        .collect();
    // Continued-fraction convergents are the hardest cases.
    cases.extend([(99, 70), (239, 169), (577, 408), (1393, 985)]);
    for &(m, n) in &cases {
        let p = sqrt2_irrationality_witness(m, n);
        assert!(
            certified_gap(m, n, &p),
            "|√2 - {m}/{n}| >= 1/{p} not certified"
        );
    }
    assert_eq!(cases.len(), 100);
}

#[test]
fn no_fraction_squares_to_two() {
    // m² = 2n² would force m even, then n even, forever.
    for m in 1..400u64 {
        if m % 2 == 1 {
            assert_eq!((m * m) % 2, 1);
        }
        for n in 1..300u64 {
            assert_ne!(m * m, 2 * n * n);
        }
    }
}

#[test]
fn rho2_odd_firing_contains_zero() {
    for k in [1u64, 3, 5, 9] {
        let r = rho2(&FugitiveSpec::firing_at(Some(k)));
        assert!(r.approx(10, 16).unwrap().contains(&int(0)));
    }
    let even = rho2(&FugitiveSpec::firing_at(Some(2)));
    assert_eq!(
        even.interval(6).unwrap(),
        RationalInterval::point(ratio(1, 2))
    );
}

#[test]
fn widths_are_representable() {
    let w = sqrt2().interval(30).unwrap().width();
    assert_eq!(w.to_f64().unwrap(), 2f64.powi(-30));
}
