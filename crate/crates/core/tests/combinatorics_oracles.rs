use intuit::coding::{decode, encode};
use intuit::combinatorics::{
    almost_full_witness, arrow_check, arrow_counterexample, arrow_star_check,
    arrow_star_counterexample, binomial, dickson_witness, euclid_extend, increasing_tuples,
    monochromatic_witness, AlmostFull, Coloring, CombError, Dickson, Monochromatic,
};
use intuit::stream::NatStream;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    let mut d = two;
    while &(&d * &d) <= n {
        if (n % &d) == BigUint::ZERO {
            return false;
        }
        d += 1u32;
    }
    true
}

proptest! {
    #[test]
    fn euclid_gives_a_new_prime(mask in 1u32..1 << 10) {
        let qs: Vec<u64> = SMALL_PRIMES.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let p = euclid_extend(&qs).unwrap();
        prop_assert!(is_prime(&p));
        let lcm = qs.iter().fold(BigUint::one(), |a, &q| a.lcm(&q.into()));
        prop_assert!((lcm + 1u32) % &p == BigUint::ZERO);
        for &q in &qs {
            prop_assert_eq!(p.gcd(&q.into()), BigUint::one());
        }
    }

    #[test]
    fn dickson_finds_the_first_dominated_pair(
        rows in prop::collection::vec(prop::collection::vec(0u64..6, 12), 1..4)
    ) {
        let seqs: Vec<NatStream> = rows.iter().map(|r| NatStream::eventually_constant(r.clone())).collect();
        let oracle = (1..12).flat_map(|j| (0..j).map(move |i| (i, j)))
            .find(|&(i, j)| rows.iter().all(|r| r[i] <= r[j]));
        let got = dickson_witness(&seqs, 12).unwrap();
        match oracle {
            Some((i, j)) => prop_assert_eq!(got, Dickson::Found(i, j)),
            None => prop_assert_eq!(got, Dickson::FuelExhausted),
        }
    }

    #[test]
    fn mono_witness_is_lexicographically_first(
        m in 2u64..8, n in 1usize..4, table in prop::collection::vec(0u64..2, 64)
    ) {
        prop_assume!(n as u64 <= m);
        let k = 1;
        let t2 = table.clone();
        let c = Coloring::new(2, k, move |t| t2[t[0] as usize]);
        let oracle = increasing_tuples(m, n).into_iter().find(|t| t.iter().all(|&x| table[x as usize] == table[t[0] as usize]));
        match monochromatic_witness(&c, m, n) {
            Monochromatic::Found { tuple, color } => {
                prop_assert_eq!(Some(tuple.clone()), oracle);
                prop_assert_eq!(color, table[tuple[0] as usize]);
            }
            Monochromatic::NotFound => prop_assert!(oracle.is_none()),
        }
    }
}

/// Independent arrow oracle: every colouring, given as a map from tuples,
/// has a monochromatic `n`-set; candidate sets are filtered by `keep`.
fn colouring_oracle(m: u64, n: usize, k: usize, r: u64, keep: impl Fn(&[u64]) -> bool) -> bool {
    let ktuples = increasing_tuples(m, k);
    let sets: Vec<Vec<u64>> = (n..=m as usize)
        .flat_map(|len| increasing_tuples(m, len))
        .filter(|t| keep(t))
        .collect();
    let total = r.pow(ktuples.len() as u32);
    (0..total).all(|mut x| {
        let colour: std::collections::HashMap<&Vec<u64>, u64> = ktuples
            .iter()
            .map(|t| {
                let c = x % r;
                x /= r;
                (t, c)
            })
            .collect();
        sets.iter().any(|s| {
            let cs: Vec<u64> = increasing_tuples(s.len() as u64, k)
                .iter()
                .map(|u| colour[&u.iter().map(|&i| s[i as usize]).collect::<Vec<_>>()])
                .collect();
            cs.windows(2).all(|w| w[0] == w[1])
        })
    })
}

#[test]
fn arrow_agrees_with_oracle_on_small_instances() {
    for m in 1..=6u64 {
        for k in 1..=3usize {
            for n in k..=m as usize {
                for r in 1..=3u64 {
                    let slots = binomial(m, k as u64);
                    if r.pow(slots as u32) > 1 << 16 {
                        continue;
                    }
                    let oracle = colouring_oracle(m, n, k, r, |t| t.len() == n);
                    assert_eq!(
                        arrow_check(m, n, k, r).unwrap(),
                        oracle,
                        "M={m} n={n} k={k} r={r}"
                    );
                    let star = colouring_oracle(m, n, k, r, |t| t[0] as usize == t.len());
                    assert_eq!(
                        arrow_star_check(m, n, k, r).unwrap(),
                        star,
                        "* M={m} n={n} k={k} r={r}"
                    );
                }
            }
        }
    }
}

#[test]
fn classical_ramsey_values() {
    assert!(!arrow_check(5, 3, 2, 2).unwrap());
    assert!(arrow_check(6, 3, 2, 2).unwrap());
    let pentagon = arrow_counterexample(5, 3, 2, 2).unwrap().unwrap();
    assert_eq!(pentagon.len(), 10);
    assert!(arrow_check(2, 2, 1, 1).unwrap());
    assert!(!arrow_check(2, 2, 1, 2).unwrap());
    assert!(arrow_check(3, 2, 1, 2).unwrap());
}

#[test]
fn arrow_is_monotone_in_m() {
    for (n, k, r) in [(2usize, 1usize, 3u64), (3, 2, 2), (3, 1, 2), (2, 2, 2)] {
        let mut held = false;
        for m in n as u64..=6 {
            match arrow_check(m, n, k, r) {
                Ok(v) => {
                    assert!(v || !held, "lost at M={m}");
                    held = v;
                }
                Err(CombError::TooLarge { .. }) => break,
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn counterexamples_have_no_monochromatic_set() {
    for (m, n, k, r) in [(5u64, 3usize, 2usize, 2u64), (4, 3, 1, 2), (4, 3, 2, 3)] {
        let ex = arrow_counterexample(m, n, k, r).unwrap().unwrap();
        let c = Coloring::from_table(r, k, m, ex);
        assert_eq!(monochromatic_witness(&c, m, n), Monochromatic::NotFound);
    }
    for (m, n, k, r) in [(5, 2, 1, 2), (6, 2, 2, 2)] {
        if let Some(ex) = arrow_star_counterexample(m, n, k, r).unwrap() {
            assert_eq!(ex.len() as u64, binomial(m, k as u64));
        }
    }
}

#[test]
fn oversize_instances_are_refused() {
    assert!(matches!(
        arrow_check(9, 4, 2, 2),
        Err(CombError::TooLarge { .. })
    ));
    assert!(matches!(
        arrow_check(3, 4, 2, 2),
        Err(CombError::InvalidArgs(_))
    ));
}

#[test]
fn almost_full_search_is_shortest_first() {
    let zeta = NatStream::from_fn(|i| 3 * i + 1);
    let member = |c: &intuit::SeqCode| {
        decode(c)
            .map(|s| s.iter().sum::<u64>() >= 20 && s.len() == 2)
            .unwrap()
    };
    let got = almost_full_witness(member, &zeta, 12).unwrap();
    assert_eq!(got, AlmostFull::Found(vec![0, 6]));
    let none = almost_full_witness(|c| *c == encode(&[5]), &zeta, 6).unwrap();
    assert_eq!(none, AlmostFull::FuelExhausted);
    let flat = NatStream::constant(2);
    assert!(matches!(
        almost_full_witness(|_| true, &flat, 3),
        Err(CombError::NotIncreasing { index: 1 })
    ));
}
