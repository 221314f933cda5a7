//! Finite subbars of decidable bars in Cantor space, and the two-move games
//! on `ω × 2` and `2 × ω`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coding::{encode, SeqCode};

type Member = dyn Fn(&[u64]) -> bool + Send + Sync;

/// A decidable set `B` of finite binary sequences, searched to `max_depth`.
#[derive(Clone)]
pub struct DecidableBar {
    member: Arc<Member>,
    pub max_depth: usize,
}

impl fmt::Debug for DecidableBar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DecidableBar")
            .field("max_depth", &self.max_depth)
            .finish_non_exhaustive()
    }
}

impl DecidableBar {
    pub fn new(member: impl Fn(&[u64]) -> bool + Send + Sync + 'static, max_depth: usize) -> Self {
        DecidableBar {
            member: Arc::new(member),
            max_depth,
        }
    }

    /// Membership given on sequence codes.
    pub fn from_codes(
        member: impl Fn(&SeqCode) -> bool + Send + Sync + 'static,
        max_depth: usize,
    ) -> Self {
        DecidableBar::new(move |s| member(&encode(s)), max_depth)
    }

    pub fn contains(&self, s: &[u64]) -> bool {
        (self.member)(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subbar {
    /// Members of `B`, ordered by length then lexicographically, such that
    /// every binary sequence of length `max_depth` extends exactly one.
    Bar(Vec<Vec<u64>>),
    /// A sequence of length `max_depth` none of whose prefixes is in `B`.
    NotBarWithinDepth(Vec<u64>),
}

impl Subbar {
    pub fn codes(&self) -> Vec<SeqCode> {
        match self {
            Subbar::Bar(elements) => elements.iter().map(|s| encode(s)).collect(),
            Subbar::NotBarWithinDepth(path) => vec![encode(path)],
        }
    }
}

struct Explorer<'a> {
    bar: &'a DecidableBar,
    covered: HashMap<Vec<u64>, bool>,
}

impl Explorer<'_> {
    /// `s` is covered if `s ∈ B`, or both children are covered below the
    /// depth cutoff.
    fn covered(&mut self, s: &mut Vec<u64>) -> bool {
        if let Some(&c) = self.covered.get(s.as_slice()) {
            return c;
        }
        let c = self.bar.contains(s)
            || (s.len() < self.bar.max_depth
                && (0..2).all(|bit| {
                    s.push(bit);
                    let c = self.covered(s);
                    s.pop();
                    c
                }));
        self.covered.insert(s.clone(), c);
        c
    }

    fn collect(&self, s: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if self.bar.contains(s) {
            out.push(s.clone());
            return;
        }
        for bit in 0..2 {
            s.push(bit);
            self.collect(s, out);
            s.pop();
        }
    }

    fn escape(&mut self, s: &mut Vec<u64>) {
        while s.len() < self.bar.max_depth {
            let bit = (0..2)
                .find(|&bit| {
                    s.push(bit);
                    let c = self.covered(s);
                    s.pop();
                    !c
                })
                .expect("an uncovered node has an uncovered child");
            s.push(bit);
        }
    }
}

/// Extracts a finite subbar of `B` or a path of length `max_depth` avoiding it.
pub fn finite_subbar(bar: &DecidableBar) -> Subbar {
    let mut explorer = Explorer {
        bar,
        covered: HashMap::new(),
    };
    let mut root = Vec::new();
    if explorer.covered(&mut root) {
        let mut out = Vec::new();
        explorer.collect(&mut root, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Subbar::Bar(out)
    } else {
        explorer.escape(&mut root);
        Subbar::NotBarWithinDepth(root)
    }
}

type Omega2 = dyn Fn(u64, u8) -> bool + Send + Sync;

/// The game on `ω × 2`: Player I picks `n`, Player II answers `i < 2`, and I
/// wins when `(n, i) ∈ C`. Moves `n >= n_bound` are not considered.
#[derive(Clone)]
pub struct GameSpecOmega2 {
    in_c: Arc<Omega2>,
    pub n_bound: u64,
}

impl GameSpecOmega2 {
    pub fn new(in_c: impl Fn(u64, u8) -> bool + Send + Sync + 'static, n_bound: u64) -> Self {
        GameSpecOmega2 {
            in_c: Arc::new(in_c),
            n_bound,
        }
    }

    pub fn contains(&self, n: u64, i: u8) -> bool {
        (self.in_c)(n, i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Omega2Outcome {
    /// `(n, 0)` and `(n, 1)` are both in `C`.
    WinningMove(u64),
    /// `τ` with `(n, τ(n)) ∉ C` for every `n < n_bound`.
    CounterStrategyPrefix(Vec<u8>),
}

impl Omega2Outcome {
    pub fn verify(&self, g: &GameSpecOmega2) -> bool {
        match self {
            Omega2Outcome::WinningMove(n) => g.contains(*n, 0) && g.contains(*n, 1),
            Omega2Outcome::CounterStrategyPrefix(tau) => {
                tau.len() as u64 == g.n_bound
                    && tau
                        .iter()
                        .zip(0..)
                        .all(|(&i, n)| i < 2 && !g.contains(n, i))
            }
        }
    }
}

pub fn solve_omega2(g: &GameSpecOmega2) -> Omega2Outcome {
    let mut tau = Vec::new();
    for n in 0..g.n_bound {
        match (g.contains(n, 0), g.contains(n, 1)) {
            (true, true) => return Omega2Outcome::WinningMove(n),
            (false, _) => tau.push(0),
            (true, false) => tau.push(1),
        }
    }
    Omega2Outcome::CounterStrategyPrefix(tau)
}

type TwoOmega = dyn Fn(u8, u64) -> bool + Send + Sync;

/// The game on `2 × ω`: Player I picks `i < 2`, Player II answers `n`.
#[derive(Clone)]
pub struct GameSpec2Omega {
    in_c: Arc<TwoOmega>,
}

impl GameSpec2Omega {
    pub fn new(in_c: impl Fn(u8, u64) -> bool + Send + Sync + 'static) -> Self {
        GameSpec2Omega {
            in_c: Arc::new(in_c),
        }
    }

    pub fn contains(&self, i: u8, n: u64) -> bool {
        (self.in_c)(i, n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    /// Player I's move `i` beats the announced strategy: `(i, p_i) ∈ C`.
    Found(u8),
    /// Neither `(0, p0)` nor `(1, p1)` is in `C`.
    NoAnswer,
}

/// Player I's reply to Player II's strategy `⟨p0, p1⟩`.
pub fn answer_strategy_2omega(g: &GameSpec2Omega, p0: u64, p1: u64) -> Answer {
    if g.contains(0, p0) {
        Answer::Found(0)
    } else if g.contains(1, p1) {
        Answer::Found(1)
    } else {
        Answer::NoAnswer
    }
}
