//! Constructive real numbers as streams of nested rational intervals, and
//! the searches, extractors and witness checkers that operate on them.
//!
//! Every semi-decidable search takes explicit fuel and reports "unknown"
//! rather than guessing. Infinite objects ([`NatStream`], [`CReal`]) are
//! lazy and memoized; clones share a cache and may be read from many
//! threads.

mod memo;

pub mod coding;
pub mod combinatorics;
pub mod fan;
pub mod ivt;
pub mod rational;
pub mod real;
pub mod stream;

pub use coding::{PairCode, SeqCode};
pub use rational::Rational;
pub use real::{CReal, LtWitness, RationalInterval};
pub use stream::{FugitiveSpec, NatStream};
