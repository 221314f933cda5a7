//! Small predicate languages for `subbar` and `game`.
//!
//! A predicate is a `|`-separated list of `&`-separated atoms.
//!
//! Sequence atoms (for `subbar`): `len=N`, `len>=N`, `has1@I` (entry `I`
//! exists and is 1), `sum>=K`, `true`, `false`.
//!
//! Move atoms (for `game`): `n=K`, `n>=K`, `n<K`, `n%M=R`, `i=B`,
//! `pi(D,L)` (n is the first position of a run of `L` digits `D` in π),
//! `true`, `false`.

use std::sync::Arc;

use crate::expr::pi_pattern;

pub type SeqPred = Arc<dyn Fn(&[u64]) -> bool + Send + Sync>;
pub type MovePred = Arc<dyn Fn(u64, u8) -> bool + Send + Sync>;

fn number(s: &str, atom: &str) -> Result<u64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("bad number in atom {atom:?}"))
}

fn disjunction<T: ?Sized>(
    src: &str,
    atom: impl Fn(&str) -> Result<Arc<T>, String>,
    all: impl Fn(Vec<Arc<T>>) -> Arc<T>,
    any: impl Fn(Vec<Arc<T>>) -> Arc<T>,
) -> Result<Arc<T>, String> {
    let clauses = src
        .split('|')
        .map(|clause| {
            clause
                .split('&')
                .map(|a| atom(a.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map(&all)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(any(clauses))
}

pub fn parse_seq(src: &str) -> Result<SeqPred, String> {
    disjunction(
        src,
        seq_atom,
        |ps| Arc::new(move |s: &[u64]| ps.iter().all(|p| p(s))),
        |ps| Arc::new(move |s: &[u64]| ps.iter().any(|p| p(s))),
    )
}

fn seq_atom(atom: &str) -> Result<SeqPred, String> {
    let pred: SeqPred = match atom {
        "true" => Arc::new(|_| true),
        "false" => Arc::new(|_| false),
        _ if atom.starts_with("len>=") => {
            let n = number(&atom[5..], atom)?;
            Arc::new(move |s| s.len() as u64 >= n)
        }
        _ if atom.starts_with("len=") => {
            let n = number(&atom[4..], atom)?;
            Arc::new(move |s| s.len() as u64 == n)
        }
        _ if atom.starts_with("has1@") => {
            let i = number(&atom[5..], atom)? as usize;
            Arc::new(move |s| s.get(i) == Some(&1))
        }
        _ if atom.starts_with("sum>=") => {
            let k = number(&atom[5..], atom)?;
            Arc::new(move |s| s.iter().sum::<u64>() >= k)
        }
        _ => return Err(format!("unknown sequence atom {atom:?}")),
    };
    Ok(pred)
}

pub fn parse_move(src: &str) -> Result<MovePred, String> {
    disjunction(
        src,
        move_atom,
        |ps| Arc::new(move |n, i| ps.iter().all(|p| p(n, i))),
        |ps| Arc::new(move |n, i| ps.iter().any(|p| p(n, i))),
    )
}

fn move_atom(atom: &str) -> Result<MovePred, String> {
    let pred: MovePred = match atom {
        "true" => Arc::new(|_, _| true),
        "false" => Arc::new(|_, _| false),
        _ if atom.starts_with("n>=") => {
            let k = number(&atom[3..], atom)?;
            Arc::new(move |n, _| n >= k)
        }
        _ if atom.starts_with("n<") => {
            let k = number(&atom[2..], atom)?;
            Arc::new(move |n, _| n < k)
        }
        _ if atom.starts_with("n=") => {
            let k = number(&atom[2..], atom)?;
            Arc::new(move |n, _| n == k)
        }
        _ if atom.starts_with("n%") => {
            let (m, r) = atom[2..]
                .split_once('=')
                .ok_or_else(|| format!("expected n%M=R, got {atom:?}"))?;
            let (m, r) = (number(m, atom)?, number(r, atom)?);
            if m == 0 {
                return Err(format!("modulus must be positive in {atom:?}"));
            }
            Arc::new(move |n, _| n % m == r)
        }
        _ if atom.starts_with("i=") => {
            let b = number(&atom[2..], atom)?;
            if b > 1 {
                return Err(format!("a move i must be 0 or 1 in {atom:?}"));
            }
            Arc::new(move |_, i| u64::from(i) == b)
        }
        _ if atom.starts_with("pi(") && atom.ends_with(')') => {
            let (d, l) = atom[3..atom.len() - 1]
                .split_once(',')
                .ok_or_else(|| format!("expected pi(D,L), got {atom:?}"))?;
            let f = pi_pattern(number(d, atom)?, number(l, atom)?)?;
            Arc::new(move |n, _| f.equals(n))
        }
        _ => return Err(format!("unknown move atom {atom:?}")),
    };
    Ok(pred)
}
