//! Memoized infinite sequences.
//!
//! Two shapes are supported: random-access generators (`index -> value`),
//! cached sparsely, and step generators that must run in index order,
//! cached as a prefix. Generators must be pure: every read of an index
//! yields the same value, and concurrent fills store identical values.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, PoisonError, RwLock};

type IndexFn<T> = dyn Fn(u64) -> T + Send + Sync;
type StepFn<T> = dyn FnMut(u64, Option<&T>) -> T + Send;

enum Source<T> {
    Indexed {
        generator: Box<IndexFn<T>>,
        cache: RwLock<HashMap<u64, T>>,
    },
    Sequential(Mutex<Prefix<T>>),
}

struct Prefix<T> {
    values: Vec<T>,
    step: Box<StepFn<T>>,
}

/// A shared, lazily evaluated sequence `0, 1, 2, ... -> T`.
pub(crate) struct Memo<T> {
    source: Source<T>,
}

impl<T: Clone + Send + Sync + 'static> Memo<T> {
    pub(crate) fn indexed(generator: impl Fn(u64) -> T + Send + Sync + 'static) -> Arc<Self> {
        Arc::new(Memo {
            source: Source::Indexed {
                generator: Box::new(generator),
                cache: RwLock::new(HashMap::new()),
            },
        })
    }

    /// `step(n, previous)` produces the value at `n`; `previous` is `None` only for `n = 0`.
    pub(crate) fn sequential(step: impl FnMut(u64, Option<&T>) -> T + Send + 'static) -> Arc<Self> {
        Arc::new(Memo {
            source: Source::Sequential(Mutex::new(Prefix {
                values: Vec::new(),
                step: Box::new(step),
            })),
        })
    }

    pub(crate) fn get(&self, n: u64) -> T {
        match &self.source {
            Source::Indexed { generator, cache } => {
                if let Some(v) = cache.read().unwrap_or_else(PoisonError::into_inner).get(&n) {
                    return v.clone();
                }
                // Computed outside the lock: generators may read other memos.
                let v = generator(n);
                cache
                    .write()
                    .unwrap_or_else(PoisonError::into_inner)
                    .entry(n)
                    .or_insert(v)
                    .clone()
            }
            Source::Sequential(prefix) => {
                let mut guard = prefix.lock().unwrap_or_else(PoisonError::into_inner);
                let Prefix { values, step } = &mut *guard;
                let n = usize::try_from(n).expect("sequence index exceeds address space");
                while values.len() <= n {
                    let next = step(values.len() as u64, values.last());
                    values.push(next);
                }
                values[n].clone()
            }
        }
    }
}
