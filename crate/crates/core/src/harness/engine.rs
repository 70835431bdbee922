//! Deterministic parallel Monte Carlo.
//!
//! Trials are grouped into fixed blocks of [`BLOCK_TRIALS`] consecutive
//! indices. Each block is accumulated sequentially, and block results are
//! merged by a pairwise tree over block index. Neither step depends on how
//! many workers ran the blocks, so results are bit-identical for any
//! worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const BLOCK_TRIALS: u64 = 1024;

/// Environment variable capping the number of worker threads.
pub const WORKERS_ENV: &str = "NOMA_SIM_WORKERS";

/// Running mean and variance (Welford), mergeable (Chan et al.).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Self { count, mean: self.mean + delta * w, m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance; zero with fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean.
    pub fn std_err(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Worker count from `NOMA_SIM_WORKERS`; `None` when unset.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::config(format!("{WORKERS_ENV}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::config(format!("{WORKERS_ENV} must be a positive integer, got {s:?}"))),
        },
    }
}

/// Runs `visit(acc, trial)` for every trial in `0..trials` and merges the
/// per-block accumulators.
///
/// `workers = None` uses rayon's default pool size.
pub fn monte_carlo<A, N, V, M>(trials: u64, workers: Option<usize>, new: N, visit: V, merge: M) -> Result<A>
where
    A: Send,
    N: Fn() -> A + Sync,
    V: Fn(&mut A, u64) + Sync,
    M: Fn(A, A) -> A,
{
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    let run_block = |b: u64| {
        let mut acc = new();
        for t in b * BLOCK_TRIALS..((b + 1) * BLOCK_TRIALS).min(trials) {
            visit(&mut acc, t);
        }
        acc
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
    let partials: Vec<A> = pool.install(|| (0..blocks).into_par_iter().map(run_block).collect());
    Ok(tree_reduce(partials, &merge).unwrap_or_else(new))
}

fn tree_reduce<A>(mut level: Vec<A>, merge: &impl Fn(A, A) -> A) -> Option<A> {
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(merge(a, b)),
                None => next.push(a),
            }
        }
        level = next;
    }
    level.pop()
}
