//! Replica-parallel execution with scheduler-independent results.

use rayon::prelude::*;

use crate::environment::{mix64, RngStream};
use crate::error::{Error, Result};

/// Stream for one replica: the id depends only on the experiment label,
/// the size and the replica index.
pub fn replica_stream(seed: u64, experiment: &str, n: i64, replica: usize) -> RngStream {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in experiment.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    RngStream::new(seed, mix64(h ^ mix64(n as u64 ^ mix64(replica as u64))))
}

/// Runs `f(replica)` for `replica in 0..count` on `threads` workers and
/// returns the results in replica order.
pub fn run_replicas<T, F>(threads: Option<usize>, count: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    let work = || (0..count).into_par_iter().map(&f).collect::<Result<Vec<T>>>();
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {t} worker threads: {e}")))?
            .install(work),
        None => work(),
    }
}
