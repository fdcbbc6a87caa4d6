//! Shared batch plumbing: the worker pool, per-pair execution and the run
//! summary that decides the exit status.

use fcdfuse_core::ImagePair;
use log::{info, warn};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::dataset::{load_pair, DatasetManifest, PairEntry};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Partial = 1,
    Fatal = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub processed: usize,
    /// `(pair id, reason)` for every pair that was skipped.
    pub skipped: Vec<(String, String)>,
}

impl RunSummary {
    pub fn status(&self) -> ExitStatus {
        match (self.processed, self.skipped.len()) {
            (_, 0) => ExitStatus::Success,
            (0, _) => ExitStatus::Fatal,
            _ => ExitStatus::Partial,
        }
    }
}

pub fn build_pool(threads: Option<usize>) -> Result<ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    Ok(b.build()?)
}

/// Loads each pair and hands it to `work` on the pool. Results come back
/// in manifest order whatever the scheduling; a pair that fails to load or
/// process is logged and recorded as skipped.
pub fn for_each_pair<R: Send>(
    pool: &ThreadPool,
    manifest: &DatasetManifest,
    work: impl Fn(&ImagePair) -> Result<R> + Sync,
) -> (Vec<R>, RunSummary) {
    let run = |entry: &PairEntry| -> Result<R> {
        let pair = load_pair(entry)?;
        work(&pair)
    };
    let results: Vec<_> = pool.install(|| manifest.pairs.par_iter().map(|e| (e, run(e))).collect());

    let mut out = Vec::with_capacity(results.len());
    let mut summary = RunSummary::default();
    for (entry, result) in results {
        match result {
            Ok(r) => {
                info!("{}: done", entry.id);
                summary.processed += 1;
                out.push(r);
            }
            Err(e) => {
                warn!("{}: skipped: {e}", entry.id);
                summary.skipped.push((entry.id.clone(), e.to_string()));
            }
        }
    }
    (out, summary)
}
