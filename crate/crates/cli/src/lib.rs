//! Batch front end for the fusion library: dataset discovery, image I/O,
//! fusion runs, metric reports, ablations and benchmarks.

pub mod ablation;
pub mod bench;
pub mod config;
pub mod dataset;
mod error;
pub mod eval;
pub mod fuse;
pub mod pipeline;
pub mod report;

pub use ablation::{run_ablation, AblationKind, AblationRow, DEFAULT_GAMMAS};
pub use bench::{run_bench, BenchRow};
pub use config::{ConfigFile, RunConfig};
pub use dataset::{discover_pairs, load_manifest, load_pair, DatasetManifest, PairEntry};
pub use error::{CliError, Result};
pub use eval::{run_eval, EvalOutcome};
pub use fuse::run_fuse;
pub use pipeline::{ExitStatus, RunSummary};
