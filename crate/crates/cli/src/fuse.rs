use std::fs;
use std::path::{Path, PathBuf};

use fcdfuse_core::{fuse_image_with, FusionMethod};

use crate::config::RunConfig;
use crate::dataset::{save_png, DatasetManifest};
use crate::error::{CliError, Result};
use crate::pipeline::{build_pool, for_each_pair, RunSummary};

/// `<out>/<method key>/<id>.png`
pub fn output_path(out_dir: &Path, method: &FusionMethod, id: &str) -> PathBuf {
    out_dir.join(method.key()).join(format!("{id}.png"))
}

/// Fuses every pair with every configured method and writes the results as
/// PNG files.
pub fn run_fuse(config: &RunConfig, manifest: &DatasetManifest) -> Result<RunSummary> {
    config.validate()?;
    let methods = config.resolved_methods()?;
    for m in &methods {
        let dir = config.out_dir.join(m.key());
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    }
    let pool = build_pool(config.threads)?;
    let (_, summary) = for_each_pair(&pool, manifest, |pair| {
        for m in &methods {
            let fused = fuse_image_with(m, pair);
            save_png(&fused, &output_path(&config.out_dir, m, pair.id()))?;
        }
        Ok(())
    });
    Ok(summary)
}
