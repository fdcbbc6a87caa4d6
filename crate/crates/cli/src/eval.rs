use std::path::Path;

use fcdfuse_core::{evaluate_all, fuse_image_with, total_flops};
use log::warn;

use crate::config::RunConfig;
use crate::dataset::{load_rgb, DatasetManifest};
use crate::error::Result;
use crate::fuse::output_path;
use crate::pipeline::{build_pool, for_each_pair, RunSummary};
use crate::report::{write_eval, EvalRow, MethodMeans};

pub const DEFAULT_REPORT: &str = "report.csv";

pub struct EvalOutcome {
    pub summary: RunSummary,
    pub rows: Vec<EvalRow>,
    pub means: Vec<MethodMeans>,
}

/// Evaluates every configured method on every pair and writes the report
/// plus a per-method means file next to it.
///
/// With `fused_dir`, fused images are read from the layout written by
/// `run_fuse`; a missing image drops that row with a warning. Otherwise
/// the methods are run on the fly.
pub fn run_eval(config: &RunConfig, manifest: &DatasetManifest, fused_dir: Option<&Path>) -> Result<EvalOutcome> {
    config.validate()?;
    let methods = config.resolved_methods()?;
    let pool = build_pool(config.threads)?;
    let (per_pair, summary) = for_each_pair(&pool, manifest, |pair| {
        let mut rows = Vec::new();
        for m in &methods {
            let fused = match fused_dir {
                Some(dir) => {
                    let path = output_path(dir, m, pair.id());
                    match load_rgb(&path) {
                        Ok(img) => img,
                        Err(e) => {
                            warn!("{}/{}: fused image unavailable, row omitted: {e}", pair.id(), m.name());
                            continue;
                        }
                    }
                }
                None => fuse_image_with(m, pair),
            };
            let report = evaluate_all::<f64>(pair, &fused, m.name())?;
            for (metric, note) in &report.notes {
                warn!("{}/{}: {metric} not computed: {note}", pair.id(), m.name());
            }
            let (w, h) = pair.dims();
            rows.push(EvalRow {
                report,
                flops_total: Some(total_flops(m, w, h)),
            });
        }
        Ok(rows)
    });
    let rows: Vec<EvalRow> = per_pair.into_iter().flatten().collect();
    let means = write_eval(&config.report_path(DEFAULT_REPORT), &rows)?;
    Ok(EvalOutcome { summary, rows, means })
}
