//! FLOP accounting and wall-clock timing per method.

use std::time::Instant;

use fcdfuse_core::flops::{measured_flop_audit, per_pixel_flops, total_flops};
use fcdfuse_core::{fuse_image_with, FusionMethod, ImagePair};

use crate::config::RunConfig;
use crate::dataset::{load_pair, DatasetManifest};
use crate::error::{CliError, Result};
use crate::pipeline::{build_pool, RunSummary};
use crate::report::{create_writer, format_real};

pub const MIN_REPETITIONS: usize = 5;
pub const DEFAULT_REPORT: &str = "bench.csv";

pub const BENCH_HEADER: [&str; 10] = [
    "pair_id",
    "method",
    "width",
    "height",
    "model_flops",
    "audited_flops",
    "flops_per_pixel",
    "exponentiations",
    "ns_per_pixel",
    "mpixels_per_s",
];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub pair_id: String,
    pub method: FusionMethod,
    pub width: usize,
    pub height: usize,
    pub model_flops: u64,
    pub audited_flops: u64,
    pub exponentiations: u64,
    pub ns_per_pixel: f64,
}

impl BenchRow {
    pub fn mpixels_per_s(&self) -> f64 {
        1e3 / self.ns_per_pixel
    }

    fn record(&self) -> Vec<String> {
        vec![
            self.pair_id.clone(),
            self.method.name().to_string(),
            self.width.to_string(),
            self.height.to_string(),
            self.model_flops.to_string(),
            self.audited_flops.to_string(),
            per_pixel_flops(&self.method).total().to_string(),
            self.exponentiations.to_string(),
            format_real(self.ns_per_pixel),
            format_real(self.mpixels_per_s()),
        ]
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn time_ns_per_pixel(method: &FusionMethod, pair: &ImagePair, reps: usize) -> f64 {
    let (w, h) = pair.dims();
    let pixels = (w * h) as f64;
    std::hint::black_box(fuse_image_with(method, pair));
    let samples = (0..reps)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(fuse_image_with(method, std::hint::black_box(pair)));
            t.elapsed().as_nanos() as f64 / pixels
        })
        .collect();
    median(samples)
}

/// Benchmarks pairs one at a time so timings do not compete; each fusion
/// still uses the configured worker pool across rows.
pub fn run_bench(config: &RunConfig, manifest: &DatasetManifest, reps: usize) -> Result<(RunSummary, Vec<BenchRow>)> {
    config.validate()?;
    if reps < MIN_REPETITIONS {
        return Err(CliError::Invalid(format!("at least {MIN_REPETITIONS} repetitions are required")));
    }
    let methods = config.resolved_methods()?;
    let pool = build_pool(config.threads)?;
    let mut summary = RunSummary::default();
    let mut rows = Vec::new();
    for entry in &manifest.pairs {
        let pair = match load_pair(entry) {
            Ok(p) => p,
            Err(e) => {
                log::warn!("{}: skipped: {e}", entry.id);
                summary.skipped.push((entry.id.clone(), e.to_string()));
                continue;
            }
        };
        let (w, h) = pair.dims();
        for m in &methods {
            let audit = measured_flop_audit(m, &pair);
            let ns = pool.install(|| time_ns_per_pixel(m, &pair, reps));
            rows.push(BenchRow {
                pair_id: entry.id.clone(),
                method: *m,
                width: w,
                height: h,
                model_flops: total_flops(m, w, h),
                audited_flops: audit.total(),
                exponentiations: audit.counts.pow,
                ns_per_pixel: ns,
            });
        }
        summary.processed += 1;
    }

    let path = config.report_path(DEFAULT_REPORT);
    let mut w = create_writer(&path)?;
    w.write_record(BENCH_HEADER)?;
    for r in &rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok((summary, rows))
}
