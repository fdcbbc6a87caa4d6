use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fcdfuse_cli::config::{parse_methods, parse_threads};
use fcdfuse_cli::report::format_real;
use fcdfuse_cli::{
    discover_pairs, load_manifest, run_ablation, run_bench, run_eval, run_fuse, AblationKind, ConfigFile,
    DatasetManifest, ExitStatus, RunConfig, RunSummary, DEFAULT_GAMMAS,
};

#[derive(Parser)]
#[command(name = "fcdfuse", version, about = "Fast color-preserving visible/infrared image fusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse every pair with each method and write PNGs to <out>/<method>/<id>.png
    Fuse(Shared),
    /// Compute the metric report (and a per-method means file)
    Eval {
        #[command(flatten)]
        shared: Shared,
        /// Read fused images from this directory instead of fusing on the fly
        #[arg(long)]
        fused: Option<PathBuf>,
    },
    /// Report model and audited FLOPs and time each method
    Bench {
        #[command(flatten)]
        shared: Shared,
        /// Timed repetitions per method (after one warm-up run)
        #[arg(long, default_value_t = 7)]
        reps: usize,
    },
    /// Run the gamma or averaging ablation
    Ablate {
        #[command(flatten)]
        shared: Shared,
        /// gamma or averaging
        #[arg(long, default_value = "gamma")]
        kind: String,
        /// Comma-separated gammas for the gamma ablation
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
    },
}

#[derive(Args)]
struct Shared {
    /// Dataset directory with <id>_vi.<ext> / <id>_ir.<ext> files
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated methods: fcd, rgb, yiq, hsv
    #[arg(long)]
    methods: Option<String>,
    /// Gamma for FCDFusion
    #[arg(long)]
    gamma: Option<f64>,
    /// Disable the averaging step in the scale factor
    #[arg(long)]
    no_averaging: bool,
    /// Worker threads (positive integer or `auto`)
    #[arg(long)]
    threads: Option<String>,
    /// Report path (CSV)
    #[arg(long)]
    report: Option<PathBuf>,
    /// Tab-separated manifest: id, visible path, infrared path
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// key = value file with defaults for the flags above
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Shared {
    fn resolve(&self) -> Result<(RunConfig, DatasetManifest)> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let defaults = RunConfig::default();
        let methods = match &self.methods {
            Some(list) => parse_methods(list)?,
            None => file.methods.unwrap_or(defaults.methods),
        };
        let threads = match &self.threads {
            Some(t) => parse_threads(t)?,
            None => file.threads.unwrap_or(defaults.threads),
        };
        let config = RunConfig {
            methods,
            gamma: self.gamma.or(file.gamma).unwrap_or(defaults.gamma),
            averaging: !(self.no_averaging || file.no_averaging.unwrap_or(false)),
            out_dir: self.out.clone().or(file.out).unwrap_or(defaults.out_dir),
            report: self.report.clone().or(file.report),
            threads,
        };
        config.validate()?;

        let manifest = match (self.manifest.clone().or(file.manifest), self.input.clone().or(file.input)) {
            (Some(m), _) => load_manifest(&m)?,
            (None, Some(dir)) => discover_pairs(&dir)?,
            (None, None) => anyhow::bail!("either --input or --manifest is required"),
        };
        Ok((config, manifest))
    }
}

fn finish(summary: &RunSummary) -> ExitStatus {
    for (id, reason) in &summary.skipped {
        eprintln!("skipped {id}: {reason}");
    }
    eprintln!("{} pair(s) processed, {} skipped", summary.processed, summary.skipped.len());
    summary.status()
}

fn run(cli: Cli) -> Result<ExitStatus> {
    match cli.command {
        Command::Fuse(shared) => {
            let (config, manifest) = shared.resolve()?;
            let summary = run_fuse(&config, &manifest).context("fuse failed")?;
            Ok(finish(&summary))
        }
        Command::Eval { shared, fused } => {
            let (config, manifest) = shared.resolve()?;
            let outcome = run_eval(&config, &manifest, fused.as_deref()).context("eval failed")?;
            for m in &outcome.means {
                let cd = m.get(fcdfuse_core::Metric::Cd).map(format_real).unwrap_or_default();
                println!("{:<10} pairs={:<3} CD={cd}", m.method, m.pairs);
            }
            println!("report: {}", config.report_path(fcdfuse_cli::eval::DEFAULT_REPORT).display());
            Ok(finish(&outcome.summary))
        }
        Command::Bench { shared, reps } => {
            let (config, manifest) = shared.resolve()?;
            let (summary, rows) = run_bench(&config, &manifest, reps).context("bench failed")?;
            for r in &rows {
                println!(
                    "{:<12} {:<10} {}x{} model={} audited={} {} ns/px",
                    r.pair_id,
                    r.method.name(),
                    r.width,
                    r.height,
                    r.model_flops,
                    r.audited_flops,
                    format_real(r.ns_per_pixel)
                );
            }
            Ok(finish(&summary))
        }
        Command::Ablate { shared, kind, gammas } => {
            let (config, manifest) = shared.resolve()?;
            let kind: AblationKind = kind.parse()?;
            let gammas = gammas.unwrap_or_else(|| DEFAULT_GAMMAS.to_vec());
            let (summary, _) = run_ablation(&config, &manifest, kind, &gammas).context("ablation failed")?;
            Ok(finish(&summary))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ExitStatus::Fatal.code() as u8)
        }
    }
}
