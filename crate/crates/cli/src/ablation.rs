//! Side-by-side parameter studies of the fusion kernel: a sweep over gamma
//! (with HSV-AVG alongside for comparison) or averaging on/off.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use fcdfuse_core::metrics::{color_deviation, entropy, std_deviation};
use fcdfuse_core::{fuse_image_with, to_gray, FcdParams, FusionMethod};

use crate::config::RunConfig;
use crate::dataset::{hstack, save_png, DatasetManifest};
use crate::error::{CliError, Result};
use crate::pipeline::{build_pool, for_each_pair, RunSummary};
use crate::report::{create_writer, format_real};

pub const DEFAULT_GAMMAS: [f64; 4] = [0.5, 1.0, 2.0, 2.2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AblationKind {
    Gamma,
    Averaging,
}

impl AblationKind {
    pub fn name(self) -> &'static str {
        match self {
            AblationKind::Gamma => "gamma",
            AblationKind::Averaging => "averaging",
        }
    }
}

impl fmt::Display for AblationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AblationKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" => Ok(AblationKind::Gamma),
            "averaging" => Ok(AblationKind::Averaging),
            _ => Err(CliError::Invalid(format!("unknown ablation kind `{s}` (expected gamma or averaging)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Setting {
    /// Directory-safe label, e.g. `gamma_2.2` or `no_averaging`.
    pub label: String,
    pub method: FusionMethod,
}

pub fn settings(kind: AblationKind, gammas: &[f64], config: &RunConfig) -> Result<Vec<Setting>> {
    match kind {
        AblationKind::Gamma => {
            if gammas.is_empty() {
                return Err(CliError::Invalid("gamma ablation needs at least one gamma".into()));
            }
            let mut out = gammas
                .iter()
                .map(|&g| {
                    Ok(Setting {
                        label: format!("gamma_{}", format_real(g)),
                        method: FusionMethod::Fcd(FcdParams::new(g, config.averaging)?),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(Setting {
                label: "hsv_avg".into(),
                method: FusionMethod::HsvAvg { gamma: 1.0 },
            });
            Ok(out)
        }
        AblationKind::Averaging => Ok(vec![
            Setting {
                label: "averaging".into(),
                method: FusionMethod::Fcd(FcdParams::new(config.gamma, true)?),
            },
            Setting {
                label: "no_averaging".into(),
                method: FusionMethod::Fcd(FcdParams::new(config.gamma, false)?),
            },
        ]),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AblationRow {
    pub pair_id: String,
    pub setting: String,
    pub method: FusionMethod,
    pub cd: f64,
    pub en: f64,
    pub sd: f64,
}

pub const ABLATION_HEADER: [&str; 8] = ["pair_id", "setting", "method", "gamma", "averaging", "CD", "EN", "SD"];

impl AblationRow {
    fn record(&self) -> Vec<String> {
        let (gamma, averaging) = match self.method {
            FusionMethod::Fcd(p) => (p.gamma(), p.averaging().to_string()),
            FusionMethod::HsvAvg { gamma } => (gamma, String::new()),
            _ => (f64::NAN, String::new()),
        };
        vec![
            self.pair_id.clone(),
            self.setting.clone(),
            self.method.name().to_string(),
            format_real(gamma),
            averaging,
            format_real(self.cd),
            format_real(self.en),
            format_real(self.sd),
        ]
    }
}

pub fn ablation_dir(config: &RunConfig, kind: AblationKind) -> PathBuf {
    config.out_dir.join(format!("ablation_{kind}"))
}

/// Writes each variant to `<out>/ablation_<kind>/<label>/<id>.png`, a
/// comparison strip (visible, infrared, variants) to
/// `<out>/ablation_<kind>/grid/<id>.png`, and CD/EN/SD per variant to the
/// report (default `<out>/ablation_<kind>.csv`).
pub fn run_ablation(
    config: &RunConfig,
    manifest: &DatasetManifest,
    kind: AblationKind,
    gammas: &[f64],
) -> Result<(RunSummary, Vec<AblationRow>)> {
    config.validate()?;
    let settings = settings(kind, gammas, config)?;
    let root = ablation_dir(config, kind);
    let pool = build_pool(config.threads)?;
    let (per_pair, summary) = for_each_pair(&pool, manifest, |pair| {
        let mut strip = vec![pair.visible().clone(), pair.infrared().to_rgb()];
        let mut rows = Vec::new();
        for s in &settings {
            let fused = fuse_image_with(&s.method, pair);
            save_png(&fused, &root.join(&s.label).join(format!("{}.png", pair.id())))?;
            let gray = to_gray(&fused);
            rows.push(AblationRow {
                pair_id: pair.id().to_string(),
                setting: s.label.clone(),
                method: s.method,
                cd: color_deviation(pair.visible(), &fused)?,
                en: entropy(&gray),
                sd: std_deviation(&gray),
            });
            strip.push(fused);
        }
        save_png(&hstack(&strip)?, &root.join("grid").join(format!("{}.png", pair.id())))?;
        Ok(rows)
    });
    let rows: Vec<AblationRow> = per_pair.into_iter().flatten().collect();

    let path = config.report_path(&format!("ablation_{kind}.csv"));
    let mut w = create_writer(&path)?;
    w.write_record(ABLATION_HEADER)?;
    for r in &rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;
    Ok((summary, rows))
}
