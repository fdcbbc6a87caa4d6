//! Run configuration: built-in defaults, an optional `key = value` file and
//! command-line flags, in increasing order of precedence.

use std::fs;
use std::path::{Path, PathBuf};

use fcdfuse_core::{FcdParams, FusionMethod, DEFAULT_GAMMA};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub methods: Vec<FusionMethod>,
    pub gamma: f64,
    pub averaging: bool,
    pub out_dir: PathBuf,
    pub report: Option<PathBuf>,
    /// `None` lets the pool pick one worker per core.
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            methods: FusionMethod::FAST.to_vec(),
            gamma: DEFAULT_GAMMA,
            averaging: true,
            out_dir: PathBuf::from("out"),
            report: None,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(CliError::Invalid("at least one method is required".into()));
        }
        FcdParams::new(self.gamma, self.averaging)?;
        if self.threads == Some(0) {
            return Err(CliError::Invalid("threads must be positive".into()));
        }
        Ok(())
    }

    /// The method list with the gamma and averaging settings applied to
    /// FCDFusion.
    pub fn resolved_methods(&self) -> Result<Vec<FusionMethod>> {
        let params = FcdParams::new(self.gamma, self.averaging)?;
        Ok(self
            .methods
            .iter()
            .map(|m| match m {
                FusionMethod::Fcd(_) => FusionMethod::Fcd(params),
                other => *other,
            })
            .collect())
    }

    pub fn report_path(&self, default_name: &str) -> PathBuf {
        self.report
            .clone()
            .unwrap_or_else(|| self.out_dir.join(default_name))
    }
}

/// Settings read from a config file; every field is optional.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigFile {
    pub input: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub methods: Option<Vec<FusionMethod>>,
    pub gamma: Option<f64>,
    pub no_averaging: Option<bool>,
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub threads: Option<Option<usize>>,
}

pub fn parse_methods(list: &str) -> Result<Vec<FusionMethod>> {
    let mut out = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let m: FusionMethod = token.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(CliError::Invalid(format!("empty method list `{list}`")));
    }
    Ok(out)
}

pub fn parse_threads(value: &str) -> Result<Option<usize>> {
    if value.eq_ignore_ascii_case("auto") {
        return Ok(None);
    }
    match value.parse::<usize>() {
        Ok(n) if n > 0 => Ok(Some(n)),
        _ => Err(CliError::Invalid(format!("threads must be a positive integer or `auto`, got `{value}`"))),
    }
}

fn parse_bool(value: &str) -> Option<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, path)
    }

    /// Parses `key = value` lines. Blank lines and `#` comments are ignored;
    /// keys may use `-` or `_`.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut cfg = ConfigFile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Config {
                path: path.to_path_buf(),
                line: idx + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "input" => cfg.input = Some(value.into()),
                "manifest" => cfg.manifest = Some(value.into()),
                "methods" => cfg.methods = Some(parse_methods(value).map_err(|e| err(e.to_string()))?),
                "gamma" => {
                    cfg.gamma = Some(value.parse().map_err(|_| err(format!("invalid gamma `{value}`")))?)
                }
                "no_averaging" => {
                    cfg.no_averaging =
                        Some(parse_bool(value).ok_or_else(|| err(format!("invalid boolean `{value}`")))?)
                }
                "out" => cfg.out = Some(value.into()),
                "report" => cfg.report = Some(value.into()),
                "threads" => cfg.threads = Some(parse_threads(value).map_err(|e| err(e.to_string()))?),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }
}
