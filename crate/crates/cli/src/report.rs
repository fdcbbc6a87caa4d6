//! CSV report writing.
//!
//! Reals are written with six significant digits, `inf` for infinities and
//! an empty field for values that could not be computed. Records end with a
//! bare `\n`.

use std::fs;
use std::path::Path;

use csv::{Terminator, Writer, WriterBuilder};
use fcdfuse_core::{Metric, MetricReport};

use crate::error::{CliError, Result};

pub const FLOPS_COLUMN: &str = "flops_total";

/// `%.6g`-style formatting: fixed notation for decimal exponents in
/// `[-4, 6)`, scientific otherwise, trailing zeros trimmed.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..6).contains(&exp) {
        let decimals = (5 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn format_opt(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

pub fn create_writer(path: &Path) -> Result<Writer<fs::File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(WriterBuilder::new().terminator(Terminator::Any(b'\n')).from_writer(file))
}

pub fn eval_header() -> Vec<String> {
    let mut h = vec!["pair_id".to_string(), "method".to_string()];
    h.extend(Metric::ALL.iter().map(|m| m.name().to_string()));
    h.push(FLOPS_COLUMN.into());
    h
}

pub fn means_header() -> Vec<String> {
    let mut h = vec!["method".to_string(), "pairs".to_string()];
    h.extend(Metric::ALL.iter().map(|m| m.name().to_string()));
    h.push(FLOPS_COLUMN.into());
    h
}

/// One evaluated (pair, method) combination.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalRow {
    pub report: MetricReport,
    pub flops_total: Option<u64>,
}

impl EvalRow {
    pub fn record(&self) -> Vec<String> {
        let mut r = vec![self.report.pair_id.clone(), self.report.method.clone()];
        r.extend(Metric::ALL.iter().map(|&m| format_opt(self.report.get(m))));
        r.push(self.flops_total.map(|f| f.to_string()).unwrap_or_default());
        r
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MethodMeans {
    pub method: String,
    pub pairs: usize,
    pub values: Vec<(Metric, Option<f64>)>,
    pub flops_total: Option<f64>,
}

impl MethodMeans {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        self.values.iter().find(|(m, _)| *m == metric).and_then(|(_, v)| *v)
    }

    pub fn record(&self) -> Vec<String> {
        let mut r = vec![self.method.clone(), self.pairs.to_string()];
        r.extend(self.values.iter().map(|(_, v)| format_opt(*v)));
        r.push(format_opt(self.flops_total));
        r
    }
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Per-method dataset means in first-appearance order. Missing and
/// infinite values are left out of each mean.
pub fn method_means(rows: &[EvalRow]) -> Vec<MethodMeans> {
    let mut methods: Vec<&str> = Vec::new();
    for r in rows {
        if !methods.contains(&r.report.method.as_str()) {
            methods.push(&r.report.method);
        }
    }
    methods
        .into_iter()
        .map(|method| {
            let group: Vec<&EvalRow> = rows.iter().filter(|r| r.report.method == method).collect();
            let values = Metric::ALL
                .iter()
                .map(|&m| {
                    let finite = group.iter().filter_map(|r| r.report.get(m)).filter(|v| v.is_finite());
                    (m, mean(finite))
                })
                .collect();
            MethodMeans {
                method: method.to_string(),
                pairs: group.len(),
                values,
                flops_total: mean(group.iter().filter_map(|r| r.flops_total).map(|f| f as f64)),
            }
        })
        .collect()
}

/// `report.csv` -> `report_means.csv`.
pub fn means_path(report: &Path) -> std::path::PathBuf {
    let stem = report.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    report.with_file_name(format!("{stem}_means.csv"))
}

pub fn write_eval(path: &Path, rows: &[EvalRow]) -> Result<Vec<MethodMeans>> {
    let mut w = create_writer(path)?;
    w.write_record(eval_header())?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush().map_err(|e| CliError::io(path, e))?;

    let means = method_means(rows);
    let mpath = means_path(path);
    let mut w = create_writer(&mpath)?;
    w.write_record(means_header())?;
    for m in &means {
        w.write_record(m.record())?;
    }
    w.flush().map_err(|e| CliError::io(&mpath, e))?;
    Ok(means)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn six_significant_digits() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (0.011_703_512, "0.0117035"),
            (48.130_803_608, "48.1308"),
            (1_164_352.0, "1.16435e+06"),
            (123_456.7, "123457"),
            (0.000_012_345_67, "1.23457e-05"),
            (0.000_123_456_7, "0.000123457"),
            (-2.5, "-2.5"),
            (999_999.7, "1e+06"),
            (f64::INFINITY, "inf"),
            (std::f64::consts::FRAC_PI_2, "1.5708"),
        ];
        for (x, want) in cases {
            assert_eq!(format_real(x), want, "{x}");
        }
    }

    fn row(method: &str, psnr: f64, cd: Option<f64>) -> EvalRow {
        let mut values = BTreeMap::new();
        values.insert(Metric::Psnr, psnr);
        if let Some(cd) = cd {
            values.insert(Metric::Cd, cd);
        }
        EvalRow {
            report: MetricReport {
                pair_id: "p".into(),
                method: method.into(),
                values,
                notes: BTreeMap::new(),
            },
            flops_total: Some(10),
        }
    }

    #[test]
    fn means_skip_infinite_and_missing_values() {
        let rows = [
            row("A", 10.0, Some(0.1)),
            row("B", 5.0, None),
            row("A", f64::INFINITY, Some(0.3)),
            row("A", 20.0, None),
        ];
        let m = method_means(&rows);
        assert_eq!(m.len(), 2);
        assert_eq!((m[0].method.as_str(), m[0].pairs), ("A", 3));
        assert_eq!(m[0].get(Metric::Psnr), Some(15.0));
        assert!((m[0].get(Metric::Cd).unwrap() - 0.2).abs() < 1e-15);
        assert_eq!(m[1].get(Metric::Cd), None);
        assert_eq!(m[1].flops_total, Some(10.0));
    }

    #[test]
    fn record_layout() {
        let r = row("A", f64::INFINITY, Some(0.0));
        let rec = r.record();
        assert_eq!(rec.len(), eval_header().len());
        assert_eq!(rec[2], "0");
        assert_eq!(rec[10], "inf");
        assert_eq!(rec[3], "");
        assert_eq!(rec[13], "10");
    }

    #[test]
    fn means_file_name() {
        assert_eq!(means_path(Path::new("out/report.csv")), Path::new("out/report_means.csv"));
    }
}
