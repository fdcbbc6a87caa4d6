//! Fusion quality metrics.
//!
//! Everything except CD is computed on grayscale images: the fused result
//! and the visible image are reduced with BT.601 luma, the infrared image is
//! used as is. Similarity metrics compare the fused image with both inputs
//! and average the two scores (MI sums them).

mod color;
mod features;
mod information;
mod similarity;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use color::{color_deviation, pixel_deviation};
pub use features::{average_gradient, edge_intensity, sobel_magnitude, spatial_frequency, std_deviation};
pub use information::{
    cross_entropy, entropy, fused_cross_entropy, fused_mutual_information, histogram, mutual_information_between,
    BINS,
};
pub use similarity::{
    fused_psnr, fused_rmse, fused_ssim, gaussian_taps, mse, psnr_between, rmse_between, ssim_between, SSIM_K1,
    SSIM_K2, SSIM_SIGMA, SSIM_WINDOW,
};

use crate::error::{FusionError, Result};
use crate::num::Scalar;
use crate::raster::{to_gray, GrayImage, ImagePair, RgbImage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Cd,
    Ce,
    En,
    Mi,
    Ag,
    Ei,
    Sd,
    Sf,
    Psnr,
    Ssim,
    Rmse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricDirection {
    HigherIsBetter,
    LowerIsBetter,
}

impl Metric {
    /// All metrics in report column order.
    pub const ALL: [Metric; 11] = [
        Metric::Cd,
        Metric::Ce,
        Metric::En,
        Metric::Mi,
        Metric::Ag,
        Metric::Ei,
        Metric::Sd,
        Metric::Sf,
        Metric::Psnr,
        Metric::Ssim,
        Metric::Rmse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Cd => "CD",
            Metric::Ce => "CE",
            Metric::En => "EN",
            Metric::Mi => "MI",
            Metric::Ag => "AG",
            Metric::Ei => "EI",
            Metric::Sd => "SD",
            Metric::Sf => "SF",
            Metric::Psnr => "PSNR",
            Metric::Ssim => "SSIM",
            Metric::Rmse => "RMSE",
        }
    }

    pub fn direction(self) -> MetricDirection {
        match self {
            Metric::Cd | Metric::Ce | Metric::Rmse => MetricDirection::LowerIsBetter,
            _ => MetricDirection::HigherIsBetter,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = FusionError;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| FusionError::UnknownMetric(s.to_string()))
    }
}

/// Metric values for one fused image. Metrics that could not be computed
/// (for instance SSIM on a tiny image) are absent and carry a note.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport<T> {
    pub pair_id: String,
    pub method: String,
    pub values: BTreeMap<Metric, T>,
    pub notes: BTreeMap<Metric, String>,
}

impl<T: Scalar> MetricReport<T> {
    pub fn get(&self, metric: Metric) -> Option<T> {
        self.values.get(&metric).copied()
    }

    pub fn by_name(&self, name: &str) -> Option<T> {
        name.parse().ok().and_then(|m| self.get(m))
    }

    pub fn note(&self, metric: Metric) -> Option<&str> {
        self.notes.get(&metric).map(String::as_str)
    }

    pub fn is_complete(&self) -> bool {
        self.values.len() == Metric::ALL.len()
    }

    /// Present values in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Metric, T)> + '_ {
        self.values.iter().map(|(m, v)| (*m, *v))
    }
}

/// Grayscale views shared by the gray-domain metrics.
struct GrayViews {
    visible: GrayImage,
    infrared: GrayImage,
    fused: GrayImage,
}

impl GrayViews {
    fn new(pair: &ImagePair, fused: &RgbImage) -> Result<Self> {
        pair.visible().ensure_same_dims(fused)?;
        Ok(GrayViews {
            visible: to_gray(pair.visible()),
            infrared: pair.infrared().clone(),
            fused: to_gray(fused),
        })
    }
}

pub fn mutual_information<T: Scalar>(pair: &ImagePair, fused: &RgbImage) -> Result<T> {
    let g = GrayViews::new(pair, fused)?;
    fused_mutual_information(&g.visible, &g.infrared, &g.fused)
}

pub fn psnr<T: Scalar>(pair: &ImagePair, fused: &RgbImage) -> Result<T> {
    let g = GrayViews::new(pair, fused)?;
    fused_psnr(&g.visible, &g.infrared, &g.fused)
}

pub fn rmse<T: Scalar>(pair: &ImagePair, fused: &RgbImage) -> Result<T> {
    let g = GrayViews::new(pair, fused)?;
    fused_rmse(&g.visible, &g.infrared, &g.fused)
}

pub fn ssim<T: Scalar>(pair: &ImagePair, fused: &RgbImage) -> Result<T> {
    let g = GrayViews::new(pair, fused)?;
    fused_ssim(&g.visible, &g.infrared, &g.fused)
}

pub fn evaluate_metric<T: Scalar>(metric: Metric, pair: &ImagePair, fused: &RgbImage) -> Result<T> {
    let g = GrayViews::new(pair, fused)?;
    compute(metric, pair, fused, &g)
}

fn compute<T: Scalar>(metric: Metric, pair: &ImagePair, fused: &RgbImage, g: &GrayViews) -> Result<T> {
    let (v, i, f) = (&g.visible, &g.infrared, &g.fused);
    match metric {
        Metric::Cd => color_deviation(pair.visible(), fused),
        Metric::Ce => fused_cross_entropy(v, i, f),
        Metric::En => Ok(entropy(f)),
        Metric::Mi => fused_mutual_information(v, i, f),
        Metric::Ag => average_gradient(f),
        Metric::Ei => edge_intensity(f),
        Metric::Sd => Ok(std_deviation(f)),
        Metric::Sf => spatial_frequency(f),
        Metric::Psnr => fused_psnr(v, i, f),
        Metric::Ssim => fused_ssim(v, i, f),
        Metric::Rmse => fused_rmse(v, i, f),
    }
}

/// Computes every metric for one fused image.
///
/// A dimension mismatch between the pair and `fused` is an error; metrics
/// that reject the image size are left out of the report with a note.
pub fn evaluate_all<T: Scalar>(pair: &ImagePair, fused: &RgbImage, method: &str) -> Result<MetricReport<T>> {
    let g = GrayViews::new(pair, fused)?;
    let mut report = MetricReport {
        pair_id: pair.id().to_string(),
        method: method.to_string(),
        values: BTreeMap::new(),
        notes: BTreeMap::new(),
    };
    for m in Metric::ALL {
        match compute::<T>(m, pair, fused, &g) {
            Ok(v) => {
                report.values.insert(m, v);
            }
            Err(e @ FusionError::ImageTooSmall { .. }) => {
                report.notes.insert(m, e.to_string());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
