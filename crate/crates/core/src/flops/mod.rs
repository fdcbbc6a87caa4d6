//! Analytical per-pixel FLOP model and its dynamic audit.
//!
//! One FLOP is one floating-point multiply or divide. Float additions,
//! comparisons, integer shifts, rounding and clamping are free. Under that
//! convention the per-pixel costs, split into from-RGB / fusion / to-RGB
//! stages, are:
//!
//! | method    | from RGB | fusion | to RGB | total |
//! |-----------|---------:|-------:|-------:|------:|
//! | RGB-AVG   |        0 |      0 |      0 |     0 |
//! | YIQ-AVG   |        9 |      0 |      9 |    18 |
//! | HSV-AVG   |        6 |      0 |      8 |    14 |
//! | FCDFusion |        0 |      7 |      0 |     7 |
//!
//! HSV-AVG's infrared normalization and V-channel halving are charged to
//! the reconstruction stage together with the six multiplies of the
//! chroma/sector reconstruction, which is why its to-RGB column reads 8.
//! YIQ-AVG folds the halving of `y + v_i` into the inverse matrix.
//!
//! Non-default gammas replace the squaring with one exponentiation, which
//! is reported separately in [`FlopRow::exponentiations`].
//!
//! The audit runs the production kernels instantiated with [`Counted`] on
//! the calling thread and must agree exactly with the model.

mod counted;

pub use counted::{count_ops, Counted, OpCounts};

use crate::baseline::{fuse_pixel_with, FusionMethod};
use crate::error::Result;
use crate::raster::{ImagePair, RgbImage};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlopRow {
    pub from_rgb: u64,
    pub fusion: u64,
    pub to_rgb: u64,
    /// Calls to a general power function, not included in [`FlopRow::total`].
    pub exponentiations: u64,
}

impl FlopRow {
    pub const fn new(from_rgb: u64, fusion: u64, to_rgb: u64) -> Self {
        FlopRow {
            from_rgb,
            fusion,
            to_rgb,
            exponentiations: 0,
        }
    }

    pub fn total(&self) -> u64 {
        self.from_rgb + self.fusion + self.to_rgb
    }

    pub fn stages(&self) -> (u64, u64, u64) {
        (self.from_rgb, self.fusion, self.to_rgb)
    }
}

pub fn per_pixel_flops(method: &FusionMethod) -> FlopRow {
    match method {
        FusionMethod::RgbAvg => FlopRow::new(0, 0, 0),
        FusionMethod::YiqAvg => FlopRow::new(9, 0, 9),
        FusionMethod::HsvAvg { gamma } => FlopRow {
            exponentiations: u64::from(*gamma != 1.0),
            ..FlopRow::new(6, 0, 8)
        },
        FusionMethod::Fcd(p) if p.is_fast_path() => FlopRow::new(0, 7, 0),
        // The squaring multiply becomes a power call.
        FusionMethod::Fcd(_) => FlopRow {
            exponentiations: 1,
            ..FlopRow::new(0, 6, 0)
        },
    }
}

/// Looks a method up by name; methods without a cost model (e.g. the
/// learned fusers) are rejected.
pub fn per_pixel_flops_by_name(name: &str) -> Result<FlopRow> {
    Ok(per_pixel_flops(&name.parse()?))
}

pub fn total_flops(method: &FusionMethod, width: usize, height: usize) -> u64 {
    per_pixel_flops(method).total() * width as u64 * height as u64
}

/// Per-pixel costs of the four fast methods with default parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct FlopTable {
    pub rows: Vec<(FusionMethod, FlopRow)>,
}

impl FlopTable {
    pub fn standard() -> Self {
        FlopTable {
            rows: FusionMethod::FAST
                .iter()
                .map(|m| (*m, per_pixel_flops(m)))
                .collect(),
        }
    }

    pub fn get(&self, name: &str) -> Option<FlopRow> {
        self.rows
            .iter()
            .find(|(m, _)| m.name() == name || m.key() == name)
            .map(|(_, r)| *r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlopAudit {
    pub counts: OpCounts,
    pub pixels: u64,
}

impl FlopAudit {
    pub fn total(&self) -> u64 {
        self.counts.flops()
    }

    pub fn per_pixel(&self) -> f64 {
        self.total() as f64 / self.pixels as f64
    }
}

/// Fuses `pair` with the instrumented scalar and returns the output with
/// the operation tally. Single-threaded.
pub fn audited_fuse(method: &FusionMethod, pair: &ImagePair) -> (RgbImage, OpCounts) {
    count_ops(|| pair.map_pixels_sequential(|c, v| fuse_pixel_with::<Counted>(method, c, v)))
}

pub fn measured_flop_audit(method: &FusionMethod, pair: &ImagePair) -> FlopAudit {
    let (_, counts) = audited_fuse(method, pair);
    let (w, h) = pair.dims();
    FlopAudit {
        counts,
        pixels: (w * h) as u64,
    }
}
