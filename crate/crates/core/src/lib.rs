//! Color-preserving fusion of visible and infrared images.
//!
//! The crate provides the vector-scaling fusion kernel ([`fcd`]), three
//! color-space averaging baselines ([`baseline`]), the evaluation metrics
//! ([`metrics`]) and an analytical FLOP model with a dynamic audit
//! ([`flops`]).
//!
//! Numeric code is generic over [`Scalar`] (`f32`, `f64` or the counting
//! scalar used by the audit). The aliases at the crate root fix the scalar
//! to `f64`, which is what the command-line tool and reports use.
//!
//! ```
//! use fcdfuse_core::{fuse_image, make_pair, FcdParams, Gray8, GrayImage, Rgb8, RgbImage};
//!
//! let visible = RgbImage::filled(4, 4, Rgb8::new(100, 50, 25)).unwrap();
//! let infrared = GrayImage::filled(4, 4, Gray8(128)).unwrap();
//! let pair = make_pair("demo", visible, infrared).unwrap();
//! let fused = fuse_image(&pair, &FcdParams::default());
//! assert_eq!(fused.get(0, 0), Rgb8::new(95, 47, 24));
//! ```

pub mod baseline;
pub mod colorspace;
mod error;
pub mod fcd;
pub mod flops;
pub mod metrics;
mod num;
pub mod raster;

pub use baseline::{fuse_image_with, fuse_image_with_as, fuse_pixel_with, FusionMethod};
pub use error::{FusionError, Result};
pub use fcd::{fuse_image, fuse_image_as, fuse_pixel, FcdParams, DEFAULT_GAMMA};
pub use flops::{measured_flop_audit, per_pixel_flops, total_flops, FlopAudit, FlopRow, FlopTable};
pub use metrics::{color_deviation, evaluate_all, Metric, MetricDirection};
pub use num::Scalar;
pub use raster::{luma, make_pair, to_gray, vec_of, Gray8, GrayImage, ImageBuffer, ImagePair, Pixel, Rgb8, RgbImage};

pub type ColorVec3 = raster::ColorVec3<f64>;
pub type ScaleFactor = fcd::ScaleFactor<f64>;
pub type YiqColor = colorspace::YiqColor<f64>;
pub type HsvColor = colorspace::HsvColor<f64>;
pub type MetricReport = metrics::MetricReport<f64>;

pub type ColorVec3F32 = raster::ColorVec3<f32>;
pub type MetricReportF32 = metrics::MetricReport<f32>;
