//! Color deviation: the mean angle between visible and fused color vectors.

use crate::error::Result;
use crate::num::Scalar;
use crate::raster::{Rgb8, RgbImage};

/// Angle in radians between two colors viewed as RGB vectors.
///
/// Dot products and squared norms are formed exactly in integers, so equal
/// or exactly proportional colors give an angle of exactly zero. A zero
/// vector has no direction and yields 0.
#[inline]
pub fn pixel_deviation<T: Scalar>(a: Rgb8, b: Rgb8) -> T {
    let [ar, ag, ab] = a.channels().map(u64::from);
    let [br, bg, bb] = b.channels().map(u64::from);
    let dot = ar * br + ag * bg + ab * bb;
    let na = ar * ar + ag * ag + ab * ab;
    let nb = br * br + bg * bg + bb * bb;
    if na == 0 || nb == 0 {
        return T::zero();
    }
    let denom = T::from_u64(na * nb).expect("fits in scalar").sqrt();
    let cos = T::from_u64(dot).expect("fits in scalar") / denom;
    cos.max(-T::one()).min(T::one()).acos()
}

/// Mean per-pixel deviation, in `[0, pi]`.
pub fn color_deviation<T: Scalar>(visible: &RgbImage, fused: &RgbImage) -> Result<T> {
    visible.ensure_same_dims(fused)?;
    let sum = visible
        .pixels()
        .iter()
        .zip(fused.pixels())
        .fold(T::zero(), |acc, (&v, &f)| acc + pixel_deviation::<T>(v, f));
    Ok(sum / T::from_usize(visible.len()).expect("pixel count fits"))
}
