//! Single-image feature metrics: AG, EI, SD and SF.

use crate::error::{FusionError, Result};
use crate::num::Scalar;
use crate::raster::GrayImage;

fn require(img: &GrayImage, metric: &'static str, min: usize) -> Result<()> {
    let (width, height) = img.dims();
    if width < min || height < min {
        return Err(FusionError::ImageTooSmall {
            metric,
            min_width: min,
            min_height: min,
            width,
            height,
        });
    }
    Ok(())
}

#[inline]
fn at<T: Scalar>(img: &GrayImage, x: usize, y: usize) -> T {
    T::of_u8(img.get(x, y).0)
}

/// Average gradient: mean of `sqrt((dx^2 + dy^2) / 2)` over the
/// `(w-1) x (h-1)` grid of forward differences.
pub fn average_gradient<T: Scalar>(img: &GrayImage) -> Result<T> {
    require(img, "AG", 2)?;
    let (w, h) = img.dims();
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for y in 0..h - 1 {
        for x in 0..w - 1 {
            let c = at::<T>(img, x, y);
            let dx = at::<T>(img, x + 1, y) - c;
            let dy = at::<T>(img, x, y + 1) - c;
            sum = sum + ((dx * dx + dy * dy) / two).sqrt();
        }
    }
    Ok(sum / T::from_usize((w - 1) * (h - 1)).expect("count fits"))
}

/// 3x3 Sobel gradient magnitude centred on `(x, y)`. The caller keeps the
/// window inside the image.
pub fn sobel_magnitude<T: Scalar>(img: &GrayImage, x: usize, y: usize) -> T {
    let p = |dx: usize, dy: usize| at::<T>(img, x + dx - 1, y + dy - 1);
    let two = T::lit(2.0);
    let gx = (p(2, 0) + two * p(2, 1) + p(2, 2)) - (p(0, 0) + two * p(0, 1) + p(0, 2));
    let gy = (p(0, 2) + two * p(1, 2) + p(2, 2)) - (p(0, 0) + two * p(1, 0) + p(2, 0));
    (gx * gx + gy * gy).sqrt()
}

/// Edge intensity: mean Sobel magnitude over the valid interior.
pub fn edge_intensity<T: Scalar>(img: &GrayImage) -> Result<T> {
    require(img, "EI", 3)?;
    let (w, h) = img.dims();
    let mut sum = T::zero();
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            sum = sum + sobel_magnitude::<T>(img, x, y);
        }
    }
    Ok(sum / T::from_usize((w - 2) * (h - 2)).expect("count fits"))
}

/// Population standard deviation of the pixel values.
pub fn std_deviation<T: Scalar>(img: &GrayImage) -> T {
    let n = T::from_usize(img.len()).expect("count fits");
    let mean = img.values().fold(T::zero(), |a, v| a + T::of_u8(v)) / n;
    let var = img.values().fold(T::zero(), |a, v| {
        let d = T::of_u8(v) - mean;
        a + d * d
    }) / n;
    var.sqrt()
}

/// `sqrt(RF^2 + CF^2)` with RF/CF the RMS of horizontal/vertical first
/// differences.
pub fn spatial_frequency<T: Scalar>(img: &GrayImage) -> Result<T> {
    require(img, "SF", 2)?;
    let (w, h) = img.dims();
    let mut row_sq = T::zero();
    let mut col_sq = T::zero();
    for y in 0..h {
        for x in 0..w {
            let c = at::<T>(img, x, y);
            if x > 0 {
                let d = c - at::<T>(img, x - 1, y);
                row_sq = row_sq + d * d;
            }
            if y > 0 {
                let d = c - at::<T>(img, x, y - 1);
                col_sq = col_sq + d * d;
            }
        }
    }
    let rf2 = row_sq / T::from_usize(h * (w - 1)).expect("count fits");
    let cf2 = col_sq / T::from_usize(w * (h - 1)).expect("count fits");
    Ok((rf2 + cf2).sqrt())
}
