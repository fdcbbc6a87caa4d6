//! Reference-based similarity metrics: MSE, PSNR, RMSE and SSIM.

use crate::error::{FusionError, Result};
use crate::num::Scalar;
use crate::raster::GrayImage;

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;
const PEAK: f64 = 255.0;

pub fn mse<T: Scalar>(a: &GrayImage, b: &GrayImage) -> Result<T> {
    a.ensure_same_dims(b)?;
    let sum = a.values().zip(b.values()).fold(T::zero(), |acc, (x, y)| {
        let d = T::of_u8(x) - T::of_u8(y);
        acc + d * d
    });
    Ok(sum / T::from_usize(a.len()).expect("count fits"))
}

/// `10 log10(255^2 / MSE)` in dB; identical images give `+inf`.
pub fn psnr_between<T: Scalar>(a: &GrayImage, b: &GrayImage) -> Result<T> {
    let m: T = mse(a, b)?;
    if m == T::zero() {
        return Ok(T::infinity());
    }
    Ok(T::lit(10.0) * (T::lit(PEAK * PEAK) / m).log10())
}

/// `sqrt(MSE) / 255`.
pub fn rmse_between<T: Scalar>(a: &GrayImage, b: &GrayImage) -> Result<T> {
    let m: T = mse(a, b)?;
    Ok(m.sqrt() / T::lit(PEAK))
}

/// Normalized 1-D Gaussian taps; the 2-D window is their outer product.
pub fn gaussian_taps(size: usize, sigma: f64) -> Vec<f64> {
    let c = (size as f64 - 1.0) / 2.0;
    let raw: Vec<f64> = (0..size)
        .map(|i| (-(i as f64 - c).powi(2) / (2.0 * sigma * sigma)).exp())
        .collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / s).collect()
}

/// Valid-mode separable filtering of a row-major plane.
fn filter_valid<T: Scalar>(plane: &[T], w: usize, h: usize, taps: &[T]) -> Vec<T> {
    let n = taps.len();
    let (ow, oh) = (w + 1 - n, h + 1 - n);
    let mut horiz = vec![T::zero(); ow * h];
    for y in 0..h {
        let row = &plane[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = taps.iter().zip(&row[x..x + n]).fold(T::zero(), |a, (&t, &v)| a + t * v);
        }
    }
    let mut out = vec![T::zero(); ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = taps
                .iter()
                .enumerate()
                .fold(T::zero(), |a, (k, &t)| a + t * horiz[(y + k) * ow + x]);
        }
    }
    out
}

/// Mean SSIM over all window positions (11x11 Gaussian, sigma 1.5).
pub fn ssim_between<T: Scalar>(a: &GrayImage, b: &GrayImage) -> Result<T> {
    a.ensure_same_dims(b)?;
    let (w, h) = a.dims();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(FusionError::ImageTooSmall {
            metric: "SSIM",
            min_width: SSIM_WINDOW,
            min_height: SSIM_WINDOW,
            width: w,
            height: h,
        });
    }
    let taps: Vec<T> = gaussian_taps(SSIM_WINDOW, SSIM_SIGMA).into_iter().map(T::lit).collect();
    let x: Vec<T> = a.values().map(T::of_u8).collect();
    let y: Vec<T> = b.values().map(T::of_u8).collect();
    let prod = |p: &[T], q: &[T]| p.iter().zip(q).map(|(&u, &v)| u * v).collect::<Vec<T>>();

    let mu_x = filter_valid(&x, w, h, &taps);
    let mu_y = filter_valid(&y, w, h, &taps);
    let e_xx = filter_valid(&prod(&x, &x), w, h, &taps);
    let e_yy = filter_valid(&prod(&y, &y), w, h, &taps);
    let e_xy = filter_valid(&prod(&x, &y), w, h, &taps);

    let c1 = T::lit((SSIM_K1 * PEAK).powi(2));
    let c2 = T::lit((SSIM_K2 * PEAK).powi(2));
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for i in 0..mu_x.len() {
        let (mx, my) = (mu_x[i], mu_y[i]);
        let vx = e_xx[i] - mx * mx;
        let vy = e_yy[i] - my * my;
        let cov = e_xy[i] - mx * my;
        let num = (two * mx * my + c1) * (two * cov + c2);
        let den = (mx * mx + my * my + c1) * (vx + vy + c2);
        sum = sum + num / den;
    }
    Ok(sum / T::from_usize(mu_x.len()).expect("count fits"))
}

/// Each metric against both references, averaged.
pub fn fused_psnr<T: Scalar>(visible: &GrayImage, infrared: &GrayImage, fused: &GrayImage) -> Result<T> {
    let a: T = psnr_between(visible, fused)?;
    let b: T = psnr_between(infrared, fused)?;
    Ok((a + b) / T::lit(2.0))
}

pub fn fused_rmse<T: Scalar>(visible: &GrayImage, infrared: &GrayImage, fused: &GrayImage) -> Result<T> {
    let a: T = rmse_between(visible, fused)?;
    let b: T = rmse_between(infrared, fused)?;
    Ok((a + b) / T::lit(2.0))
}

pub fn fused_ssim<T: Scalar>(visible: &GrayImage, infrared: &GrayImage, fused: &GrayImage) -> Result<T> {
    let a: T = ssim_between(visible, fused)?;
    let b: T = ssim_between(infrared, fused)?;
    Ok((a + b) / T::lit(2.0))
}
