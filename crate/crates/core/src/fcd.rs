//! The color-preserving vector-scaling fusion kernel.
//!
//! Each fused pixel is the visible color vector scaled by a factor `k`
//! derived from the gamma-corrected infrared value:
//!
//! ```text
//! alpha = (v_i / 255)^gamma
//! v_m   = max(r, g, b, 1)
//! k     = alpha * ((v_m + 255) >> 1) / v_m + 0.5     (averaging)
//! k     = alpha * (v_m + 255) / v_m                  (no averaging)
//! c_f   = clamp(round(k * c_v), 0, 255)
//! ```
//!
//! With `gamma == 2.0` the exponentiation reduces to one multiplication and
//! a fused pixel costs exactly seven multiplies/divides.

use crate::error::{FusionError, Result};
use crate::num::Scalar;
use crate::raster::{ImagePair, Rgb8, RgbImage};

pub const DEFAULT_GAMMA: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FcdParams {
    gamma: f64,
    averaging: bool,
}

impl Default for FcdParams {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl FcdParams {
    /// Gamma 2 with averaging.
    pub const DEFAULT: FcdParams = FcdParams {
        gamma: DEFAULT_GAMMA,
        averaging: true,
    };

    pub fn new(gamma: f64, averaging: bool) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(FusionError::InvalidGamma(gamma));
        }
        Ok(FcdParams { gamma, averaging })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn averaging(&self) -> bool {
        self.averaging
    }

    /// True when the squaring fast path applies (gamma is exactly 2.0).
    pub fn is_fast_path(&self) -> bool {
        is_square_gamma(self.gamma)
    }
}

#[inline]
pub(crate) fn is_square_gamma(gamma: f64) -> bool {
    gamma.to_bits() == 2.0f64.to_bits()
}

/// The final per-pixel multiplier `k`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ScaleFactor<T>(T);

impl<T: Scalar> ScaleFactor<T> {
    #[inline]
    pub fn value(self) -> T {
        self.0
    }
}

/// `(v_i / 255)^gamma`, in `[0, 1]`.
#[inline]
pub fn scaling_ratio<T: Scalar>(v_i: u8, gamma: f64) -> T {
    let normalized = T::of_u8(v_i) / T::lit(255.0);
    if is_square_gamma(gamma) {
        normalized * normalized
    } else {
        normalized.powf(T::lit(gamma))
    }
}

/// Brightest channel, floored at 1 so it can be used as a divisor.
#[inline]
pub fn max_component(c: Rgb8) -> u8 {
    c.r.max(c.g).max(c.b).max(1)
}

#[inline]
pub fn scale_factor<T: Scalar>(alpha: T, v_m: u8, averaging: bool) -> ScaleFactor<T> {
    let v_m = v_m.max(1) as u16;
    let ceiling = v_m + 255;
    let k = if averaging {
        T::of_u16(ceiling >> 1) * alpha / T::of_u16(v_m) + T::lit(0.5)
    } else {
        alpha * T::of_u16(ceiling) / T::of_u16(v_m)
    };
    ScaleFactor(k)
}

#[inline]
pub fn fuse_pixel<T: Scalar>(c_v: Rgb8, v_i: u8, params: &FcdParams) -> Rgb8 {
    let alpha = scaling_ratio::<T>(v_i, params.gamma);
    let k = scale_factor(alpha, max_component(c_v), params.averaging).value();
    Rgb8::new(
        (k * T::of_u8(c_v.r)).quantize(),
        (k * T::of_u8(c_v.g)).quantize(),
        (k * T::of_u8(c_v.b)).quantize(),
    )
}

/// Fuses a whole pair in double precision, rows in parallel.
pub fn fuse_image(pair: &ImagePair, params: &FcdParams) -> RgbImage {
    fuse_image_as::<f64>(pair, params)
}

pub fn fuse_image_as<T: Scalar>(pair: &ImagePair, params: &FcdParams) -> RgbImage {
    let params = *params;
    pair.map_pixels(move |c, v| fuse_pixel::<T>(c, v, &params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::{make_pair, vec_of, Gray8, GrayImage};
    use proptest::prelude::*;

    fn avg() -> FcdParams {
        FcdParams::default()
    }

    #[test]
    fn params_validation() {
        assert!(FcdParams::new(0.0, true).is_err());
        assert!(FcdParams::new(-1.0, true).is_err());
        assert!(FcdParams::new(f64::NAN, true).is_err());
        assert!(FcdParams::new(2.2, false).is_ok());
        assert!(avg().is_fast_path());
        assert!(!FcdParams::new(2.2, true).unwrap().is_fast_path());
    }

    #[test]
    fn scaling_ratio_examples() {
        assert_eq!(scaling_ratio::<f64>(255, 2.0), 1.0);
        assert_eq!(scaling_ratio::<f64>(0, 2.0), 0.0);
        // (128/255)^2 = 16384/65025
        assert!((scaling_ratio::<f64>(128, 2.0) - 16384.0 / 65025.0).abs() < 1e-15);
        assert!((scaling_ratio::<f64>(128, 1.0) - 128.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn max_component_examples() {
        assert_eq!(max_component(Rgb8::BLACK), 1);
        assert_eq!(max_component(Rgb8::new(10, 200, 30)), 200);
        assert_eq!(max_component(Rgb8::WHITE), 255);
    }

    #[test]
    fn scale_factor_examples() {
        assert_eq!(scale_factor(1.0f64, 255, true).value(), 1.5);
        for vm in [1u8, 7, 100, 255] {
            assert_eq!(scale_factor(0.0f64, vm, true).value(), 0.5);
        }
        // (100 + 255) >> 1 == 177, so k = 177 * alpha / 100 + 0.5
        let alpha: f64 = 16384.0 / 65025.0;
        let k = scale_factor(alpha, 100, true).value();
        assert!((k - (177.0 * alpha / 100.0 + 0.5)).abs() < 1e-15);
        assert!((k - 0.945_977_393_310_265_3).abs() < 1e-12);
    }

    #[test]
    fn scale_factor_without_averaging_is_alpha_times_beta() {
        let k = scale_factor(1.0f64, 255, false).value();
        assert_eq!(k, 2.0);
        let k = scale_factor(0.25f64, 100, false).value();
        assert!((k - 0.25 * 355.0 / 100.0).abs() < 1e-15);
    }

    #[test]
    fn fuse_pixel_examples() {
        let p = avg();
        assert_eq!(fuse_pixel::<f64>(Rgb8::BLACK, 200, &p), Rgb8::BLACK);
        assert_eq!(fuse_pixel::<f64>(Rgb8::new(100, 50, 25), 128, &p), Rgb8::new(95, 47, 24));
        assert_eq!(fuse_pixel::<f64>(Rgb8::WHITE, 255, &p), Rgb8::WHITE);
        // k = 0.5 exactly: 12.5 rounds away from zero
        assert_eq!(fuse_pixel::<f64>(Rgb8::new(100, 50, 25), 0, &p), Rgb8::new(50, 25, 13));
    }

    #[test]
    fn fuse_image_single_pixel_and_black() {
        let vis = RgbImage::filled(1, 1, Rgb8::new(100, 50, 25)).unwrap();
        let ir = GrayImage::filled(1, 1, Gray8(128)).unwrap();
        let out = fuse_image(&make_pair("one", vis, ir).unwrap(), &avg());
        assert_eq!(out.pixels(), &[Rgb8::new(95, 47, 24)]);

        let vis = RgbImage::filled(6, 4, Rgb8::BLACK).unwrap();
        let ir = GrayImage::from_fn(6, 4, |x, y| Gray8((x * 40 + y) as u8)).unwrap();
        let out = fuse_image(&make_pair("dark", vis, ir).unwrap(), &avg());
        assert!(out.pixels().iter().all(|&p| p == Rgb8::BLACK));
    }

    #[test]
    fn f32_kernel_within_one_level() {
        let p = avg();
        for v in (0..=255u8).step_by(3) {
            for c in [Rgb8::new(100, 50, 25), Rgb8::new(3, 250, 77), Rgb8::new(255, 1, 128)] {
                let a = fuse_pixel::<f64>(c, v, &p).channels();
                let b = fuse_pixel::<f32>(c, v, &p).channels();
                for (x, y) in a.iter().zip(b.iter()) {
                    assert!((*x as i16 - *y as i16).abs() <= 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn scaled_vector_is_collinear(r in any::<u8>(), g in any::<u8>(), b in any::<u8>(), v in any::<u8>(), avg in any::<bool>()) {
            let c = Rgb8::new(r, g, b);
            prop_assume!(c != Rgb8::BLACK);
            let k = scale_factor(scaling_ratio::<f64>(v, 2.0), max_component(c), avg).value();
            let cv = vec_of::<f64>(c);
            let cs = cv * k;
            prop_assume!(k > 0.0);
            let cos = cv.dot(cs) / (cv.norm() * cs.norm());
            prop_assert!(cos.clamp(-1.0, 1.0).acos() < 1e-6);
        }

        #[test]
        fn scale_factor_bounds(v in any::<u8>(), vm in 1u8..=255) {
            let alpha = scaling_ratio::<f64>(v, 2.0);
            let beta_m = (vm as f64 + 255.0) / vm as f64;
            let k = scale_factor(alpha, vm, true).value();
            prop_assert!(k >= 0.5 && k <= (beta_m + 1.0) / 2.0 + 1e-12);
            let k = scale_factor(alpha, vm, false).value();
            prop_assert!(k >= 0.0 && k <= beta_m + 1e-12);
        }

        #[test]
        fn channel_order_is_preserved(a in any::<u8>(), b in any::<u8>(), c in any::<u8>(), v in any::<u8>(), gamma in 0.3f64..3.0) {
            let mut ch = [a, b, c];
            ch.sort_unstable_by(|x, y| y.cmp(x));
            let params = FcdParams::new(gamma, true).unwrap();
            let out = fuse_pixel::<f64>(Rgb8::from(ch), v, &params);
            prop_assert!(out.r >= out.g && out.g >= out.b);
        }

        #[test]
        fn monotone_in_infrared(r in any::<u8>(), g in any::<u8>(), b in any::<u8>(), v in 0u8..255, avg in any::<bool>()) {
            let params = FcdParams::new(2.0, avg).unwrap();
            let c = Rgb8::new(r, g, b);
            let lo = fuse_pixel::<f64>(c, v, &params).channels();
            let hi = fuse_pixel::<f64>(c, v + 1, &params).channels();
            prop_assert!(lo.iter().zip(hi.iter()).all(|(l, h)| l <= h));
        }

        #[test]
        fn zero_infrared_halves_the_color(r in any::<u8>(), g in any::<u8>(), b in any::<u8>()) {
            let out = fuse_pixel::<f64>(Rgb8::new(r, g, b), 0, &FcdParams::default());
            let half = |x: u8| (x as u16).div_ceil(2);
            prop_assert_eq!(out.channels().map(|x| x as u16), [half(r), half(g), half(b)]);
        }
    }
}
