//! RGB <-> YIQ and RGB <-> HSV.
//!
//! The conversions are written so that their multiply/divide counts are
//! fixed per pixel (no data-dependent early exits), which keeps the FLOP
//! audit exact: YIQ is a full 3x3 product in each direction (9 + 9), the
//! HSV forward map costs 6 and the inverse 6.

use crate::num::Scalar;
use crate::raster::Rgb8;

/// NTSC RGB -> YIQ.
pub const RGB_TO_YIQ: [[f64; 3]; 3] = [
    [0.299, 0.587, 0.114],
    [0.596, -0.274, -0.322],
    [0.211, -0.523, 0.312],
];

/// Exact inverse of [`RGB_TO_YIQ`] (to double precision).
pub const YIQ_TO_RGB: [[f64; 3]; 3] = [
    [1.0, 0.956_170_685_404_145_1, 0.621_432_566_346_585_6],
    [1.0, -0.272_688_602_330_106_3, -0.646_813_237_020_173_8],
    [1.0, -1.103_744_082_176_026_3, 1.700_623_094_677_306_2],
];

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct YiqColor<T> {
    pub y: T,
    pub i: T,
    pub q: T,
}

/// Hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HsvColor<T> {
    pub h: T,
    pub s: T,
    pub v: T,
}

#[inline]
pub(crate) fn mat_vec<T: Scalar>(m: &[[f64; 3]; 3], v: [T; 3]) -> [T; 3] {
    let row = |r: &[f64; 3]| T::lit(r[0]) * v[0] + T::lit(r[1]) * v[1] + T::lit(r[2]) * v[2];
    [row(&m[0]), row(&m[1]), row(&m[2])]
}

#[inline]
pub fn rgb_to_yiq<T: Scalar>(p: Rgb8) -> YiqColor<T> {
    let [y, i, q] = mat_vec(&RGB_TO_YIQ, [T::of_u8(p.r), T::of_u8(p.g), T::of_u8(p.b)]);
    YiqColor { y, i, q }
}

#[inline]
pub fn yiq_to_rgb<T: Scalar>(c: YiqColor<T>) -> Rgb8 {
    let [r, g, b] = mat_vec(&YIQ_TO_RGB, [c.y, c.i, c.q]);
    Rgb8::new(r.quantize(), g.quantize(), b.quantize())
}

#[inline]
pub fn rgb_to_hsv<T: Scalar>(p: Rgb8) -> HsvColor<T> {
    let one = T::one();
    let full = T::lit(255.0);
    let (r, g, b) = (T::of_u8(p.r) / full, T::of_u8(p.g) / full, T::of_u8(p.b) / full);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;

    // Divisors are swapped for 1 in the degenerate cases; the numerators are
    // zero there, giving s = 0 for black and h = 0 for grays.
    let s = delta / if max > T::zero() { max } else { one };
    let d = if delta > T::zero() { delta } else { one };
    let sector = if p.r >= p.g && p.r >= p.b {
        (g - b) / d
    } else if p.g >= p.b {
        (b - r) / d + T::lit(2.0)
    } else {
        (r - g) / d + T::lit(4.0)
    };
    let mut h = sector * T::lit(60.0);
    if h < T::zero() {
        h = h + T::lit(360.0);
    }
    if h >= T::lit(360.0) {
        h = h - T::lit(360.0);
    }
    HsvColor { h, s, v: max }
}

#[inline]
pub fn hsv_to_rgb<T: Scalar>(c: HsvColor<T>) -> Rgb8 {
    let zero = T::zero();
    let chroma = c.v * c.s;
    let hp = c.h / T::lit(60.0);
    let floor = hp.floor();
    let frac = hp - floor;
    let sector = floor.to_i64().unwrap_or(0).rem_euclid(6);
    let x = if sector % 2 == 0 {
        chroma * frac
    } else {
        chroma * (T::one() - frac)
    };
    let (r1, g1, b1) = match sector {
        0 => (chroma, x, zero),
        1 => (x, chroma, zero),
        2 => (zero, chroma, x),
        3 => (zero, x, chroma),
        4 => (x, zero, chroma),
        _ => (chroma, zero, x),
    };
    let m = c.v - chroma;
    let full = T::lit(255.0);
    Rgb8::new(
        ((r1 + m) * full).quantize(),
        ((g1 + m) * full).quantize(),
        ((b1 + m) * full).quantize(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn inverse_matrix_is_exact_inverse() {
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| YIQ_TO_RGB[i][k] * RGB_TO_YIQ[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(close(s, want, 1e-14), "({i},{j}) = {s}");
            }
        }
    }

    #[test]
    fn yiq_examples() {
        assert_eq!(rgb_to_yiq::<f64>(Rgb8::BLACK), YiqColor { y: 0.0, i: 0.0, q: 0.0 });
        let red = rgb_to_yiq::<f64>(Rgb8::new(255, 0, 0));
        assert!(close(red.y, 76.245, 1e-9));
        assert!(close(red.i, 151.98, 1e-9));
        assert!(close(red.q, 53.805, 1e-9));
        assert_eq!(yiq_to_rgb(YiqColor { y: 0.0f64, i: 0.0, q: 0.0 }), Rgb8::BLACK);
        assert_eq!(yiq_to_rgb(YiqColor { y: 300.0f64, i: 0.0, q: 0.0 }), Rgb8::WHITE);
    }

    #[test]
    fn gray_axis_is_achromatic() {
        for g in 0..=255u8 {
            let c = rgb_to_yiq::<f64>(Rgb8::gray(g));
            assert!(close(c.y, g as f64, 1e-9));
            assert!(c.i.abs() <= 0.1 && c.q.abs() <= 0.1);
            let h = rgb_to_hsv::<f64>(Rgb8::gray(g));
            assert_eq!(h.s, 0.0);
            assert_eq!(h.h, 0.0);
            assert!(close(h.v, g as f64 / 255.0, 1e-15));
            assert_eq!(yiq_to_rgb(c), Rgb8::gray(g));
            assert_eq!(hsv_to_rgb(h), Rgb8::gray(g));
        }
    }

    #[test]
    fn hsv_examples() {
        let red = rgb_to_hsv::<f64>(Rgb8::new(255, 0, 0));
        assert_eq!((red.h, red.s, red.v), (0.0, 1.0, 1.0));
        let c = rgb_to_hsv::<f64>(Rgb8::new(100, 50, 25));
        assert!(close(c.h, 20.0, 1e-12));
        assert!(close(c.s, 0.75, 1e-12));
        assert!(close(c.v, 100.0 / 255.0, 1e-15));
        assert_eq!(
            hsv_to_rgb(HsvColor { h: 0.0f64, s: 1.0, v: 1.0 }),
            Rgb8::new(255, 0, 0)
        );
        for h in [0.0, 77.0, 180.0, 359.9] {
            assert_eq!(hsv_to_rgb(HsvColor { h, s: 0.0f64, v: 0.4 }), Rgb8::gray(102));
        }
    }

    #[test]
    fn hue_sectors() {
        let h = |p: Rgb8| rgb_to_hsv::<f64>(p).h;
        assert!(close(h(Rgb8::new(0, 255, 0)), 120.0, 1e-12));
        assert!(close(h(Rgb8::new(0, 0, 255)), 240.0, 1e-12));
        assert!(close(h(Rgb8::new(255, 0, 255)), 300.0, 1e-12));
        assert!(close(h(Rgb8::new(255, 0, 1)), 360.0 - 60.0 / 255.0, 1e-9));
        assert!(close(h(Rgb8::new(255, 255, 0)), 60.0, 1e-12));
    }

    #[test]
    fn hsv_to_rgb_wraps_360() {
        assert_eq!(
            hsv_to_rgb(HsvColor { h: 360.0f64, s: 1.0, v: 1.0 }),
            Rgb8::new(255, 0, 0)
        );
    }

    proptest! {
        #[test]
        fn yiq_is_linear(r in 0u8..=127, g in 0u8..=127, b in 0u8..=127) {
            let p = Rgb8::new(r, g, b);
            let p2 = Rgb8::new(2 * r, 2 * g, 2 * b);
            let a = rgb_to_yiq::<f64>(p);
            let a2 = rgb_to_yiq::<f64>(p2);
            prop_assert!(close(a2.y, 2.0 * a.y, 1e-9));
            prop_assert!(close(a2.i, 2.0 * a.i, 1e-9));
            prop_assert!(close(a2.q, 2.0 * a.q, 1e-9));
        }

        #[test]
        fn hsv_ranges(r in any::<u8>(), g in any::<u8>(), b in any::<u8>()) {
            let c = rgb_to_hsv::<f64>(Rgb8::new(r, g, b));
            prop_assert!(c.h >= 0.0 && c.h < 360.0);
            prop_assert!((0.0..=1.0).contains(&c.s));
            prop_assert!((0.0..=1.0).contains(&c.v));
        }
    }
}
