//! Pixels, raster buffers and registered visible/infrared pairs.
//!
//! Buffers are row-major with the origin at the top-left corner and are
//! immutable once constructed.

use std::ops::{Add, Mul};

use rayon::prelude::*;

use crate::error::{FusionError, Result};
use crate::num::Scalar;

/// 8-bit RGB pixel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rgb8 {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb8 {
    pub const BLACK: Rgb8 = Rgb8::new(0, 0, 0);
    pub const WHITE: Rgb8 = Rgb8::new(255, 255, 255);

    #[inline]
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb8 { r, g, b }
    }

    #[inline]
    pub const fn gray(v: u8) -> Self {
        Rgb8 { r: v, g: v, b: v }
    }

    #[inline]
    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    #[inline]
    pub fn is_gray(self) -> bool {
        self.r == self.g && self.g == self.b
    }
}

impl From<[u8; 3]> for Rgb8 {
    fn from(c: [u8; 3]) -> Self {
        Rgb8::new(c[0], c[1], c[2])
    }
}

/// 8-bit monochrome pixel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gray8(pub u8);

impl Gray8 {
    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }
}

/// Marker for pixel types storable in an [`ImageBuffer`].
pub trait Pixel: Copy + Default + PartialEq + Send + Sync + std::fmt::Debug {}

impl Pixel for Rgb8 {}
impl Pixel for Gray8 {}

/// An RGB color viewed as a 3-vector. Its length is brightness, its
/// direction is hue and saturation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ColorVec3<T> {
    pub r: T,
    pub g: T,
    pub b: T,
}

impl<T: Scalar> ColorVec3<T> {
    pub fn new(r: T, g: T, b: T) -> Self {
        ColorVec3 { r, g, b }
    }

    pub fn dot(self, other: Self) -> T {
        self.r * other.r + self.g * other.g + self.b * other.b
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn is_zero(self) -> bool {
        self.r == T::zero() && self.g == T::zero() && self.b == T::zero()
    }

    /// Quantizes each component with the crate-wide rounding rule.
    pub fn to_rgb8(self) -> Rgb8 {
        Rgb8::new(self.r.quantize(), self.g.quantize(), self.b.quantize())
    }
}

impl<T: Scalar> Mul<T> for ColorVec3<T> {
    type Output = Self;

    fn mul(self, k: T) -> Self {
        ColorVec3::new(self.r * k, self.g * k, self.b * k)
    }
}

impl<T: Scalar> Add for ColorVec3<T> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        ColorVec3::new(self.r + o.r, self.g + o.g, self.b + o.b)
    }
}

/// Lossless lift of an 8-bit pixel to a real color vector.
#[inline]
pub fn vec_of<T: Scalar>(p: Rgb8) -> ColorVec3<T> {
    ColorVec3::new(T::of_u8(p.r), T::of_u8(p.g), T::of_u8(p.b))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImageBuffer<P> {
    width: usize,
    height: usize,
    pixels: Vec<P>,
}

pub type RgbImage = ImageBuffer<Rgb8>;
pub type GrayImage = ImageBuffer<Gray8>;

impl<P: Pixel> ImageBuffer<P> {
    pub fn new(width: usize, height: usize, pixels: Vec<P>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(FusionError::EmptyImage { width, height });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(FusionError::EmptyImage { width, height })?;
        if pixels.len() != expected {
            return Err(FusionError::PixelCount {
                width,
                height,
                expected,
                actual: pixels.len(),
            });
        }
        Ok(ImageBuffer {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, pixel: P) -> Result<Self> {
        Self::new(width, height, vec![pixel; width.saturating_mul(height)])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> P) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false: a valid buffer holds at least one pixel.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn pixels(&self) -> &[P] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<P> {
        self.pixels
    }

    /// Panics when `(x, y)` is out of bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> P {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        self.pixels[y * self.width + x]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[P]> {
        self.pixels.chunks_exact(self.width)
    }

    pub fn map<Q: Pixel>(&self, f: impl Fn(P) -> Q) -> ImageBuffer<Q> {
        ImageBuffer {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&p| f(p)).collect(),
        }
    }

    /// Copies the `width x height` window whose top-left corner is `(x0, y0)`.
    pub fn crop(&self, x0: usize, y0: usize, width: usize, height: usize) -> Result<Self> {
        if x0 + width > self.width || y0 + height > self.height {
            return Err(FusionError::mismatch(
                (x0 + width, y0 + height),
                (self.width, self.height),
            ));
        }
        Self::from_fn(width, height, |x, y| self.get(x0 + x, y0 + y))
    }

    pub(crate) fn ensure_same_dims<Q: Pixel>(&self, other: &ImageBuffer<Q>) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(FusionError::mismatch(self.dims(), other.dims()));
        }
        Ok(())
    }
}

impl GrayImage {
    /// Raw 8-bit values, row-major.
    pub fn values(&self) -> impl Iterator<Item = u8> + '_ {
        self.pixels.iter().map(|p| p.0)
    }

    pub fn from_values(width: usize, height: usize, values: Vec<u8>) -> Result<Self> {
        Self::new(width, height, values.into_iter().map(Gray8).collect())
    }

    /// Replicates the gray value into all three channels.
    pub fn to_rgb(&self) -> RgbImage {
        self.map(|p| Rgb8::gray(p.0))
    }
}

/// A registered visible/infrared pair of identical dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct ImagePair {
    id: String,
    visible: RgbImage,
    infrared: GrayImage,
}

impl ImagePair {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn visible(&self) -> &RgbImage {
        &self.visible
    }

    pub fn infrared(&self) -> &GrayImage {
        &self.infrared
    }

    pub fn dims(&self) -> (usize, usize) {
        self.visible.dims()
    }

    pub fn into_parts(self) -> (String, RgbImage, GrayImage) {
        (self.id, self.visible, self.infrared)
    }

    /// Applies `f` to every (visible, infrared) pixel pair, rows in parallel.
    pub fn map_pixels(&self, f: impl Fn(Rgb8, u8) -> Rgb8 + Sync) -> RgbImage {
        let width = self.visible.width;
        let mut out = vec![Rgb8::BLACK; self.visible.len()];
        out.par_chunks_mut(width)
            .zip(self.visible.pixels.par_chunks(width))
            .zip(self.infrared.pixels.par_chunks(width))
            .for_each(|((dst, vis), ir)| {
                for ((d, &v), &i) in dst.iter_mut().zip(vis).zip(ir) {
                    *d = f(v, i.0);
                }
            });
        ImageBuffer {
            width,
            height: self.visible.height,
            pixels: out,
        }
    }

    /// Same as [`ImagePair::map_pixels`] but on the calling thread only.
    pub fn map_pixels_sequential(&self, mut f: impl FnMut(Rgb8, u8) -> Rgb8) -> RgbImage {
        let pixels = self
            .visible
            .pixels
            .iter()
            .zip(&self.infrared.pixels)
            .map(|(&v, &i)| f(v, i.0))
            .collect();
        ImageBuffer {
            width: self.visible.width,
            height: self.visible.height,
            pixels,
        }
    }
}

/// Pairs a visible and an infrared image. Registration is assumed; only the
/// dimensions are checked.
pub fn make_pair(id: impl Into<String>, visible: RgbImage, infrared: GrayImage) -> Result<ImagePair> {
    visible.ensure_same_dims(&infrared)?;
    Ok(ImagePair {
        id: id.into(),
        visible,
        infrared,
    })
}

/// BT.601 luma, rounded half up. Evaluated in integer thousandths so that
/// exact halves round correctly.
#[inline]
pub fn luma(p: Rgb8) -> u8 {
    let weighted = 299 * p.r as u32 + 587 * p.g as u32 + 114 * p.b as u32;
    ((weighted + 500) / 1000).min(255) as u8
}

pub fn to_gray(image: &RgbImage) -> GrayImage {
    image.map(|p| Gray8(luma(p)))
}
