//! Scalar abstraction.
//!
//! Every kernel, color-space conversion and metric in this crate is written
//! once against [`Scalar`] and instantiated for `f64` (the reference
//! precision), `f32` (throughput) or [`crate::flops::Counted`] (the
//! instrumented scalar used by the FLOP audit).

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

pub trait Scalar: Float + FromPrimitive + Debug + Send + Sync + 'static {
    /// Lifts a literal. Literal conversion is not an arithmetic operation.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn of_u8(v: u8) -> Self {
        Self::from_u8(v).expect("u8 representable in scalar type")
    }

    #[inline]
    fn of_u16(v: u16) -> Self {
        Self::from_u16(v).expect("u16 representable in scalar type")
    }

    /// Rounds half away from zero and clamps to `[0, 255]`. NaN maps to 0.
    ///
    /// This is the single float-to-8-bit rule used throughout the crate.
    #[inline]
    fn quantize(self) -> u8 {
        let r = self.round();
        if r >= Self::lit(255.0) {
            255
        } else if r > Self::zero() {
            r.to_u8().unwrap_or(0)
        } else {
            0
        }
    }
}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Send + Sync + 'static {}
