//! An `f64` wrapper that tallies arithmetic as it runs.
//!
//! Multiplications (including `mul_add`) and divisions (including `recip`
//! and `%`) are counted separately; exponentiations and other
//! transcendental calls go into their own bucket. Additions, comparisons,
//! rounding and conversions are free.
//! Counters are thread-local, so counted code must run on one thread.

use std::cell::Cell;
use std::num::FpCategory;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Float, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mul: u64,
    pub div: u64,
    pub pow: u64,
}

impl OpCounts {
    /// Multiply/divide-equivalent operations.
    pub fn flops(&self) -> u64 {
        self.mul + self.div
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = const { Cell::new(OpCounts { mul: 0, div: 0, pow: 0 }) };
}

fn count_mul() {
    bump(|c| c.mul += 1);
}

fn count_div() {
    bump(|c| c.div += 1);
}

fn count_pow() {
    bump(|c| c.pow += 1);
}

fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

/// Runs `f` with zeroed counters and returns its result with the tally.
pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    let saved = COUNTS.with(|c| c.replace(OpCounts::default()));
    let out = f();
    let counts = COUNTS.with(|c| c.replace(saved));
    (out, counts)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Counted(pub f64);

impl Add for Counted {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Counted(self.0 + o.0)
    }
}

impl Sub for Counted {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Counted(self.0 - o.0)
    }
}

impl Mul for Counted {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        count_mul();
        Counted(self.0 * o.0)
    }
}

impl Div for Counted {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        count_div();
        Counted(self.0 / o.0)
    }
}

impl Rem for Counted {
    type Output = Self;
    #[inline]
    fn rem(self, o: Self) -> Self {
        count_div();
        Counted(self.0 % o.0)
    }
}

impl Neg for Counted {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Counted(-self.0)
    }
}

impl Zero for Counted {
    fn zero() -> Self {
        Counted(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
}

impl One for Counted {
    fn one() -> Self {
        Counted(1.0)
    }
}

impl Num for Counted {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, radix).map(Counted)
    }
}

impl ToPrimitive for Counted {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0)
    }
}

impl NumCast for Counted {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(Counted)
    }
}

impl FromPrimitive for Counted {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Counted(n as f64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Counted(n as f64))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(Counted(n))
    }
}

macro_rules! free_unary {
    ($($name:ident),* $(,)?) => {
        $(
            #[inline]
            fn $name(self) -> Self {
                Counted(self.0.$name())
            }
        )*
    };
}

macro_rules! pow_unary {
    ($($name:ident),* $(,)?) => {
        $(
            #[inline]
            fn $name(self) -> Self {
                count_pow();
                Counted(self.0.$name())
            }
        )*
    };
}

macro_rules! constant {
    ($($name:ident),* $(,)?) => {
        $(
            #[inline]
            fn $name() -> Self {
                Counted(f64::$name())
            }
        )*
    };
}

macro_rules! predicate {
    ($($name:ident),* $(,)?) => {
        $(
            #[inline]
            fn $name(self) -> bool {
                self.0.$name()
            }
        )*
    };
}

impl Float for Counted {
    constant!(nan, infinity, neg_infinity, neg_zero, min_value, min_positive_value, max_value, epsilon);
    predicate!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    free_unary!(floor, ceil, round, trunc, fract, abs, signum);
    pow_unary!(
        sqrt, exp, exp2, ln, log2, log10, cbrt, sin, cos, tan, asin, acos, atan, exp_m1, ln_1p, sinh, cosh,
        tanh, asinh, acosh, atanh
    );

    fn classify(self) -> FpCategory {
        self.0.classify()
    }

    fn mul_add(self, a: Self, b: Self) -> Self {
        count_mul();
        Counted(self.0.mul_add(a.0, b.0))
    }

    fn recip(self) -> Self {
        count_div();
        Counted(self.0.recip())
    }

    fn powi(self, n: i32) -> Self {
        count_pow();
        Counted(self.0.powi(n))
    }

    fn powf(self, n: Self) -> Self {
        count_pow();
        Counted(self.0.powf(n.0))
    }

    fn log(self, base: Self) -> Self {
        count_pow();
        Counted(self.0.log(base.0))
    }

    fn max(self, other: Self) -> Self {
        Counted(self.0.max(other.0))
    }

    fn min(self, other: Self) -> Self {
        Counted(self.0.min(other.0))
    }

    #[allow(deprecated)]
    fn abs_sub(self, other: Self) -> Self {
        Counted((self.0 - other.0).max(0.0))
    }

    fn hypot(self, other: Self) -> Self {
        count_pow();
        Counted(self.0.hypot(other.0))
    }

    fn atan2(self, other: Self) -> Self {
        count_pow();
        Counted(self.0.atan2(other.0))
    }

    fn sin_cos(self) -> (Self, Self) {
        count_pow();
        let (s, c) = self.0.sin_cos();
        (Counted(s), Counted(c))
    }

    fn integer_decode(self) -> (u64, i16, i8) {
        self.0.integer_decode()
    }
}
