//! Real scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type the crate's numerics are generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding when the target is narrower.
    fn lit(x: f64) -> Self;

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }
}

/// Complex amplitude over `R`.
pub type C<R> = Complex<R>;

#[inline]
pub fn c<R: Real>(re: R, im: R) -> C<R> {
    Complex::new(re, im)
}

#[inline]
pub fn cre<R: Real>(re: R) -> C<R> {
    Complex::new(re, R::zero())
}

/// `i^k` for `k` taken modulo 4.
#[inline]
pub fn i_pow<R: Real>(k: u8) -> C<R> {
    match k % 4 {
        0 => c(R::one(), R::zero()),
        1 => c(R::zero(), R::one()),
        2 => c(-R::one(), R::zero()),
        _ => c(R::zero(), -R::one()),
    }
}
