//! Scalar abstraction shared by every module.
//!
//! All numerics are generic over a real floating-point type `T`; complex
//! values are `num_complex::Complex<T>`. `f64` is the reference precision and
//! all default tolerances are calibrated for it. Lower precisions get the
//! same tolerances widened by `sqrt(eps_T / eps_f64)` (see [`scaled_tol`]).

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Real floating-point scalar: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + FftNum + Debug + Display + Default {}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub fn cplx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(lit(re), lit(im))
}

/// Widens an `f64`-calibrated tolerance for the working precision of `T`.
pub fn scaled_tol<T: Scalar>(tol_f64: f64) -> T {
    let ratio = T::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
    lit(tol_f64 * ratio.sqrt().max(1.0))
}

/// Lossy conversion for diagnostics and error payloads.
#[inline]
pub(crate) fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum<T: Scalar> {
    sum: Complex<T>,
    carry: Complex<T>,
}

impl<T: Scalar> CompensatedSum<T> {
    pub(crate) fn new() -> Self {
        Self {
            sum: Complex::new(T::zero(), T::zero()),
            carry: Complex::new(T::zero(), T::zero()),
        }
    }

    pub(crate) fn add(&mut self, x: Complex<T>) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex::new(re, im);
        self.carry = self.carry + Complex::new(cre, cim);
    }

    pub(crate) fn value(&self) -> Complex<T> {
        self.sum + self.carry
    }
}

#[inline]
fn two_sum<T: Scalar>(a: T, b: T) -> (T, T) {
    let s = a + b;
    let err = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, err)
}
