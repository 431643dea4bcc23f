//! Floating-point scalar abstraction for the numeric kernels.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real scalar type the dense kernels are generic over: `f32` or `f64`.
///
/// The verification tolerances in this crate are stated for `f64`; the
/// `f32` instantiation exists for callers that trade accuracy for size.
pub trait Scalar:
    Float + FloatConst + NumAssign + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Convert an `f64` constant (tolerances, grid weights) into `T`.
#[inline]
pub fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant representable in scalar type")
}

/// Complex number over the generic scalar.
pub type Cplx<T> = Complex<T>;

#[inline]
pub fn c_zero<T: Scalar>() -> Cplx<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn c_one<T: Scalar>() -> Cplx<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn c_re<T: Scalar>(x: T) -> Cplx<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn c_i<T: Scalar>() -> Cplx<T> {
    Complex::new(T::zero(), T::one())
}
