use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Div, Mul, Neg};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign};

/// Exact rational scalar for kernels with rational parameters.
pub type Rational = num_rational::Ratio<i64>;

/// Anything a kernel can be built over: integers, rationals, floats.
pub trait Scalar:
    Num + NumAssign + Copy + PartialOrd + Neg<Output = Self> + FromPrimitive + Debug + Send + Sync + 'static
{
    /// Lossless conversion from a boundary-operator entry.
    fn from_entry(entry: i32) -> Self {
        Self::from_i32(entry).expect("small integers are representable")
    }

    fn magnitude(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl<T> Scalar for T where
    T: Num
        + NumAssign
        + Copy
        + PartialOrd
        + Neg<Output = T>
        + FromPrimitive
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Floating-point scalar for spectral and oscillatory code.
pub trait Real: Scalar + Float + FloatConst + Display + Sum {
    /// Convert an `f64` literal.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    /// `1e-9`, or a few hundred ulps when the type cannot resolve that.
    fn default_relative_tolerance() -> Self {
        Self::lit(1e-9).max(Self::epsilon() * Self::lit(1e3))
    }

    /// Wrap an angle into (-π, π].
    fn wrap_phase(self) -> Self {
        let two_pi = Self::TAU();
        let mut p = self % two_pi;
        if p <= -Self::PI() {
            p += two_pi;
        } else if p > Self::PI() {
            p -= two_pi;
        }
        p
    }
}

impl<T> Real for T where T: Scalar + Float + FloatConst + Display + Sum {}

/// Source component type: real or complex over a [`Real`] base.
pub trait SourceValue<T: Real>:
    Num + Copy + Mul<T, Output = Self> + Div<T, Output = Self> + Debug + Send + Sync + 'static
{
    fn to_complex(self) -> Complex<T>;
    fn from_real(x: T) -> Self;

    fn norm(self) -> T {
        self.to_complex().norm()
    }
}

macro_rules! impl_source_value {
    ($t:ty) => {
        impl SourceValue<$t> for $t {
            fn to_complex(self) -> Complex<$t> {
                Complex::new(self, 0.0)
            }
            fn from_real(x: $t) -> Self {
                x
            }
            fn norm(self) -> $t {
                self.abs()
            }
        }

        impl SourceValue<$t> for Complex<$t> {
            fn to_complex(self) -> Complex<$t> {
                self
            }
            fn from_real(x: $t) -> Self {
                Complex::new(x, 0.0)
            }
        }
    };
}

impl_source_value!(f32);
impl_source_value!(f64);
