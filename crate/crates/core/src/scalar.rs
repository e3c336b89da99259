//! Coefficient backends for [`TruncatedSeries`](crate::series::TruncatedSeries).
//!
//! Two backends share one interface: exact complex rationals ([`ExactComplex`])
//! for identity checks, and double-precision complex numbers ([`Complex64`])
//! for numerical work.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
pub use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// Complex number with arbitrary-precision rational parts.
pub type ExactComplex = Complex<BigRational>;

/// Zero tolerance used by the float backend.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Which backend a series was built with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

/// Field operations needed by series arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    /// The rational `num / den` as a real scalar. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Converts a real double. The exact backend converts the binary value
    /// exactly; non-finite input yields `None`.
    fn from_f64(x: f64) -> Option<Self>;

    fn from_parts(re: f64, im: f64) -> Option<Self>;

    fn to_c64(&self) -> Complex64;

    /// Exactly zero (exact backend) or within [`FLOAT_TOLERANCE`] (float backend).
    fn is_negligible(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then(|| Complex64::new(x, 0.0))
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        (re.is_finite() && im.is_finite()).then(|| Complex64::new(re, im))
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn is_negligible(&self) -> bool {
        self.norm() <= FLOAT_TOLERANCE
    }
}

impl Scalar for ExactComplex {
    const BACKEND: Backend = Backend::Exact;

    fn from_ratio(num: i64, den: i64) -> Self {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Complex::new(r, BigRational::zero())
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_f64(x).map(|r| Complex::new(r, BigRational::zero()))
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex::new(BigRational::from_f64(re)?, BigRational::from_f64(im)?))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// Real rational shorthand for the exact backend.
pub fn exact(num: i64, den: i64) -> ExactComplex {
    ExactComplex::from_ratio(num, den)
}
