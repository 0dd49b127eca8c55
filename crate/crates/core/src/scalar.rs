//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar: `f32` or `f64`.
///
/// The special functions needed by the closed-form cell integrals are
/// routed through `libm` so both widths share one code path.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    fn erf(self) -> Self;
    fn erfc(self) -> Self;

    /// Lossless for literals that are exactly representable; used for constants.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).unwrap_or_else(Self::infinity)
    }

    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {
    fn erf(self) -> Self {
        libm::erff(self)
    }
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

impl Real for f64 {
    fn erf(self) -> Self {
        libm::erf(self)
    }
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

/// Γ(m/2) for a positive integer `m`, built from Γ(1/2)=√π and Γ(1)=1.
pub fn gamma_half<T: Real>(m: u32) -> T {
    assert!(m >= 1, "gamma_half needs m >= 1");
    let (mut acc, mut k) = if m % 2 == 0 {
        (T::one(), 2u32)
    } else {
        (T::PI().sqrt(), 1u32)
    };
    while k < m {
        // Γ(z+1) = zΓ(z) with z = k/2
        acc *= T::from_u32(k).unwrap() / T::lit(2.0);
        k += 2;
    }
    acc
}

/// Volume of the Euclidean unit ball in ℝⁿ.
pub fn unit_ball_volume<T: Real>(n: usize) -> T {
    let half_n = T::from_usize_lossy(n) / T::lit(2.0);
    T::PI().powf(half_n) / gamma_half::<T>(n as u32 + 2)
}
