//! Scalar abstraction shared by the reconstruction routines.
//!
//! Everything in [`crate::reconstruct`] and [`crate::weno`] is generic over
//! [`Real`], so the same code runs in binary64 and, with the
//! `high-precision` feature, in MPFR arithmetic through [`Mp`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
{
    fn from_f64(v: f64) -> Self;

    /// Parses a decimal literal without an intermediate binary64 rounding.
    fn from_decimal(s: &str) -> Result<Self>;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    fn powi(&self, n: u32) -> Self;

    fn exp(&self) -> Self;

    fn sin(&self) -> Self;

    fn is_finite(&self) -> bool;

    /// Unit roundoff relative to one.
    fn machine_epsilon() -> Self;

    /// Regularisation constant used by the nonlinear weights when the
    /// caller does not supply one.
    fn default_weno_epsilon() -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn from_decimal(s: &str) -> Result<Self> {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn powi(&self, n: u32) -> Self {
        f64::powi(*self, n as i32)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn machine_epsilon() -> Self {
        f64::EPSILON
    }

    fn default_weno_epsilon() -> Self {
        1e-100
    }
}

#[cfg(feature = "high-precision")]
pub use mp::Mp;

#[cfg(feature = "high-precision")]
mod mp {
    use super::*;
    use rug::ops::Pow;
    use rug::Float;
    use std::sync::atomic::{AtomicU32, Ordering};

    /// Working precision of every newly created [`Mp`], in bits.
    static PRECISION: AtomicU32 = AtomicU32::new(Mp::DEFAULT_PRECISION);

    /// Arbitrary-precision real backed by MPFR.
    ///
    /// Results inherit the precision of the left operand; values created
    /// through [`Real`] constructors use the process-wide precision set by
    /// [`Mp::set_precision`].
    #[derive(Clone, PartialEq, PartialOrd)]
    pub struct Mp(pub Float);

    impl Mp {
        pub const DEFAULT_PRECISION: u32 = 332;

        pub fn set_precision(bits: u32) {
            PRECISION.store(bits.max(rug::float::prec_min()), Ordering::Relaxed);
        }

        pub fn precision() -> u32 {
            PRECISION.load(Ordering::Relaxed)
        }

        pub fn into_inner(self) -> Float {
            self.0
        }
    }

    impl fmt::Debug for Mp {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "Mp({})", self.0.to_string_radix(10, Some(20)))
        }
    }

    impl fmt::Display for Mp {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.0.to_string_radix(10, Some(20)))
        }
    }

    macro_rules! binop {
        ($trait:ident, $method:ident, $assign:ident, $assign_method:ident) => {
            impl $trait for Mp {
                type Output = Mp;
                fn $method(self, rhs: Mp) -> Mp {
                    Mp($trait::$method(self.0, rhs.0))
                }
            }
            impl<'a> $trait<&'a Mp> for Mp {
                type Output = Mp;
                fn $method(self, rhs: &'a Mp) -> Mp {
                    Mp($trait::$method(self.0, &rhs.0))
                }
            }
            impl $assign for Mp {
                fn $assign_method(&mut self, rhs: Mp) {
                    $assign::$assign_method(&mut self.0, rhs.0);
                }
            }
            impl<'a> $assign<&'a Mp> for Mp {
                fn $assign_method(&mut self, rhs: &'a Mp) {
                    $assign::$assign_method(&mut self.0, &rhs.0);
                }
            }
        };
    }

    binop!(Add, add, AddAssign, add_assign);
    binop!(Sub, sub, SubAssign, sub_assign);
    binop!(Mul, mul, MulAssign, mul_assign);

    impl Div for Mp {
        type Output = Mp;
        fn div(self, rhs: Mp) -> Mp {
            Mp(self.0 / rhs.0)
        }
    }

    impl<'a> Div<&'a Mp> for Mp {
        type Output = Mp;
        fn div(self, rhs: &'a Mp) -> Mp {
            Mp(self.0 / &rhs.0)
        }
    }

    impl Neg for Mp {
        type Output = Mp;
        fn neg(self) -> Mp {
            Mp(-self.0)
        }
    }

    impl Real for Mp {
        fn from_f64(v: f64) -> Self {
            Mp(Float::with_val(Mp::precision(), v))
        }

        fn from_decimal(s: &str) -> Result<Self> {
            let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
            Ok(Mp(Float::with_val(Mp::precision(), parsed)))
        }

        fn to_f64(&self) -> f64 {
            self.0.to_f64()
        }

        fn abs(&self) -> Self {
            Mp(self.0.clone().abs())
        }

        fn powi(&self, n: u32) -> Self {
            Mp(self.0.clone().pow(n))
        }

        fn exp(&self) -> Self {
            Mp(self.0.clone().exp())
        }

        fn sin(&self) -> Self {
            Mp(self.0.clone().sin())
        }

        fn is_finite(&self) -> bool {
            self.0.is_finite()
        }

        fn machine_epsilon() -> Self {
            let one = Float::with_val(Mp::precision(), 1);
            Mp(one >> (Mp::precision() - 1))
        }

        fn default_weno_epsilon() -> Self {
            // 10^(-10^5) fits comfortably in the MPFR exponent range.
            Mp::from_decimal("1e-100000").expect("literal parses")
        }
    }
}
