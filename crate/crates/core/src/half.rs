use std::fmt;
use std::ops::Neg;

use crate::real::Real;

/// Signed multiple of 1/2, stored as its doubled value. Photon-number
/// half-differences are exact in this representation, so parity and range
/// checks never touch floating point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    doubled: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    /// Value from its doubled integer (`from_doubled(3)` is 3/2).
    pub const fn from_doubled(doubled: i32) -> Self {
        HalfInt { doubled }
    }

    /// Whole value (`from_int(2)` is 2).
    pub const fn from_int(v: i32) -> Self {
        HalfInt { doubled: 2 * v }
    }

    pub const fn doubled(self) -> i32 {
        self.doubled
    }

    pub const fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn value<T: Real>(self) -> T {
        T::from_i32(self.doubled).expect("half-integer out of range") / T::of(2.0)
    }

    pub fn abs(self) -> Self {
        HalfInt {
            doubled: self.doubled.abs(),
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            doubled: -self.doubled,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
