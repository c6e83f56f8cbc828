//! Half-integer labels stored as doubled integers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// An angular momentum label or projection `j`, stored as `2j`.
///
/// Magnitudes are nonnegative; projections (m, μ, ν) may be negative.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    #[inline]
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    #[inline]
    pub const fn from_int(j: i64) -> Self {
        HalfInt { twice: 2 * j }
    }

    /// The doubled value `2j`.
    #[inline]
    pub const fn twice(self) -> i64 {
        self.twice
    }

    /// Multiplicity `[j] = 2j + 1`.
    #[inline]
    pub const fn dim(self) -> i64 {
        self.twice + 1
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    #[inline]
    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// The integer value, if this label is integral.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Semiclassical length `J = j + 1/2`.
    #[inline]
    pub fn semiclassical(self) -> f64 {
        (self.twice + 1) as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1`, `3/2`, `-5/2` and decimal forms such as `1.5`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Input(format!("not a half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(bad()),
            }
        } else if let Some((int, frac)) = s.split_once('.') {
            let neg = int.starts_with('-');
            let whole: i64 = int.parse().map_err(|_| bad())?;
            let twice_abs = 2 * whole.abs()
                + match frac.trim_end_matches('0') {
                    "" => 0,
                    "5" => 1,
                    _ => return Err(bad()),
                };
            Ok(HalfInt::from_twice(if neg { -twice_abs } else { twice_abs }))
        } else {
            s.parse::<i64>().map(HalfInt::from_int).map_err(|_| bad())
        }
    }
}

/// Triad selection rule: `|a-b| <= c <= a+b` and `a+b+c` integral.
pub fn triangle_ok(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    triangle_ok_twice(a.twice, b.twice, c.twice)
}

/// [`triangle_ok`] on doubled integers.
#[inline]
pub fn triangle_ok_twice(a: i64, b: i64, c: i64) -> bool {
    a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && c <= a + b && c >= (a - b).abs()
}

/// `exp(iπx)` for a half-integer `x`, held exactly as a power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    /// `(-1)^x = exp(iπx)` with `x` given doubled.
    pub fn of_twice(twice_x: i64) -> Phase {
        match twice_x.rem_euclid(4) {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn of(x: HalfInt) -> Phase {
        Phase::of_twice(x.twice)
    }

    /// The phase as a real sign, or `None` when it is `±i`.
    pub fn real(self) -> Option<i32> {
        match self {
            Phase::One => Some(1),
            Phase::MinusOne => Some(-1),
            _ => None,
        }
    }
}

/// `(-1)^x` for an `x` that must be an integer, given doubled.
///
/// Panics if `x` is a proper half-integer.
#[inline]
pub fn sign_twice(twice_x: i64) -> i32 {
    assert!(twice_x % 2 == 0, "(-1)^x needs integer x, got 2x = {twice_x}");
    if twice_x.rem_euclid(4) == 0 {
        1
    } else {
        -1
    }
}
