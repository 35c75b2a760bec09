//! Exact fixed-point quantities.
//!
//! Durations, taxes and risks are stored as integer multiples of one tenth so
//! that values such as `1.1` or `2.9` add and compare exactly.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ModelError;

/// A rational with fixed denominator 10.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tenths(i64);

impl Tenths {
    pub const ZERO: Tenths = Tenths(0);
    pub const DENOMINATOR: i64 = 10;

    /// Builds a value from a raw count of tenths.
    pub const fn from_raw(tenths: i64) -> Self {
        Tenths(tenths)
    }

    /// Builds a whole-unit value.
    pub const fn from_int(units: i64) -> Self {
        Tenths(units * Self::DENOMINATOR)
    }

    pub const fn raw(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / Self::DENOMINATOR as f64
    }

    /// Converts a float that must be an exact multiple of 0.1.
    pub fn from_f64(value: f64) -> Result<Self, ModelError> {
        if !value.is_finite() {
            return Err(ModelError::NotRepresentable(value));
        }
        let scaled = value * Self::DENOMINATOR as f64;
        let rounded = scaled.round();
        if (scaled - rounded).abs() > 1e-6 || rounded.abs() > (i64::MAX / 4) as f64 {
            return Err(ModelError::NotRepresentable(value));
        }
        Ok(Tenths(rounded as i64))
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl Add for Tenths {
    type Output = Tenths;
    fn add(self, rhs: Tenths) -> Tenths {
        Tenths(self.0 + rhs.0)
    }
}

impl AddAssign for Tenths {
    fn add_assign(&mut self, rhs: Tenths) {
        self.0 += rhs.0;
    }
}

impl Sub for Tenths {
    type Output = Tenths;
    fn sub(self, rhs: Tenths) -> Tenths {
        Tenths(self.0 - rhs.0)
    }
}

impl Mul<i64> for Tenths {
    type Output = Tenths;
    fn mul(self, rhs: i64) -> Tenths {
        Tenths(self.0 * rhs)
    }
}

impl Sum for Tenths {
    fn sum<I: Iterator<Item = Tenths>>(iter: I) -> Tenths {
        iter.fold(Tenths::ZERO, Add::add)
    }
}

impl fmt::Display for Tenths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let units = abs / Self::DENOMINATOR as u64;
        let frac = abs % Self::DENOMINATOR as u64;
        if frac == 0 {
            write!(f, "{sign}{units}")
        } else {
            write!(f, "{sign}{units}.{frac}")
        }
    }
}

impl FromStr for Tenths {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value: f64 = s.trim().parse().map_err(|_| ModelError::Parse(format!("not a number: {s:?}")))?;
        Tenths::from_f64(value)
    }
}

impl Serialize for Tenths {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0 % Self::DENOMINATOR == 0 {
            serializer.serialize_i64(self.0 / Self::DENOMINATOR)
        } else {
            serializer.serialize_f64(self.to_f64())
        }
    }
}

impl<'de> Deserialize<'de> for Tenths {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = f64::deserialize(deserializer)?;
        Tenths::from_f64(value).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tenths_are_exact() {
        let a = Tenths::from_f64(1.1).unwrap();
        let b = Tenths::from_f64(2.9).unwrap();
        assert_eq!(a + b, Tenths::from_int(4));
        assert_eq!(a * 3, Tenths::from_raw(33));
    }

    #[test]
    fn rejects_finer_than_a_tenth() {
        assert!(Tenths::from_f64(0.05).is_err());
        assert!(Tenths::from_f64(f64::NAN).is_err());
    }

    #[test]
    fn display_drops_trailing_zero() {
        assert_eq!(Tenths::from_int(8).to_string(), "8");
        assert_eq!(Tenths::from_raw(11).to_string(), "1.1");
        assert_eq!(Tenths::from_raw(-25).to_string(), "-2.5");
        assert_eq!("2.9".parse::<Tenths>().unwrap(), Tenths::from_raw(29));
    }

    #[test]
    fn json_round_trip() {
        let v = vec![Tenths::from_int(2), Tenths::from_raw(11)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[2,1.1]");
        let back: Vec<Tenths> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
