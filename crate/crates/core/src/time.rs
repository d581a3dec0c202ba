//! Exact, non-negative rational time.
//!
//! Every time quantity in the crate (due dates, piece endpoints, the
//! reduction constant `L`) is a [`TimePoint`]. Values are kept in lowest
//! terms and never rounded.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TimeError {
    #[error("time subtraction underflow: {lhs} - {rhs} is negative")]
    Underflow { lhs: TimePoint, rhs: TimePoint },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse time value {0:?}: expected \"n\" or \"n/d\" with non-negative integers")]
    Parse(String),
}

/// A non-negative rational time value in canonical form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TimePoint(Ratio<u64>);

impl TimePoint {
    pub const ZERO: TimePoint = TimePoint(Ratio::new_raw(0, 1));
    pub const ONE: TimePoint = TimePoint(Ratio::new_raw(1, 1));

    pub fn new(numerator: u64, denominator: u64) -> Result<Self, TimeError> {
        if denominator == 0 {
            return Err(TimeError::ZeroDenominator);
        }
        Ok(TimePoint(Ratio::new(numerator, denominator)))
    }

    pub const fn from_integer(value: u64) -> Self {
        TimePoint(Ratio::new_raw(value, 1))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if this time point is integral.
    pub fn to_integer(&self) -> Option<u64> {
        self.is_integer().then(|| self.numerator())
    }

    pub fn checked_sub(self, rhs: TimePoint) -> Result<TimePoint, TimeError> {
        if rhs > self {
            return Err(TimeError::Underflow { lhs: self, rhs });
        }
        Ok(TimePoint(self.0 - rhs.0))
    }

    /// `max(0, self - rhs)`.
    pub fn saturating_sub(self, rhs: TimePoint) -> TimePoint {
        if rhs >= self {
            TimePoint::ZERO
        } else {
            TimePoint(self.0 - rhs.0)
        }
    }

    pub fn signed_diff(self, rhs: TimePoint) -> SignedDuration {
        match self.cmp(&rhs) {
            Ordering::Less => SignedDuration::Negative(TimePoint(rhs.0 - self.0)),
            Ordering::Equal => SignedDuration::Zero,
            Ordering::Greater => SignedDuration::Positive(TimePoint(self.0 - rhs.0)),
        }
    }

    pub fn checked_div_int(self, divisor: u64) -> Result<TimePoint, TimeError> {
        if divisor == 0 {
            return Err(TimeError::DivisionByZero);
        }
        Ok(TimePoint(self.0 / Ratio::from_integer(divisor)))
    }

    pub fn mul_int(self, factor: u64) -> TimePoint {
        TimePoint(self.0 * Ratio::from_integer(factor))
    }

    /// `self * scale` as an integer, if it is one.
    pub fn scaled(self, scale: u64) -> Option<u64> {
        self.mul_int(scale).to_integer()
    }
}

/// Least common multiple of the denominators of `times` (1 for an empty input).
pub fn common_denominator<'a, I>(times: I) -> u64
where
    I: IntoIterator<Item = &'a TimePoint>,
{
    times
        .into_iter()
        .fold(1u64, |acc, t| acc.lcm(&t.denominator()))
}

/// Sign and magnitude of `a - b` for two time points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignedDuration {
    Negative(TimePoint),
    Zero,
    Positive(TimePoint),
}

impl SignedDuration {
    pub fn magnitude(&self) -> TimePoint {
        match self {
            SignedDuration::Negative(m) | SignedDuration::Positive(m) => *m,
            SignedDuration::Zero => TimePoint::ZERO,
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, SignedDuration::Positive(_))
    }
}

impl From<u64> for TimePoint {
    fn from(value: u64) -> Self {
        TimePoint::from_integer(value)
    }
}

impl Add for TimePoint {
    type Output = TimePoint;
    fn add(self, rhs: TimePoint) -> TimePoint {
        TimePoint(self.0 + rhs.0)
    }
}

impl AddAssign for TimePoint {
    fn add_assign(&mut self, rhs: TimePoint) {
        self.0 = self.0 + rhs.0;
    }
}

impl Mul for TimePoint {
    type Output = TimePoint;
    fn mul(self, rhs: TimePoint) -> TimePoint {
        TimePoint(self.0 * rhs.0)
    }
}

impl Sum for TimePoint {
    fn sum<I: Iterator<Item = TimePoint>>(iter: I) -> TimePoint {
        iter.fold(TimePoint::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a TimePoint> for TimePoint {
    fn sum<I: Iterator<Item = &'a TimePoint>>(iter: I) -> TimePoint {
        iter.copied().sum()
    }
}

impl fmt::Display for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for TimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TimePoint {
    type Err = TimeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |part: &str| {
            let part = part.trim();
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(TimeError::Parse(s.to_string()));
            }
            part.parse::<u64>().map_err(|_| TimeError::Parse(s.to_string()))
        };
        match s.split_once('/') {
            None => Ok(TimePoint::from_integer(parse(s)?)),
            Some((n, d)) => TimePoint::new(parse(n)?, parse(d)?),
        }
    }
}

impl Serialize for TimePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_integer() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for TimePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TimeVisitor;

        impl Visitor<'_> for TimeVisitor {
            type Value = TimePoint;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or a \"num/den\" string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<TimePoint, E> {
                Ok(TimePoint::from_integer(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<TimePoint, E> {
                u64::try_from(v)
                    .map(TimePoint::from_integer)
                    .map_err(|_| E::custom(format!("negative time value {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<TimePoint, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(TimeVisitor)
    }
}
