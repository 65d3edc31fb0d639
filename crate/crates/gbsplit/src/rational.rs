//! Exact rational arithmetic on checked 128-bit integers.
//!
//! Every slope, delta and epsilon that feeds a certificate goes through this
//! type. Arithmetic never wraps: any overflow surfaces as
//! [`RationalError::Overflow`] so a certificate can never be built from a
//! silently corrupted value.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("integer overflow in exact rational arithmetic")]
    Overflow,
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl ExactRational {
    pub fn new(num: i128, den: i128) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let sign = if den < 0 { -1 } else { 1 };
        let num = num.checked_mul(sign).ok_or(RationalError::Overflow)?;
        let den = den.checked_mul(sign).ok_or(RationalError::Overflow)?;
        let g = gcd(num, den);
        if g == 0 {
            // num == 0; den > 0 already
            return Ok(Self { num: 0, den: 1 });
        }
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_int(n: i64) -> Self {
        Self {
            num: n as i128,
            den: 1,
        }
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn checked_add(self, other: Self) -> Result<Self, RationalError> {
        let n1 = self.num.checked_mul(other.den).ok_or(RationalError::Overflow)?;
        let n2 = other.num.checked_mul(self.den).ok_or(RationalError::Overflow)?;
        let num = n1.checked_add(n2).ok_or(RationalError::Overflow)?;
        let den = self.den.checked_mul(other.den).ok_or(RationalError::Overflow)?;
        Self::new(num, den)
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, RationalError> {
        self.checked_add(other.checked_neg()?)
    }

    pub fn checked_neg(self) -> Result<Self, RationalError> {
        let num = self.num.checked_neg().ok_or(RationalError::Overflow)?;
        Ok(Self { num, den: self.den })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self, RationalError> {
        let num = self.num.checked_mul(other.num).ok_or(RationalError::Overflow)?;
        let den = self.den.checked_mul(other.den).ok_or(RationalError::Overflow)?;
        Self::new(num, den)
    }

    pub fn checked_div(self, other: Self) -> Result<Self, RationalError> {
        if other.num == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let num = self.num.checked_mul(other.den).ok_or(RationalError::Overflow)?;
        let den = self.den.checked_mul(other.num).ok_or(RationalError::Overflow)?;
        Self::new(num, den)
    }

    /// Total order by cross-multiplication (denominators are positive).
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, RationalError> {
        let lhs = self.num.checked_mul(other.den).ok_or(RationalError::Overflow)?;
        let rhs = other.num.checked_mul(self.den).ok_or(RationalError::Overflow)?;
        Ok(lhs.cmp(&rhs))
    }

    pub fn try_le(&self, other: &Self) -> Result<bool, RationalError> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn try_lt(&self, other: &Self) -> Result<bool, RationalError> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    pub fn ceil(&self) -> i128 {
        -((-self.num).div_euclid(self.den))
    }

    /// Canonical `"num/den"` encoding used in all JSON output.
    pub fn as_fraction_string(&self) -> String {
        format!("{}/{}", self.num, self.den)
    }

    pub fn parse_fraction(s: &str) -> Result<Self, RationalError> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: i128 = n.trim().parse().map_err(|_| RationalError::Overflow)?;
        let den: i128 = d.trim().parse().map_err(|_| RationalError::Overflow)?;
        Self::new(num, den)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.as_fraction_string())
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Self::parse_fraction(&s).map_err(serde::de::Error::custom)
    }
}
