//! Exact signed integers used for constraint weights and fitness values.
//!
//! Values that fit in an `i64` are stored inline; anything larger is promoted to a
//! [`BigInt`]. Every arithmetic operation is checked, so a value is never rounded or
//! wrapped. The representation is normalized: a `Big` value never holds a number
//! that fits in `i64`, which keeps the derived equality and hashing sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

/// Exact integer of arbitrary magnitude.
#[derive(Clone)]
pub struct FitnessValue(Repr);

impl FitnessValue {
    pub const ZERO: FitnessValue = FitnessValue(Repr::Small(0));

    pub fn zero() -> Self {
        Self::ZERO
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => FitnessValue(Repr::Small(v)),
            None => FitnessValue(Repr::Big(b)),
        }
    }

    fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i8,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    /// Nearest `f64`; only used where a real number is required (annealing, bound formulas).
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(v) => *v as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(if b.is_positive() {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            }),
        }
    }

    pub fn pow(base: i64, exp: u32) -> Self {
        Self::from_big(num_traits::pow(BigInt::from(base), exp as usize))
    }
}

impl Default for FitnessValue {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for FitnessValue {
    fn from(v: i64) -> Self {
        FitnessValue(Repr::Small(v))
    }
}

impl From<i32> for FitnessValue {
    fn from(v: i32) -> Self {
        FitnessValue(Repr::Small(v as i64))
    }
}

impl From<u64> for FitnessValue {
    fn from(v: u64) -> Self {
        Self::from_big(BigInt::from(v))
    }
}

impl From<BigInt> for FitnessValue {
    fn from(v: BigInt) -> Self {
        Self::from_big(v)
    }
}

impl From<&FitnessValue> for BigInt {
    fn from(v: &FitnessValue) -> Self {
        v.to_big()
    }
}

impl PartialEq for FitnessValue {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for FitnessValue {}

impl Hash for FitnessValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(v) => {
                0u8.hash(state);
                v.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for FitnessValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for FitnessValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for FitnessValue {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(v) if v == *other)
    }
}

impl PartialOrd<i64> for FitnessValue {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.cmp(&FitnessValue::from(*other)))
    }
}

impl<'a> Add<&'a FitnessValue> for &'a FitnessValue {
    type Output = FitnessValue;
    fn add(self, rhs: &FitnessValue) -> FitnessValue {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_add(*b) {
                return FitnessValue(Repr::Small(s));
            }
        }
        FitnessValue::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a FitnessValue> for &'a FitnessValue {
    type Output = FitnessValue;
    fn sub(self, rhs: &FitnessValue) -> FitnessValue {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_sub(*b) {
                return FitnessValue(Repr::Small(s));
            }
        }
        FitnessValue::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a FitnessValue> for &'a FitnessValue {
    type Output = FitnessValue;
    fn mul(self, rhs: &FitnessValue) -> FitnessValue {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(s) = a.checked_mul(*b) {
                return FitnessValue(Repr::Small(s));
            }
        }
        FitnessValue::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &FitnessValue {
    type Output = FitnessValue;
    fn neg(self) -> FitnessValue {
        if let Repr::Small(a) = &self.0 {
            if let Some(s) = a.checked_neg() {
                return FitnessValue(Repr::Small(s));
            }
        }
        FitnessValue::from_big(-self.to_big())
    }
}

impl Neg for FitnessValue {
    type Output = FitnessValue;
    fn neg(self) -> FitnessValue {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FitnessValue> for FitnessValue {
            type Output = FitnessValue;
            fn $m(self, rhs: FitnessValue) -> FitnessValue {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FitnessValue> for FitnessValue {
            type Output = FitnessValue;
            fn $m(self, rhs: &FitnessValue) -> FitnessValue {
                (&self).$m(rhs)
            }
        }
        impl $tr<i64> for FitnessValue {
            type Output = FitnessValue;
            fn $m(self, rhs: i64) -> FitnessValue {
                (&self).$m(&FitnessValue::from(rhs))
            }
        }
        impl $tr<i64> for &FitnessValue {
            type Output = FitnessValue;
            fn $m(self, rhs: i64) -> FitnessValue {
                self.$m(&FitnessValue::from(rhs))
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&FitnessValue> for FitnessValue {
    fn add_assign(&mut self, rhs: &FitnessValue) {
        *self = &*self + rhs;
    }
}

impl AddAssign for FitnessValue {
    fn add_assign(&mut self, rhs: FitnessValue) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&FitnessValue> for FitnessValue {
    fn sub_assign(&mut self, rhs: &FitnessValue) {
        *self = &*self - rhs;
    }
}

impl SubAssign for FitnessValue {
    fn sub_assign(&mut self, rhs: FitnessValue) {
        *self = &*self - &rhs;
    }
}

impl Sum for FitnessValue {
    fn sum<I: Iterator<Item = FitnessValue>>(iter: I) -> Self {
        iter.fold(FitnessValue::ZERO, |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a FitnessValue> for FitnessValue {
    fn sum<I: Iterator<Item = &'a FitnessValue>>(iter: I) -> Self {
        iter.fold(FitnessValue::ZERO, |acc, v| acc + v)
    }
}

impl fmt::Display for FitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for FitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal {0:?}")]
pub struct ParseFitnessError(pub String);

impl FromStr for FitnessValue {
    type Err = ParseFitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(v.into());
        }
        t.parse::<BigInt>()
            .map(FitnessValue::from_big)
            .map_err(|_| ParseFitnessError(s.to_string()))
    }
}

impl Serialize for FitnessValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FitnessValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_instead_of_wrapping() {
        let max = FitnessValue::from(i64::MAX);
        let sum = &max + &FitnessValue::from(1);
        assert_eq!(sum.to_string(), "9223372036854775808");
        assert!(sum.to_i64().is_none());
        let back = &sum - &FitnessValue::from(1);
        assert_eq!(back, max);
        assert_eq!(back.to_i64(), Some(i64::MAX));
        let neg = -FitnessValue::from(i64::MIN);
        assert_eq!(neg.to_string(), "9223372036854775808");
    }

    #[test]
    fn powers_of_six_stay_exact() {
        let v = FitnessValue::pow(6, 40);
        assert_eq!(v.to_string(), "13367494538843734067838845976576");
        assert_eq!(&(&v * &FitnessValue::from(2)) - &v, v);
    }

    #[test]
    fn parse_and_serde() {
        let v: FitnessValue = "-123456789012345678901234567890".parse().unwrap();
        assert!(v.is_negative());
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "\"-123456789012345678901234567890\"");
        let w: FitnessValue = serde_json::from_str(&json).unwrap();
        assert_eq!(v, w);
        assert!("12a".parse::<FitnessValue>().is_err());
    }

    proptest! {
        #[test]
        fn matches_bigint_arithmetic(a in any::<i64>(), b in any::<i64>()) {
            let (fa, fb) = (FitnessValue::from(a), FitnessValue::from(b));
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(BigInt::from(&(&fa + &fb)), &ba + &bb);
            prop_assert_eq!(BigInt::from(&(&fa - &fb)), &ba - &bb);
            prop_assert_eq!(BigInt::from(&(&fa * &fb)), &ba * &bb);
            prop_assert_eq!(fa.cmp(&fb), ba.cmp(&bb));
            let prod = &fa * &fb;
            prop_assert_eq!(prod.to_string().parse::<FitnessValue>().unwrap(), prod);
        }
    }
}
