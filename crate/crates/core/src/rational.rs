//! Exact rational numbers.
//!
//! Every distance, radius and roughness degree in this crate is a [`Rational`].
//! The textual form is `p/q` (or a bare integer `n` when the denominator is one);
//! decimal notation is rejected so that no value ever passes through a float.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact rational in canonical reduced form (positive denominator).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("decimal notation {0:?} is not accepted; write the value as an exact fraction \"p/q\" (e.g. \"1/2\")")]
    Decimal(String),
    #[error("malformed rational {0:?}; expected an integer \"n\" or a fraction \"p/q\"")]
    Malformed(String),
    #[error("rational {0:?} has a zero denominator")]
    ZeroDenominator(String),
}

impl Rational {
    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// `max(self, 0)`.
    pub fn positive_part(&self) -> Self {
        if self.is_negative() {
            Rational::zero()
        } else {
            self.clone()
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(digits: &str, allow_sign: bool) -> Option<BigInt> {
    let body = match digits
        .strip_prefix('-')
        .or_else(|| digits.strip_prefix('+'))
    {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => digits,
    };
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.trim_start_matches('+').parse().ok()
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text.contains('.') || text.contains(['e', 'E']) {
            return Err(ParseRationalError::Decimal(s.to_string()));
        }
        let malformed = || ParseRationalError::Malformed(s.to_string());
        match text.split_once('/') {
            None => {
                let n = parse_integer(text, true).ok_or_else(malformed)?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((num, den)) => {
                let n = parse_integer(num.trim(), true).ok_or_else(malformed)?;
                let d = parse_integer(den.trim(), false).ok_or_else(malformed)?;
                if d.is_zero() {
                    return Err(ParseRationalError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }

        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(4, 2).to_string(), "2");
        assert_eq!(q("10/4"), Rational::new(5, 2));
    }

    #[test]
    fn rejects_decimals_with_guidance() {
        let err = "0.5".parse::<Rational>().unwrap_err();
        assert!(matches!(err, ParseRationalError::Decimal(_)));
        assert!(err.to_string().contains("p/q"));
        assert!(matches!(
            "1e3".parse::<Rational>(),
            Err(ParseRationalError::Decimal(_))
        ));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "/", "1/", "/2", "a", "1/2/3", "1/-2", "--1", "1 2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} accepted");
        }
        assert!(matches!(
            "3/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(q("1/3") + q("1/6"), q("1/2"));
        assert_eq!(q("1/2") - q("5/6"), q("-1/3"));
        assert_eq!(q("-1/3").abs(), q("1/3"));
        assert_eq!(q("-1/3").positive_part(), Rational::zero());
        assert_eq!(q("2/3").positive_part(), q("2/3"));
        assert!(q("1/3") < q("1/2"));
        let total: Rational = [q("1/2"), q("1/3"), q("1/6")].iter().sum();
        assert_eq!(total, Rational::one());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let json = serde_json::to_string(&vec![q("3/2"), q("1")]).unwrap();
        assert_eq!(json, r#"["3/2","1"]"#);
        let back: Vec<Rational> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![q("3/2"), q("1")]);
        assert!(serde_json::from_str::<Rational>(r#""0.25""#).is_err());
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
            let r = Rational::new(n, d);
            let text = r.to_string();
            prop_assert_eq!(text.parse::<Rational>().unwrap(), r.clone());
            prop_assert_eq!(text.parse::<Rational>().unwrap().to_string(), text);
        }
    }
}
