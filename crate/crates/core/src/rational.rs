//! Exact rational numbers.
//!
//! All times and objective values are kept as arbitrary-precision fractions in
//! lowest terms, so ties such as zero-duration cycles compare exactly.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator`, reduced. Panics if `denominator == 0`.
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
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

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    /// Parses the interchange grammar: optional sign, digits, then optionally
    /// `/digits` or `.digits`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = |why: &str| Error::parse("rational", format!("'{text}': {why}"));
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());

        let value = if let Some((num, den)) = body.split_once('/') {
            if !all_digits(num) || !all_digits(den) {
                return Err(bad("expected digits/digits"));
            }
            let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let num: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
            BigRational::new(num, den)
        } else if let Some((int, frac)) = body.split_once('.') {
            if !all_digits(int) || !all_digits(frac) {
                return Err(bad("expected digits.digits"));
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let int: BigInt = int.parse().map_err(|_| bad("bad integer part"))?;
            let frac: BigInt = frac.parse().map_err(|_| bad("bad fraction part"))?;
            BigRational::new(int * &scale + frac, scale)
        } else {
            if !all_digits(body) {
                return Err(bad("expected digits"));
            }
            BigRational::from_integer(body.parse().map_err(|_| bad("bad integer"))?)
        };
        Ok(Rational(if negative { -value } else { value }))
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value.into())
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// Lowest terms, `n/d`, with integers printed without a denominator.
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
