use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational score.
///
/// The wrapped fraction is always reduced with a positive denominator, so
/// equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Score(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{text}` as an exact number: {reason}")]
pub struct ParseScoreError {
    pub text: String,
    pub reason: &'static str,
}

impl Score {
    pub fn zero() -> Self {
        Score(BigRational::zero())
    }

    pub fn one() -> Self {
        Score(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Score(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Score(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Score(r)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Score {
        Score(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        // Ratio::to_f64 handles big operands without overflowing to inf/NaN.
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite double (used only by the data generators
    /// after quantization).
    pub fn from_f64_exact(x: f64) -> Option<Score> {
        BigRational::from_float(x).map(Score)
    }

    /// Rounds `x * 10^digits` to the nearest integer and returns that
    /// integer over `10^digits`.
    pub fn quantize(x: f64, digits: u32) -> Option<Score> {
        if !x.is_finite() {
            return None;
        }
        let scale = 10f64.powi(digits as i32);
        let n = (x * scale).round();
        let n = BigRational::from_float(n)?.to_integer();
        Some(Score(BigRational::new(n, BigInt::from(10u32).pow(digits))))
    }

    /// Exact decimal text when the denominator divides a power of ten.
    fn decimal_string(&self) -> Option<String> {
        let mut den = self.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let (mut twos, mut fives) = (0u32, 0u32);
        while den.is_even() {
            den /= &two;
            twos += 1;
        }
        while (&den % &five).is_zero() {
            den /= &five;
            fives += 1;
        }
        if !den.is_one() {
            return None;
        }
        let digits = twos.max(fives);
        let scaled = self.numer() * BigInt::from(10).pow(digits) / self.denom();
        let negative = scaled.sign() == Sign::Minus;
        let mut body = scaled.abs().to_string();
        if body.len() <= digits as usize {
            body = format!("{}{}", "0".repeat(digits as usize - body.len() + 1), body);
        }
        let split = body.len() - digits as usize;
        let (int_part, frac_part) = body.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(int_part);
        if !frac_part.is_empty() {
            out.push('.');
            out.push_str(frac_part);
        }
        Some(out)
    }
}

fn parse_decimal(text: &str) -> Result<BigRational, &'static str> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    if body.is_empty() {
        return Err("empty number");
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err("no digits");
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err("expected digits with an optional decimal point");
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| "bad digits")?
    };
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

impl FromStr for Score {
    type Err = ParseScoreError;

    /// Accepts integers, exact decimals (`4.75`) and fractions (`3/4`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let err = |reason| ParseScoreError {
            text: s.to_string(),
            reason,
        };
        if let Some((n, d)) = text.split_once('/') {
            let numer = parse_decimal(n.trim()).map_err(err)?;
            let denom = parse_decimal(d.trim()).map_err(err)?;
            if denom.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Score(numer / denom));
        }
        parse_decimal(text).map(Score).map_err(err)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            return write!(f, "{}", self.numer());
        }
        match self.decimal_string() {
            Some(s) => f.write_str(&s),
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl fmt::Debug for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Score {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        match value {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                n.to_string().parse().map_err(serde::de::Error::custom)
            }
            other => Err(serde::de::Error::custom(format!(
                "expected an integer or a string score, got {other}"
            ))),
        }
    }
}

impl From<i64> for Score {
    fn from(n: i64) -> Self {
        Score::from_integer(n)
    }
}

impl From<BigInt> for Score {
    fn from(n: BigInt) -> Self {
        Score(BigRational::from_integer(n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Score {
            type Output = Score;
            fn $method(self, rhs: Score) -> Score {
                Score(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Score> for &'a Score {
            type Output = Score;
            fn $method(self, rhs: &'a Score) -> Score {
                Score((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Score> for Score {
            type Output = Score;
            fn $method(self, rhs: &'a Score) -> Score {
                Score(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Score {
    type Output = Score;
    fn neg(self) -> Score {
        Score(-self.0)
    }
}

impl Sum for Score {
    fn sum<I: Iterator<Item = Score>>(iter: I) -> Score {
        iter.fold(Score::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Score> for Score {
    fn sum<I: Iterator<Item = &'a Score>>(iter: I) -> Score {
        iter.fold(Score::zero(), |acc, x| acc + x)
    }
}
