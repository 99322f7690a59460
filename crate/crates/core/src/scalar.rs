//! Exact scalars: rationals and Gaussian rationals.
//!
//! Every decision made by this crate (ranks, containments, signatures) is
//! discontinuous in its input, so nothing here ever rounds.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Gaussian,
}

/// Field elements the linear algebra layer works over: ℚ and ℚ(i).
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const KIND: ScalarKind;

    fn conj(&self) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// Some(r) when the value is real.
    fn as_rational(&self) -> Option<Rational>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }
}

fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Rational::from_integer(n))
    }
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(rat(n.as_i64().unwrap())),
        Value::Number(n) if n.is_u64() => Ok(Rational::from_integer(BigInt::from(n.as_u64().unwrap()))),
        other => Err(Error::Parse(format!("expected rational string or integer, got {other}"))),
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn to_json(&self) -> Value {
        Value::String(rational_to_string(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

/// Element `re + i·im` of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    pub fn i() -> Self {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    pub fn real(re: Rational) -> Self {
        Gaussian::new(re, Rational::zero())
    }

    /// `i^e` for any integer exponent.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Gaussian::one(),
            1 => Gaussian::i(),
            2 => -Gaussian::one(),
            _ => -Gaussian::i(),
        }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::new(Rational::one(), Rational::zero())
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for Gaussian {
    type Output = Gaussian;
    fn div(self, o: Gaussian) -> Gaussian {
        let n = o.norm_sqr();
        assert!(!n.is_zero(), "division by zero");
        let p = self * o.conj();
        Gaussian::new(p.re / &n, p.im / n)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Scalar for Gaussian {
    const KIND: ScalarKind = ScalarKind::Gaussian;

    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -self.im.clone())
    }

    fn from_rational(r: Rational) -> Self {
        Gaussian::real(r)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn to_json(&self) -> Value {
        serde_json::json!({
            "re": rational_to_string(&self.re),
            "im": rational_to_string(&self.im),
        })
    }

    /// Accepts `{"re": .., "im": ..}` or a bare rational (read as real).
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let re = map.get("re").map(rational_from_json).transpose()?.unwrap_or_else(Rational::zero);
                let im = map.get("im").map(rational_from_json).transpose()?.unwrap_or_else(Rational::zero);
                if map.keys().any(|k| k != "re" && k != "im") {
                    return Err(Error::Parse(format!("unexpected key in Gaussian rational {v}")));
                }
                Ok(Gaussian::new(re, im))
            }
            other => rational_from_json(other).map(Gaussian::real),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce_and_parse() {
        assert_eq!(ratio(4, -6), ratio(-2, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(ratio(-2, 3).to_json(), Value::String("-2/3".into()));
        assert_eq!(rat(5).to_json(), Value::String("5".into()));
    }

    #[test]
    fn gaussian_field_ops() {
        let a = Gaussian::new(rat(1), rat(2));
        let b = Gaussian::new(ratio(1, 2), rat(-3));
        assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        assert_eq!(a.conj().conj(), a);
        assert_eq!((a.clone() / b.clone()) * b, a);
        assert_eq!(Gaussian::i() * Gaussian::i(), -Gaussian::one());
        assert_eq!(Gaussian::i_pow(-1), -Gaussian::i());
        assert_eq!(Gaussian::i_pow(6), -Gaussian::one());
    }

    #[test]
    fn gaussian_json() {
        let g = Gaussian::new(ratio(1, 3), rat(-1));
        assert_eq!(Gaussian::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(Gaussian::from_json(&Value::String("2".into())).unwrap(), Gaussian::from_int(2));
        assert!(Gaussian::from_json(&serde_json::json!({"re": "1", "x": "2"})).is_err());
    }
}
