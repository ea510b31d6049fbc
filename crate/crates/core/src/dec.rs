//! Exact decimal arithmetic over arbitrary-precision rationals, with
//! rendering at a fixed number of significant digits. Conversions stay
//! exact end to end; binary floating point never enters the pipeline.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DecError {
    #[error("malformed decimal '{0}'")]
    Malformed(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact decimal/rational value. Accepts plain decimal notation
/// (`-3.25`), scientific notation (`2.5e-3`), and `p/q` rationals in seed
/// files (`5/9`). Equality and ordering are value-based, so `1.0 == 1.00`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Dec(BigRational);

impl Dec {
    pub fn zero() -> Dec {
        Dec(BigRational::zero())
    }

    pub fn one() -> Dec {
        Dec(BigRational::one())
    }

    pub fn from_int(v: i64) -> Dec {
        Dec(BigRational::from_integer(BigInt::from(v)))
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

    pub fn abs(&self) -> Dec {
        Dec(self.0.abs())
    }

    pub fn checked_div(&self, rhs: &Dec) -> Result<Dec, DecError> {
        if rhs.0.is_zero() {
            return Err(DecError::DivisionByZero);
        }
        Ok(Dec(&self.0 / &rhs.0))
    }

    /// Parse decimal or `p/q` rational notation.
    pub fn parse(s: &str) -> Result<Dec, DecError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(DecError::Malformed(s.to_string()));
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = Dec::parse_plain(num)?;
            let d = Dec::parse_plain(den)?;
            return n.checked_div(&d);
        }
        Dec::parse_plain(s)
    }

    fn parse_plain(s: &str) -> Result<Dec, DecError> {
        let s = s.trim();
        let bad = || DecError::Malformed(s.to_string());
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(idx) => {
                let exp: i64 = s[idx + 1..].parse().map_err(|_| bad())?;
                (&s[..idx], exp)
            }
            None => (s, 0),
        };
        let (sign, body) = match mantissa.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let unscaled: BigInt = digits.parse().map_err(|_| bad())?;
        let mut value = BigRational::new(unscaled * BigInt::from(sign), pow10(frac_part.len() as i64));
        match exponent.cmp(&0) {
            Ordering::Greater => value *= BigRational::from_integer(pow10(exponent)),
            Ordering::Less => value /= BigRational::from_integer(pow10(-exponent)),
            Ordering::Equal => {}
        }
        Ok(Dec(value))
    }

    /// Render with at most `sig` significant digits, positional notation,
    /// trailing zeros trimmed. Values that terminate earlier render
    /// exactly (`1.778`, not `1.77800000000`).
    pub fn to_sig_string(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.0.is_zero() {
            return "0".to_string();
        }
        let neg = self.0.is_negative();
        let a = self.0.abs();
        let e = decimal_exponent(&a);
        // n = round(a * 10^(sig-1-e)), half away from zero
        let p = sig as i64 - 1 - e;
        let numer = a.numer();
        let denom = a.denom();
        let (scaled_num, scaled_den) = if p >= 0 {
            (numer * pow10(p), denom.clone())
        } else {
            (numer.clone(), denom * pow10(-p))
        };
        let mut n = (BigInt::from(2) * &scaled_num + &scaled_den) / (BigInt::from(2) * &scaled_den);
        let mut e = e;
        let limit = pow10(sig as i64);
        if n >= limit {
            n /= BigInt::from(10);
            e += 1;
        }
        let digits = n.to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if e >= 0 {
            let int_len = (e + 1) as usize;
            if int_len >= digits.len() {
                out.push_str(&digits);
                out.push_str(&"0".repeat(int_len - digits.len()));
            } else {
                out.push_str(&digits[..int_len]);
                let frac = digits[int_len..].trim_end_matches('0');
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(frac);
                }
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-e - 1) as usize));
            out.push_str(digits.trim_end_matches('0'));
        }
        out
    }

    pub(crate) fn rational(&self) -> &BigRational {
        &self.0
    }
}

fn pow10(exp: i64) -> BigInt {
    let mut out = BigInt::one();
    let ten = BigInt::from(10);
    for _ in 0..exp {
        out *= &ten;
    }
    out
}

/// floor(log10(a)) for positive rationals.
fn decimal_exponent(a: &BigRational) -> i64 {
    let one = BigRational::one();
    if *a >= one {
        let trunc = a.numer() / a.denom();
        trunc.to_string().len() as i64 - 1
    } else {
        let mut k: i64 = 0;
        let ten = BigRational::from_integer(BigInt::from(10));
        let mut v = a.clone();
        while v < one {
            v *= &ten;
            k += 1;
            debug_assert!(k < 100_000, "exponent runaway");
        }
        -k
    }
}

impl FromStr for Dec {
    type Err = DecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dec::parse(s)
    }
}

impl fmt::Display for Dec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sig_string(12))
    }
}

impl Add for &Dec {
    type Output = Dec;
    fn add(self, rhs: &Dec) -> Dec {
        Dec(&self.0 + &rhs.0)
    }
}

impl Sub for &Dec {
    type Output = Dec;
    fn sub(self, rhs: &Dec) -> Dec {
        Dec(&self.0 - &rhs.0)
    }
}

impl Mul for &Dec {
    type Output = Dec;
    fn mul(self, rhs: &Dec) -> Dec {
        Dec(&self.0 * &rhs.0)
    }
}

impl Div for &Dec {
    type Output = Dec;
    fn div(self, rhs: &Dec) -> Dec {
        Dec(&self.0 / &rhs.0)
    }
}

impl Neg for Dec {
    type Output = Dec;
    fn neg(self) -> Dec {
        Dec(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dec {
        Dec::parse(s).unwrap()
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(d("1.778").to_sig_string(12), "1.778");
        assert_eq!(d("0.0254").to_sig_string(12), "0.0254");
        assert_eq!(d("-3.5").to_sig_string(12), "-3.5");
        assert_eq!(d("273.15").to_sig_string(12), "273.15");
        assert_eq!(d("2.5e-3").to_sig_string(12), "0.0025");
        assert_eq!(d("1e3").to_sig_string(12), "1000");
        assert_eq!(d("0").to_sig_string(12), "0");
    }

    #[test]
    fn rational_notation() {
        let five_ninths = d("5/9");
        let exact = &d("5") / &d("9");
        assert_eq!(five_ninths, exact);
    }

    #[test]
    fn value_equality_ignores_trailing_zeros() {
        assert_eq!(d("1.0"), d("1.00"));
        assert_eq!(d("70") , d("70.000"));
    }

    #[test]
    fn sig_digit_rounding() {
        assert_eq!(d("1.23456789").to_sig_string(4), "1.235");
        assert_eq!(d("999.99").to_sig_string(3), "1000");
        assert_eq!(d("0.000123456").to_sig_string(3), "0.000123");
        let third = &d("1") / &d("3");
        assert_eq!(third.to_sig_string(5), "0.33333");
    }

    #[test]
    fn malformed_inputs() {
        assert!(Dec::parse("").is_err());
        assert!(Dec::parse("abc").is_err());
        assert!(Dec::parse("1.2.3").is_err());
        assert!(Dec::parse("1/0").is_err());
    }

    #[test]
    fn exact_inch_product() {
        let seventy_inches = &d("70") * &d("0.0254");
        assert_eq!(seventy_inches, d("1.778"));
        assert_eq!(seventy_inches.to_sig_string(12), "1.778");
    }
}
