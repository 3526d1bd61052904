//! Arbitrary-precision rationals and their text encoding.
//!
//! `Rational` is `num_rational::BigRational`, which keeps values in lowest
//! terms with a positive denominator. The helpers here add the `"p/q"` text
//! form used by every JSON file format and a few conversions the rest of
//! the crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"`, or a plain decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Rational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits, for human output only.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    match r.to_f64() {
        Some(v) if v.is_finite() => {
            let s = format!("{:.*e}", digits.saturating_sub(1), v);
            // Render small magnitudes positionally, like %g.
            let exp: i32 = s.split('e').nth(1).and_then(|e| e.parse().ok()).unwrap_or(0);
            if (-5..15).contains(&exp) {
                let decimals = (digits as i32 - 1 - exp).max(0) as usize;
                let t = format!("{v:.decimals$}");
                if t.contains('.') {
                    t.trim_end_matches('0').trim_end_matches('.').to_string()
                } else {
                    t
                }
            } else {
                s
            }
        }
        _ => format_rational(r),
    }
}

/// Integer power with a possibly negative exponent.
pub fn pow_i(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::DivisionByZero { var: 0 });
    }
    let e = i32::try_from(exp).map_err(|_| Error::InvalidInput("exponent out of range".into()))?;
    Ok(base.pow(e))
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn to_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}
