//! Exact rational helpers.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"3/10"`, `"-2"`, `"0.15"` or `"1.5e-3"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Syntax {
        line: 0,
        message: alloc::format!("invalid rational `{s}`"),
    };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: String = [int_part, frac_part].concat();
    let mut value = Rational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents and semiconvergents).
pub fn approximate(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() || max_den == 0 {
        return None;
    }
    let exact = Rational::from_float(x)?;
    let negative = exact.is_negative();
    let target = exact.abs();
    let max_den = BigInt::from(max_den);

    // convergents p/q of the continued fraction of `target`
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &a * &q1 + &q0;
        if q2 > max_den {
            // largest admissible semiconvergent
            let k = (&max_den - &q0) / &q1;
            let semi = Rational::new(&k * &p1 + &p0, &k * &q1 + &q0);
            let conv = Rational::new(p1.clone(), q1.clone());
            let best = if (&semi - &target).abs() < (&conv - &target).abs() {
                semi
            } else {
                conv
            };
            return Some(if negative { -best } else { best });
        }
        let p2 = &a * &p1 + &p0;
        p0 = core::mem::replace(&mut p1, p2);
        q0 = core::mem::replace(&mut q1, q2);
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            let best = Rational::new(p1, q1);
            return Some(if negative { -best } else { best });
        }
        rest = frac.recip();
    }
}

/// Display form used in reports: `"1/3"`, `"0"`, `"-3/20"`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/10").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("-0.15").unwrap(), rat(-3, 20));
        assert_eq!(parse_rational("1.5e-3").unwrap(), rat(3, 2000));
        assert_eq!(parse_rational("2E1").unwrap(), rat(20, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        for bad in ["", "1/0", "a", "1.2.3", "-", "1e"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn approximations() {
        assert_eq!(approximate(1.0 / 3.0, 1_000).unwrap(), rat(1, 3));
        assert_eq!(approximate(0.45, 1_000_000_000).unwrap(), rat(9, 20));
        assert_eq!(approximate(-0.25, 10).unwrap(), rat(-1, 4));
        assert_eq!(
            approximate(core::f64::consts::PI, 1000).unwrap(),
            rat(355, 113)
        );
        assert_eq!(approximate(0.0, 5).unwrap(), rat(0, 1));
        assert!(approximate(f64::NAN, 5).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(format_rational(&rat(2, 6)), "1/3");
        assert_eq!(format_rational(&rat(0, 6)), "0");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }
}
