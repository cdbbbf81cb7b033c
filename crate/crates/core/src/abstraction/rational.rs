use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AbstractionError;

pub type Rational = BigRational;

/// Parse `"-0.18"`, `"3"`, `"1e-2"` or `"2/3"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, AbstractionError> {
    let err = || AbstractionError::Number(text.to_string());
    let t = text.trim().replace('\u{2212}', "-");
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (&t[..], 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: BigInt = format!("{int}{frac}0").parse::<BigInt>().map_err(|_| err())? / 10;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Shortest exact decimal when one exists, else `n/d`.
pub fn format_rational(r: &Rational) -> String {
    let mut d = r.denom().clone();
    let mut digits = 0usize;
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let mut scaled = r.abs();
    while !scaled.is_integer() {
        scaled *= Rational::from_integer(BigInt::from(10));
        digits += 1;
    }
    let s = scaled.to_integer().to_string();
    let s = if digits == 0 {
        s
    } else {
        let padded = format!("{s:0>width$}", width = digits + 1);
        let (i, f) = padded.split_at(padded.len() - digits);
        format!("{i}.{f}")
    };
    if r.is_negative() {
        format!("-{s}")
    } else {
        s
    }
}
