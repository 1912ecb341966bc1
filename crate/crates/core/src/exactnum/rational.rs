//! Exact rationals and their text forms.
//!
//! The numeric type is [`num_rational::BigRational`]: always reduced,
//! positive denominator, exact arithmetic. This module adds the text syntax
//! used by instance files: `p/q` or `p` for rationals, and plain decimals
//! (optionally with an exponent, e.g. `1e-11`) for symbol approximations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Parse `p` or `p/q` (optional leading sign). Rejects zero denominators.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

/// Parse a decimal literal `[+-]ddd[.ddd][e[+-]ddd]` into an exact rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (mantissa, exp) = match text.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (text, 0i64),
    };
    // keep 10^|scale| computable
    if !(-100_000..=100_000).contains(&exp) {
        return None;
    }
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    if frac_part.len() > 100_000 {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mantissa_int: BigInt = if joined.is_empty() { BigInt::zero() } else { joined.parse().ok()? };
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(mantissa_int * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(mantissa_int, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if sign < 0 { -value } else { value })
}

/// Render a rational as an exact terminating decimal, if its denominator is
/// of the form 2^a·5^b; otherwise `None` (callers fall back to `p/q`).
pub fn to_decimal_string(r: &Rational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&den % &two).is_zero() {
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
    // scale numerator so the denominator becomes 10^k
    let k = twos.max(fives);
    let mut num = r.numer().abs();
    num *= num_traits::pow(two, k - twos);
    num *= num_traits::pow(five, k - fives);
    let digits = num.to_string();
    let sign = if r.numer().is_negative() { "-" } else { "" };
    if k == 0 {
        return Some(format!("{sign}{digits}"));
    }
    let padded = format!("{digits:0>width$}", width = k + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - k);
    let frac_trimmed = frac_part.trim_end_matches('0');
    if frac_trimmed.is_empty() {
        Some(format!("{sign}{int_part}"))
    } else {
        Some(format!("{sign}{int_part}.{frac_trimmed}"))
    }
}

/// Exponentiation by a nonnegative integer.
pub fn rat_pow(base: &Rational, exp: u32) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_integer_and_fraction_forms() {
        assert_eq!(rat("3"), Rational::from_integer(3.into()));
        assert_eq!(rat("-7/2"), Rational::new((-7).into(), 2.into()));
        assert_eq!(rat("4/6"), rat("2/3"));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_decimal("1.414").unwrap(), rat("1414/1000"));
        assert_eq!(parse_decimal("1e-11").unwrap(), rat("1/100000000000"));
        assert_eq!(parse_decimal("-0.5e3").unwrap(), rat("-500"));
        assert_eq!(parse_decimal("2").unwrap(), rat("2"));
        assert!(parse_decimal(".").is_none());
        assert!(parse_decimal("1.2.3").is_none());
    }

    #[test]
    fn decimal_render_round_trips() {
        for s in ["1.41421356237309", "0.00000000001", "-2.5", "3", "0"] {
            let r = parse_decimal(s).unwrap();
            let rendered = to_decimal_string(&r).unwrap();
            assert_eq!(parse_decimal(&rendered).unwrap(), r);
        }
        assert_eq!(to_decimal_string(&rat("1/3")), None);
    }
}
