//! Short helpers around the exact rational number type used everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. Payoffs, welfare, resistances, and quality ratios
/// are all values of this type.
pub type Rational = BigRational;

/// Build a rational from a small numerator/denominator pair.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Build a rational from an integer.
pub fn int(value: i64) -> Rational {
    Rational::from(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parse a rational from a `"p/q"` pair or a plain decimal string such as
/// `"0.25"` or `"-3"`. Decimal strings are parsed exactly (no float round
/// trip).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = frac.len() as u32;
        let frac_num: BigInt = frac.parse().ok()?;
        let scale = BigInt::from(10u32).pow(digits);
        let magnitude = whole.abs() * &scale + frac_num;
        let signed = if negative { -magnitude } else { magnitude };
        return Some(Rational::new(signed, scale));
    }
    let n: BigInt = text.parse().ok()?;
    Some(Rational::from(n))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise. Parsing the
/// result with [`parse_rational`] reproduces the value exactly.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Lossy conversion for the floating-point dynamics code paths.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or_else(|| {
        // Fall back to a division of truncated parts for extreme operands.
        let n = value.numer().to_f64().unwrap_or(f64::MAX);
        let d = value.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal_forms() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3/9").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn decimal_parse_is_exact_not_floating() {
        // 0.1 as a float is not 1/10; the string parse must be.
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("0.3333").unwrap(), rat(3333, 10000));
    }

    #[test]
    fn format_round_trips() {
        for value in [rat(5, 8), int(-4), rat(-22, 7), zero()] {
            assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }
}
