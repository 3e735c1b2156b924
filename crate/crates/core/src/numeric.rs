//! Exact rational helpers shared by the grid, preprocessing and load
//! balancing code. All threshold comparisons in this crate are done on
//! `BigRational`s (or integers derived from them), never on floats.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{BigUint, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest integer `<= r`.
pub fn floor_big(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Smallest integer `>= r`.
pub fn ceil_big(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

pub fn big_rational_from_u128(v: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn big_rational_from_u64(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Converts a `BigInt` to `i128`, failing loudly instead of wrapping.
pub fn bigint_to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::NumberRange(format!("{v} does not fit in 128 bits")))
}

/// Parses a rational from `p/q`, an integer, or a finite decimal such as
/// `0.125` or `1.5e-3`. Decimals are read exactly (base-ten), not via
/// floating point.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::InvalidInput("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    parse_decimal(s)
}

/// Parses a decimal literal (optional sign, fraction, exponent) into an
/// exact rational.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::InvalidInput(format!("bad decimal literal {s:?}"));
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0i64),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut numer: BigInt = format!("{int_part}{frac_part}")
        .parse()
        .map_err(|_| bad())?;
    if sign == Sign::Minus {
        numer = -numer;
    }
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    if shift >= 0 {
        Ok(BigRational::from_integer(
            numer * ten.pow(shift as u32),
        ))
    } else {
        Ok(BigRational::new(numer, ten.pow((-shift) as u32)))
    }
}

/// Renders a rational as `p/q` (or just `p` when the denominator is one).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators of `values`.
pub fn denominator_lcm(values: &[BigRational]) -> BigUint {
    let mut acc = BigInt::one();
    for v in values {
        acc = acc.lcm(v.denom());
    }
    acc.magnitude().clone()
}

/// Natural log of a positive big integer, via the leading 64 bits plus the
/// discarded bit count. Accurate to f64 precision for any magnitude.
pub fn ln_biguint(v: &BigUint) -> f64 {
    debug_assert!(!v.is_zero());
    let bits = v.bits();
    if bits <= 64 {
        return (v.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = (v >> shift).to_u64().unwrap() as f64;
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// `r` as an f64, for display or log-domain arithmetic only.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    match (n.to_f64(), d.to_f64()) {
        (Some(nf), Some(df)) if df.is_finite() && nf.is_finite() => nf / df,
        _ => {
            let sign = if n.is_negative() { -1.0 } else { 1.0 };
            sign * (ln_biguint(n.magnitude()).exp() / ln_biguint(d.magnitude()).exp())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/5").unwrap(), BigRational::new(1.into(), 5.into()));
        assert_eq!(parse_rational("0.1").unwrap(), BigRational::new(1.into(), 10.into()));
        assert_eq!(parse_rational("1.5").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_integer(3.into()));
        assert_eq!(parse_rational("1.5e-3").unwrap(), BigRational::new(3.into(), 2000.into()));
        assert_eq!(parse_rational("2e2").unwrap(), BigRational::from_integer(200.into()));
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_rationals() {
        assert_eq!(format_rational(&BigRational::new(1.into(), 5.into())), "1/5");
        assert_eq!(format_rational(&BigRational::from_integer(7.into())), "7");
    }

    #[test]
    fn lcm_of_denominators() {
        let vals = vec![
            parse_decimal("1.5").unwrap(),
            parse_decimal("2.5").unwrap(),
        ];
        assert_eq!(denominator_lcm(&vals), BigUint::from(2u32));
        let vals = vec![parse_decimal("0.1").unwrap(); 3];
        assert_eq!(denominator_lcm(&vals), BigUint::from(10u32));
    }

    #[test]
    fn big_log_matches_f64_log() {
        let v = BigUint::from(12345678u64);
        assert!((ln_biguint(&v) - (12345678f64).ln()).abs() < 1e-12);
        // 2^200: ln = 200 ln 2
        let big = BigUint::from(1u8) << 200;
        let expect = 200.0 * std::f64::consts::LN_2;
        assert!((ln_biguint(&big) - expect).abs() < 1e-9 * expect);
    }
}
