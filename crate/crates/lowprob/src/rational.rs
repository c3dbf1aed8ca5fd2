//! Exact rational scalars.
//!
//! Every probability, mass, and solver coefficient in this crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. There are no floats and no rounding anywhere.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"a/b"` or a plain integer string `"a"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::InvalidInput("empty rational literal".into()));
    }
    t.parse::<Rational>()
        .map_err(|e| Error::InvalidInput(format!("cannot parse rational {t:?}: {e}")))
}

/// Renders as `"a/b"`, or `"a"` when the value is an integer.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Decimal rendering with the given number of fractional digits,
/// round-half-away-from-zero. Approximate by nature; callers must label it so.
pub fn decimal_approx(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from_integer(scale.clone());
    // round half away from zero
    let rounded = if scaled.is_negative() {
        -(-&scaled + rat(1, 2)).floor()
    } else {
        (&scaled + rat(1, 2)).floor()
    };
    let units = rounded.to_integer();
    let sign = if units.is_negative() { "-" } else { "" };
    let abs = units.abs();
    let int_part = &abs / &scale;
    let frac_part = &abs % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part,
            width = digits as usize
        )
    }
}

/// True when numerator and denominator are coprime with positive denominator.
/// `BigRational` maintains this on construction; exposed for property tests.
pub fn is_reduced(r: &Rational) -> bool {
    use num_integer::Integer;
    let g = r.numer().gcd(r.denom());
    r.denom().is_positive() && (r.numer().is_zero() || g == BigInt::from(1))
}

/// Best-effort `f64` rendering used nowhere in computation.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational(" 1/2 ").unwrap(), rat(1, 2));
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(3, -4)), "-3/4");
    }

    #[test]
    fn round_trip() {
        for s in ["0", "1", "-5", "1/3", "-7/12", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_approx(&rat(1, 4), 6), "0.250000");
        assert_eq!(decimal_approx(&rat(1, 3), 4), "0.3333");
        assert_eq!(decimal_approx(&rat(2, 3), 4), "0.6667");
        assert_eq!(decimal_approx(&rat(-1, 2), 2), "-0.50");
        assert_eq!(decimal_approx(&rat(5, 1), 0), "5");
    }

    #[test]
    fn reduction_invariant() {
        assert!(is_reduced(&rat(2, 4)));
        assert!(is_reduced(&rat(0, 7)));
        assert!(is_reduced(&(rat(1, 3) + rat(1, 6))));
    }
}
