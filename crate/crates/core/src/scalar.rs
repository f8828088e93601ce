//! Exact rational scalars.
//!
//! Every structure constant handled by this crate is rational, so the field of
//! coefficients is fixed to ℚ. A rational basis of the kernel of an integer
//! matrix is also a basis of its complex kernel, so dimensions and spanning
//! sets computed here are valid over ℂ as well.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// An arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Scalar = num_rational::BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

/// Parses `p`, `-p`, `p/q` with decimal integers; `q` must be nonzero.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseError> {
    let bad = || ParseError::new(0, format!("invalid rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let parse_int = |s: &str, allow_sign: bool| -> Option<BigInt> {
        let digits = if allow_sign { s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s) } else { s };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    };
    let num = parse_int(num, true).ok_or_else(bad)?;
    let den = match den {
        Some(d) => parse_int(d, false).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseError::new(0, format!("zero denominator in `{text}`")));
    }
    Ok(Scalar::new(num, den))
}

pub(crate) fn bit_length(v: &BigInt) -> u64 {
    v.bits()
}

/// Scales a rational vector to integers with content one, first nonzero
/// coordinate positive. The zero vector is returned unchanged.
pub(crate) fn primitive_integer_vector(coords: &[Scalar]) -> Vec<Scalar> {
    let lcm = coords.iter().filter(|c| !c.is_zero()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let mut content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if content.is_zero() {
        return coords.to_vec();
    }
    if ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
        content = -content;
    }
    ints.into_iter().map(|v| Scalar::from_integer(v / &content)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("-2/4").unwrap(), ratio(-1, 2));
        assert_eq!(parse_scalar("+7/1").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/-2").is_err());
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("--1").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_scalar(&ratio(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(format_scalar(&int(0)), "0");
    }

    #[test]
    fn primitive_vector_normalizes_sign_and_content() {
        let v = primitive_integer_vector(&[int(0), ratio(-1, 2), ratio(1, 3)]);
        assert_eq!(v, vec![int(0), int(3), int(-2)]);
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms_hold(a in small(), b in small(), c in small()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let s = &a * &b + &c;
            prop_assert!(s.denom().is_positive());
            prop_assert!(s.numer().gcd(s.denom()).is_one());
        }

        #[test]
        fn render_parse_round_trip(a in small()) {
            prop_assert_eq!(parse_scalar(&format_scalar(&a)).unwrap(), a);
        }
    }
}
