//! The coefficient field: arbitrary-precision rationals.
//!
//! Backed by [`num::BigRational`], which already maintains the canonical
//! form this crate relies on: values are stored reduced, with a positive
//! denominator, so equality is plain structural equality and arithmetic
//! is exact.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

/// Exact rational scalar used for every series coefficient and matrix entry.
pub type Rat = BigRational;

/// Shorthand for the rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"n"` into a rational. Returns `None` on malformed input
/// or a zero denominator.
pub fn parse(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rat::new(num, den))
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Exact square root of a rational, if one exists.
///
/// A reduced `p/q >= 0` has a rational square root iff both `p` and `q` are
/// perfect squares; the returned root is the non-negative one.
pub fn sqrt_exact(value: &Rat) -> Option<Rat> {
    if value.is_negative() {
        return None;
    }
    if value.is_zero() {
        return Some(Rat::zero());
    }
    let num_root = value.numer().sqrt();
    let den_root = value.denom().sqrt();
    if &(&num_root * &num_root) == value.numer() && &(&den_root * &den_root) == value.denom() {
        Some(Rat::new(num_root, den_root))
    } else {
        None
    }
}

/// Render as `"p/q"`, or just `"n"` when the value is an integer.
pub fn render(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for text in ["0", "7", "-3", "1/2", "-1/16", "21875/65536"] {
            let v = parse(text).unwrap();
            assert_eq!(render(&v), text);
        }
        assert_eq!(parse("2/4").unwrap(), rat(1, 2));
        assert_eq!(render(&parse("2/4").unwrap()), "1/2");
        assert_eq!(parse("3/-6").unwrap(), rat(-1, 2));
        assert!(parse("1/0").is_none());
        assert!(parse("a/b").is_none());
        assert!(parse("").is_none());
    }

    #[test]
    fn sqrt_exact_cases() {
        assert_eq!(sqrt_exact(&int(4)), Some(int(2)));
        assert_eq!(sqrt_exact(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(sqrt_exact(&int(0)), Some(int(0)));
        assert_eq!(sqrt_exact(&int(1)), Some(int(1)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&rat(1, 3)), None);
        assert_eq!(sqrt_exact(&int(-4)), None);
    }
}
