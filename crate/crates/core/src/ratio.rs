//! Exact rational arithmetic helpers shared by every module.
//!
//! All quantities in this crate are integers or rationals with arbitrary
//! precision. This module fixes the two number types, the canonical textual
//! form of a rational (`num/den` with positive denominator and reduced
//! fraction), exact integer square roots of rationals, and the conversion of
//! both number types into JSON values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary-precision integer used for Chern numbers, lattice coordinates
/// and every other integral quantity.
pub type Int = BigInt;

/// Arbitrary-precision rational used for stability parameters, wall centers,
/// radii and slopes. `BigRational` keeps fractions reduced with a positive
/// denominator, which is exactly the canonical form we serialize.
pub type Rat = BigRational;

/// Shorthand for an `Int` from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for the rational `n/d`. Panics if `d == 0`; intended for
/// literals in code and tests, not for user input (use [`parse_rat`] there).
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Shorthand for the rational `n/1`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Error produced when a string is not a valid rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{input}`: {reason}")]
pub struct ParseRatError {
    /// The offending input, echoed back for diagnostics.
    pub input: String,
    /// Human-readable description of what went wrong.
    pub reason: String,
}

/// Parses a rational from either `num/den` or plain integer form.
/// Whitespace around the string or the slash is not accepted; the denominator
/// must be nonzero. The sign may appear on either component and the result is
/// reduced to canonical form.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = |reason: &str| ParseRatError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let parse_int = |part: &str, what: &str| -> Result<Int, ParseRatError> {
        part.parse::<Int>()
            .map_err(|_| err(&format!("{what} is not an integer")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let n = parse_int(num, "numerator")?;
            let d = parse_int(den, "denominator")?;
            if d.is_zero() {
                return Err(err("denominator is zero"));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(parse_int(s, "value")?)),
    }
}

/// Formats a rational in the canonical `num/den` form, always including the
/// denominator (`0` prints as `0/1`). The denominator is positive and the
/// fraction reduced because `BigRational` maintains that invariant.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Wrapper whose `Display` impl prints a rational in `num/den` form.
pub struct DisplayRat<'a>(pub &'a Rat);

impl fmt::Display for DisplayRat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Floor of the square root of a non-negative integer, computed exactly.
/// Panics on negative input (callers check sign first).
pub fn isqrt_floor(n: &Int) -> Int {
    assert!(!n.is_negative(), "isqrt_floor of negative integer");
    n.sqrt()
}

/// Largest integer `m >= 0` with `m*m <= x`, for a non-negative rational
/// `x`. Computed exactly: `m^2 <= p/q` is decided as `m^2 * q <= p`.
pub fn floor_sqrt_rat(x: &Rat) -> Int {
    assert!(!x.is_negative(), "floor_sqrt_rat of negative rational");
    let p = x.numer();
    let q = x.denom();
    // Start from the integer square root of the integer part and correct by
    // single steps; the initial guess is off by at most one.
    let mut m = isqrt_floor(&(p / q));
    while (&m + 1) * (&m + 1) * q <= *p {
        m += 1;
    }
    while &m * &m * q > *p && m.is_positive() {
        m -= 1;
    }
    m
}

/// Smallest integer `m >= 0` with `m*m >= x`, for a non-negative rational.
pub fn ceil_sqrt_rat(x: &Rat) -> Int {
    let f = floor_sqrt_rat(x);
    if &Rat::from_integer(f.clone()) * &Rat::from_integer(f.clone()) == *x {
        f
    } else {
        f + 1
    }
}

/// Converts an integer to JSON: a plain number when it fits in an `i64`,
/// otherwise a decimal string so no precision is ever lost.
pub fn int_to_json(n: &Int) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

/// Converts a rational to its canonical JSON form: the string `"num/den"`.
pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    serde_json::Value::from(format_rat(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fraction_and_integer_forms() {
        assert_eq!(parse_rat("-9/70").unwrap(), rat(-9, 70));
        assert_eq!(parse_rat("3").unwrap(), rat_int(3));
        assert_eq!(parse_rat("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("0").unwrap(), Rat::zero());
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominator() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn format_is_canonical_reduced_with_positive_denominator() {
        assert_eq!(format_rat(&rat(-9, 70)), "-9/70");
        assert_eq!(format_rat(&rat(2, -4)), "-1/2");
        assert_eq!(format_rat(&rat_int(0)), "0/1");
        assert_eq!(format_rat(&rat(81, 4900)), "81/4900");
    }

    #[test]
    fn rational_square_roots_are_exact() {
        assert_eq!(floor_sqrt_rat(&rat(81, 4900)), int(0));
        assert_eq!(floor_sqrt_rat(&rat_int(81)), int(9));
        assert_eq!(floor_sqrt_rat(&rat_int(80)), int(8));
        assert_eq!(floor_sqrt_rat(&rat(1225, 4)), int(17)); // sqrt(306.25)
        assert_eq!(ceil_sqrt_rat(&rat_int(81)), int(9));
        assert_eq!(ceil_sqrt_rat(&rat_int(82)), int(10));
        assert_eq!(ceil_sqrt_rat(&rat(1, 2)), int(1));
    }

    #[test]
    fn json_integers_preserve_precision() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(
            int_to_json(&big),
            serde_json::Value::from("123456789012345678901234567890")
        );
        assert_eq!(int_to_json(&int(-7)), serde_json::Value::from(-7i64));
    }
}
