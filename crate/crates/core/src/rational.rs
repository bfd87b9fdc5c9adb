//! Exact rational values and their two renderings.
//!
//! Every numeric result in this crate is a [`BigRational`] in lowest terms.
//! Reports show each value twice: the exact fraction (`"5/9"`) and a
//! 6-significant-digit decimal (`"0.555556"`); the decimal is a convenience
//! and never replaces the fraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Shorthand for an integer rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The exact fraction in lowest terms: `"0"`, `"2"`, `"-1/3"`, `"5/9"`.
pub fn fraction_string(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Number of significant digits in [`decimal_string`].
const SIGNIFICANT_DIGITS: u32 = 6;

/// A plain-notation decimal rendering with 6 significant digits, rounding
/// half away from zero: `"0"`, `"1.00000"`, `"0.0833333"`, `"0.555556"`.
pub fn decimal_string(value: &BigRational) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();

    // The decimal exponent e with 10^e <= magnitude < 10^(e+1).
    let mut exponent: i64 = 0;
    let one = BigRational::from_integer(BigInt::from(1));
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut scaled = magnitude.clone();
    while scaled >= ten {
        scaled /= &ten;
        exponent += 1;
    }
    while scaled < one {
        scaled *= &ten;
        exponent -= 1;
    }

    // Round magnitude * 10^(SIGNIFICANT_DIGITS - 1 - e) to an integer of
    // exactly SIGNIFICANT_DIGITS digits (one more if rounding carries).
    let shift = SIGNIFICANT_DIGITS as i64 - 1 - exponent;
    let scaled = magnitude * pow10(shift);
    let rounded: BigInt = (scaled.numer() * 2 + scaled.denom()) / (scaled.denom() * 2);
    let mut digits = rounded.to_string();
    let mut point_position = exponent + 1; // digits before the decimal point
    if digits.len() as u32 > SIGNIFICANT_DIGITS {
        // 999999.6 rounded up to 1000000: drop the trailing zero, shift the
        // point.
        digits.pop();
        point_position += 1;
    }

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point_position <= 0 {
        out.push_str("0.");
        for _ in 0..-point_position {
            out.push('0');
        }
        out.push_str(&digits);
    } else if (point_position as usize) < digits.len() {
        out.push_str(&digits[..point_position as usize]);
        out.push('.');
        out.push_str(&digits[point_position as usize..]);
    } else {
        // All significant digits sit left of the point; pad with zeros.
        out.push_str(&digits);
        for _ in 0..(point_position as usize - digits.len()) {
            out.push('0');
        }
    }
    out
}

fn pow10(exp: i64) -> BigRational {
    let base = BigInt::from(10).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::from(1), base)
    }
}

/// Best-effort float rendering for interoperability (report consumers that
/// want approximate numbers).
pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_are_lowest_terms() {
        assert_eq!(fraction_string(&rat(2, 4)), "1/2");
        assert_eq!(fraction_string(&rat(5, 9)), "5/9");
        assert_eq!(fraction_string(&rat(0, 7)), "0");
        assert_eq!(fraction_string(&rat(8, 4)), "2");
        assert_eq!(fraction_string(&rat(-1, 3)), "-1/3");
    }

    #[test]
    fn decimals_have_six_significant_digits() {
        assert_eq!(decimal_string(&rat(0, 1)), "0");
        assert_eq!(decimal_string(&rat(1, 1)), "1.00000");
        assert_eq!(decimal_string(&rat(2, 1)), "2.00000");
        assert_eq!(decimal_string(&rat(5, 9)), "0.555556");
        assert_eq!(decimal_string(&rat(1, 12)), "0.0833333");
        assert_eq!(decimal_string(&rat(8, 9)), "0.888889");
        assert_eq!(decimal_string(&rat(1, 3)), "0.333333");
        assert_eq!(decimal_string(&rat(7, 12)), "0.583333");
        assert_eq!(decimal_string(&rat(1000000, 1)), "1000000");
        assert_eq!(decimal_string(&rat(1234567, 1)), "1234570");
        assert_eq!(decimal_string(&rat(-5, 9)), "-0.555556");
        assert_eq!(decimal_string(&rat(1, 1000)), "0.00100000");
        assert_eq!(decimal_string(&rat(999999, 1)), "999999");
        assert_eq!(decimal_string(&rat(9999995, 10)), "1000000");
    }
}
