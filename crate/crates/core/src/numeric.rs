//! Rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `29/2`, `-143/21`, or a bare integer when the denominator is one.
pub fn format_exact(value: &BigRational) -> String {
    if value.denom() == &BigInt::from(1) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering rounded half-to-even at `precision` places, with
/// trailing zeros (and a bare trailing point) removed.
pub fn format_decimal(value: &BigRational, precision: u32) -> String {
    let scale = BigInt::from(10).pow(precision);
    let numer = value.numer().abs() * &scale;
    let denom = value.denom().abs();
    let (mut quotient, remainder) = numer.div_rem(&denom);
    let twice = remainder * 2;
    if twice > denom || (twice == denom && quotient.is_odd()) {
        quotient += 1;
    }

    let digits = quotient.to_string();
    let precision = precision as usize;
    let padded = if digits.len() <= precision {
        format!("{}{}", "0".repeat(precision + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - precision);
    let frac_part = frac_part.trim_end_matches('0');

    let negative = value.is_negative() && !quotient.is_zero();
    let mut out = String::with_capacity(padded.len() + 2);
    if negative {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}
