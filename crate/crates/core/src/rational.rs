//! Exact rational coefficients.
//!
//! Coefficients are arbitrary precision fractions kept in lowest terms with a
//! positive denominator. Everything in the crate that is not a word index or a
//! dimension is one of these.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"3"`, `"-7/2"` or `" 4 / 6 "` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Bit length of the larger of numerator and denominator.
pub fn bit_size(r: &Rational) -> u64 {
    r.numer().abs().bits().max(r.denom().bits())
}
