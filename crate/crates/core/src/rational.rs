//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::str::FromStr;

/// The scalar type used everywhere: arbitrary-precision rationals.
pub type Rat = BigRational;

pub fn rat_i64(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Canonical rendering `p/q` with `q > 0` and `gcd(|p|, q) = 1`.
///
/// `BigRational` maintains exactly this normal form, so rendering is just
/// printing numerator and denominator.
pub fn render(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human-facing rendering: bare integer when the denominator is one.
pub fn pretty(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        render(r)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct RationalParseError(pub String);

/// Parses `p/q` or a bare integer `p`.
pub fn parse(s: &str) -> Result<Rat, RationalParseError> {
    let bad = || RationalParseError(s.to_owned());
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p = BigInt::from_str(s.trim()).map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Exact conversion to `i64`, if the value is an integer in range.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    let n = r.numer();
    if n.abs() > BigInt::from(i64::MAX) {
        return None;
    }
    i64::from_str(&n.to_string()).ok()
}
