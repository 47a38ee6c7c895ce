//! Exact rational arithmetic helpers.
//!
//! Rationals are `num_rational::BigRational` throughout: numerator and
//! denominator are arbitrary-precision, the denominator is kept positive and
//! the fraction reduced, so every value has a unique canonical form.
//!
//! This module adds the pieces the rest of the crate needs on top of the
//! `num` stack: `p/q` string I/O (the wire format for every rational in the
//! JSON interfaces) and the second Bernoulli polynomial, which supplies the
//! leading exponents of Siegel function expansions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Crate-wide exact rational type.
pub type Rat = BigRational;

/// Build a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Build an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Format as `p/q`, or just `p` when the denominator is 1.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse a `p/q` or `p` string (no decimals).
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse { position: 0, message: format!("invalid integer `{t}`") })
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(Error::Parse { position: 0, message: "zero denominator".into() });
            }
            Ok(Rat::new(parse_int(n)?, denom))
        }
    }
}

/// Fractional part reduced into [0, 1).
pub fn frac_mod_one(x: &Rat) -> Rat {
    let f = x.fract();
    if f.is_negative() {
        f + Rat::one()
    } else {
        f
    }
}

/// Second Bernoulli polynomial B2(x) = x^2 - x + 1/6.
///
/// B2(a1)/2 is the order of vanishing of the Siegel function g_(a1,a2) in q.
pub fn bernoulli2(x: &Rat) -> Rat {
    x * x - x + rat(1, 6)
}
