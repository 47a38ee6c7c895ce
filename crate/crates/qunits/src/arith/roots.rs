//! Exact roots of unity as exponents mod 1.
//!
//! A [`RootOfUnity`] with exponent r in [0, 1) denotes e^{2 pi i r}; the
//! reduced denominator of r is the multiplicative order. Multiplier
//! bookkeeping for Siegel products stays in this form (exponent arithmetic
//! mod 1 is exact and cheap); conversion into [`CycloNumber`] is explicit.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use super::cyclo::CycloNumber;
use super::rational::{frac_mod_one, rat_from_str, rat_to_string, Rat};

/// e^{2 pi i r} with r reduced into [0, 1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    exponent: Rat,
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&rat_to_string(&self.exponent))
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let exp = rat_from_str(&s).map_err(serde::de::Error::custom)?;
        Ok(RootOfUnity::new(exp))
    }
}

impl RootOfUnity {
    pub fn new(exponent: Rat) -> Self {
        RootOfUnity { exponent: frac_mod_one(&exponent) }
    }

    pub fn one() -> Self {
        RootOfUnity { exponent: Rat::zero() }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { exponent: Rat::new(1.into(), 2.into()) }
    }

    pub fn is_one(&self) -> bool {
        self.exponent.is_zero()
    }

    pub fn exponent(&self) -> &Rat {
        &self.exponent
    }

    /// Multiplicative order = denominator of the reduced exponent.
    pub fn order(&self) -> u64 {
        self.exponent.denom().to_u64().expect("root-of-unity order fits in u64")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.exponent + &other.exponent)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-&self.exponent)
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(&self.exponent * Rat::from_integer(k.into()))
    }

    /// Multiply the exponent by an exact rational (e.g. k from S^k steps).
    pub fn pow_rat(&self, k: &Rat) -> Self {
        Self::new(&self.exponent * k)
    }

    /// Canonical p-th root: exponent divided by p, landing in [0, 1/p).
    pub fn canonical_root(&self, p: u32) -> Self {
        Self::new(&self.exponent / Rat::from_integer(p.into()))
    }

    pub fn to_cyclo(&self) -> CycloNumber {
        let n = self.order();
        let k = self.exponent.numer().to_i64().expect("numerator fits");
        CycloNumber::zeta_power(n, k)
    }

    pub fn to_complex(&self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * self.exponent.to_f64().unwrap();
        Complex64::new(angle.cos(), angle.sin())
    }

    /// Snap a numeric value onto the nearest root of unity of order dividing
    /// `max_order`, requiring agreement within `tol` (both in modulus and in
    /// position). Returns None when no candidate is close enough.
    pub fn snap(value: Complex64, max_order: u64, tol: f64) -> Option<Self> {
        if (value.norm() - 1.0).abs() > tol {
            return None;
        }
        let angle = value.arg() / (2.0 * std::f64::consts::PI);
        let k = (angle * max_order as f64).round() as i64;
        let candidate = Self::new(Rat::new(k.into(), (max_order as i64).into()));
        let delta = (candidate.to_complex() - value).norm();
        if delta <= tol {
            Some(candidate)
        } else {
            None
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", rat_to_string(&self.exponent))
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// e(x) = e^{2 pi i x} as an exact root of unity.
pub fn e(x: &Rat) -> RootOfUnity {
    RootOfUnity::new(x.clone())
}
