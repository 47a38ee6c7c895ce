//! Dense univariate polynomial arithmetic over Q, internal to the cyclotomic
//! layer. Coefficient vectors are little-endian (index = power of x) with
//! trailing zeros trimmed.

use num_bigint::BigInt;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::rational::Rat;

pub(crate) fn trim(v: &mut Vec<Rat>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn degree(v: &[Rat]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub(crate) fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic divisor.
pub(crate) fn rem_monic(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    debug_assert!(m.last().map_or(false, |c| c.is_one()));
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        for (j, c) in m.iter().take(dm).enumerate() {
            if !c.is_zero() {
                r[shift + j] -= &lead * c;
            }
        }
    }
    trim(&mut r);
    r
}

/// Quotient and remainder by a monic divisor.
pub(crate) fn divmod_monic(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    debug_assert!(m.last().map_or(false, |c| c.is_one()));
    let dm = m.len() - 1;
    if a.len() <= dm {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![Rat::zero(); a.len() - dm];
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dm;
        q[shift] = lead.clone();
        for (j, c) in m.iter().take(dm).enumerate() {
            if !c.is_zero() {
                r[shift + j] -= &lead * c;
            }
        }
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

/// Extended gcd in Q[x]: returns (g, u) with u*a = g (mod m) and g the monic
/// gcd of a and m. Used to invert modulo the cyclotomic polynomial.
pub(crate) fn invert_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    // Euclid on (m, a) tracking only the cofactor of a.
    let mut r0 = m.to_vec();
    let mut r1 = rem_monic(a, m);
    let mut u0: Vec<Rat> = Vec::new();
    let mut u1: Vec<Rat> = vec![Rat::one()];
    while !r1.is_empty() {
        // Make r1 monic for the division step, folding the scale into u1.
        let lead = r1.last().unwrap().clone();
        if !lead.is_one() {
            for c in r1.iter_mut() {
                *c /= &lead;
            }
            for c in u1.iter_mut() {
                *c /= &lead;
            }
        }
        let (q, r) = divmod_monic(&r0, &r1);
        let qu1 = mul(&q, &u1);
        let mut u2 = u0.clone();
        u2.resize(u2.len().max(qu1.len()), Rat::zero());
        for (i, c) in qu1.iter().enumerate() {
            u2[i] -= c;
        }
        trim(&mut u2);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u2);
    }
    // gcd is r0; invertible iff it is a nonzero constant.
    if degree(&r0) == Some(0) {
        let g = r0[0].clone();
        let mut inv = u0;
        for c in inv.iter_mut() {
            *c /= &g;
        }
        Some(rem_monic(&inv, m))
    } else {
        None
    }
}

static CYCLOTOMIC_CACHE: Lazy<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// The n-th cyclotomic polynomial, little-endian integer coefficients.
///
/// Computed by exact division: Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
/// Results are memoized process-wide; the cache is read-mostly.
pub(crate) fn cyclotomic(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = CYCLOTOMIC_CACHE.read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let result = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![Rat::zero(); (n + 1) as usize];
        num[0] = -Rat::one();
        num[n as usize] = Rat::one();
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic(d);
                let phi_d_q: Vec<Rat> =
                    phi_d.iter().map(|c| Rat::from_integer(c.clone())).collect();
                let (q, r) = divmod_monic(&num, &phi_d_q);
                assert!(r.is_empty(), "cyclotomic division must be exact");
                num = q;
            }
        }
        num.iter()
            .map(|c| {
                assert!(c.denom().is_one(), "cyclotomic coefficients are integers");
                c.numer().clone()
            })
            .collect()
    };
    let arc = Arc::new(result);
    CYCLOTOMIC_CACHE.write().unwrap().insert(n, Arc::clone(&arc));
    arc
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat_int;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| rat_int(c)).collect()
    }

    #[test]
    fn cyclotomic_small_orders() {
        let as_i64 = |n| cyclotomic(n).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic(105).len() as u64, euler_phi(105) + 1);
    }

    #[test]
    fn invert_mod_round_trip() {
        // (1 + x) mod Phi_5
        let m: Vec<Rat> = cyclotomic(5).iter().map(|c| Rat::from_integer(c.clone())).collect();
        let a = ints(&[1, 1]);
        let inv = invert_mod(&a, &m).unwrap();
        let prod = rem_monic(&mul(&a, &inv), &m);
        assert_eq!(prod, ints(&[1]));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(72), 24);
    }
}
