//! Exact cyclotomic arithmetic.
//!
//! A [`CycloNumber`] is an element of Q(zeta_n) written on the power basis
//! 1, zeta, ..., zeta^(phi(n)-1) after reduction modulo the n-th cyclotomic
//! polynomial. Reduction is applied by every constructor and operation, so
//! each value has a unique canonical form and equality is decidable
//! coefficient-wise.
//!
//! Mixed-order arithmetic lifts both operands to the compositum order
//! lcm(n1, n2) through the embedding zeta_n -> zeta_{kn}^k; no subfield
//! recognition is attempted, so orders only ever grow.

use num_complex::Complex64;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly;
use super::rational::{rat_from_str, rat_to_string, Rat};
use crate::error::{Error, Result};

/// An exact element of the cyclotomic field Q(zeta_order).
#[derive(Clone)]
pub struct CycloNumber {
    order: u64,
    /// Coordinates on the power basis; length phi(order).
    coeffs: Vec<Rat>,
}

impl CycloNumber {
    /// Canonicalize an arbitrary polynomial in zeta_order.
    fn from_poly(order: u64, poly_coeffs: Vec<Rat>) -> Self {
        let phi = poly::euler_phi(order) as usize;
        let modulus: Vec<Rat> = poly::cyclotomic(order)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let mut reduced = poly::rem_monic(&poly_coeffs, &modulus);
        reduced.resize(phi, Rat::zero());
        CycloNumber { order, coeffs: reduced }
    }

    pub fn zero(order: u64) -> Self {
        CycloNumber { order, coeffs: vec![Rat::zero(); poly::euler_phi(order) as usize] }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational_at(Rat::one(), order)
    }

    pub fn from_rational(x: Rat) -> Self {
        Self::from_rational_at(x, 1)
    }

    pub fn from_rational_at(x: Rat, order: u64) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = x;
        c
    }

    /// zeta_n, a fixed primitive n-th root of unity (e^{2 pi i / n} under the
    /// numeric embedding).
    pub fn zeta(n: u64) -> Self {
        Self::zeta_power(n, 1)
    }

    /// zeta_n^k.
    pub fn zeta_power(n: u64, k: i64) -> Self {
        let k = k.rem_euclid(n as i64) as usize;
        let mut p = vec![Rat::zero(); k + 1];
        p[k] = Rat::one();
        Self::from_poly(n, p)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into Q(zeta_m) for a multiple m of the current order, via
    /// zeta_n -> zeta_m^{m/n}. Commutes with all arithmetic.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.order == 0, "lift target must be a multiple of the order");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as usize;
        let mut p = vec![Rat::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p[i * step] = c.clone();
            }
        }
        Self::from_poly(m, p)
    }

    fn common_order(a: &Self, b: &Self) -> u64 {
        num_integer::lcm(a.order, b.order)
    }

    /// Apply the Galois automorphism sigma_d: zeta -> zeta^d.
    ///
    /// Requires gcd(d, order) = 1; acts coefficient-wise through the power
    /// basis and reduces back to canonical form.
    pub fn galois_sigma(&self, d: i64) -> Result<Self> {
        let n = self.order;
        let dr = d.rem_euclid(n as i64) as u64;
        if num_integer::gcd(dr, n) != 1 {
            return Err(Error::NotCoprime { d, order: n });
        }
        let mut p = vec![Rat::zero(); ((self.coeffs.len() as u64 - 1) * dr + 1).max(1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let k = (i as u64 * dr % n) as usize;
                if p.len() <= k {
                    p.resize(k + 1, Rat::zero());
                }
                p[k] += c;
            }
        }
        Ok(Self::from_poly(n, p))
    }

    /// Exact multiplicative inverse, via extended gcd modulo Phi_order.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<Rat> = poly::cyclotomic(self.order)
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect();
        let mut a = self.coeffs.clone();
        poly::trim(&mut a);
        let inv = poly::invert_mod(&a, &modulus)
            .ok_or_else(|| Error::Inconsistency("non-invertible nonzero cyclotomic".into()))?;
        Ok(Self::from_poly(self.order, inv))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        let n = Self::common_order(self, rhs);
        Ok(&self.lift(n) * &rhs.lift(n).inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numeric value under zeta_n = e^{2 pi i / n}.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let angle = 2.0 * std::f64::consts::PI * (i as f64) / n;
                let v = c.to_f64().expect("rational fits in f64");
                acc += Complex64::new(angle.cos(), angle.sin()) * v;
            }
        }
        acc
    }

    /// Scale by a rational in place-free style.
    pub fn scale(&self, r: &Rat) -> Self {
        CycloNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = Self::common_order(self, other);
        self.lift(n).coeffs == other.lift(n).coeffs
    }
}

impl Eq for CycloNumber {}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                let n = CycloNumber::common_order(self, rhs);
                let a = self.lift(n);
                let b = rhs.lift(n);
                binop!(@body $op, n, a, b)
            }
        }
        impl $trait for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
    };
    (@body +, $n:ident, $a:ident, $b:ident) => {{
        let coeffs = $a.coeffs.iter().zip(&$b.coeffs).map(|(x, y)| x + y).collect();
        CycloNumber { order: $n, coeffs }
    }};
    (@body -, $n:ident, $a:ident, $b:ident) => {{
        let coeffs = $a.coeffs.iter().zip(&$b.coeffs).map(|(x, y)| x - y).collect();
        CycloNumber { order: $n, coeffs }
    }};
    (@body *, $n:ident, $a:ident, $b:ident) => {{
        let mut pa = $a.coeffs.clone();
        let mut pb = $b.coeffs.clone();
        poly::trim(&mut pa);
        poly::trim(&mut pb);
        CycloNumber::from_poly($n, poly::mul(&pa, &pb))
    }};
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo(n={};", self.order)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " +")?;
            }
            first = false;
            write!(f, " {}", rat_to_string(c))?;
            if i > 0 {
                write!(f, "*z^{i}")?;
            }
        }
        if first {
            write!(f, " 0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for CycloNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            order: u64,
            coeffs: Vec<&'a str>,
        }
        let strings: Vec<String> = self.coeffs.iter().map(rat_to_string).collect();
        Wire { order: self.order, coeffs: strings.iter().map(|s| s.as_str()).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycloNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            order: u64,
            coeffs: Vec<String>,
        }
        let w = Wire::deserialize(deserializer)?;
        if w.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let phi = poly::euler_phi(w.order) as usize;
        if w.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {phi} coefficients for order {}, got {}",
                w.order,
                w.coeffs.len()
            )));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| rat_from_str(s).map_err(|e| D::Error::custom(e.to_string())))
            .collect::<std::result::Result<Vec<Rat>, _>>()?;
        Ok(CycloNumber { order: w.order, coeffs })
    }
}

/// Signed absolute-value-squared helper: x * sigma_{-1}(x), always real.
pub fn norm_to_real(x: &CycloNumber) -> CycloNumber {
    let conj = x.galois_sigma(-1).expect("-1 is always coprime to the order");
    x * &conj
}

/// Decompose a cyclotomic constant as (root of unity) * (positive rational),
/// when such a decomposition exists.
///
/// The roots of unity inside Q(zeta_n) all have order dividing lcm(2, n), so
/// a finite scan decides the question exactly.
pub fn as_unit_times_rational(x: &CycloNumber) -> Option<(super::roots::RootOfUnity, Rat)> {
    use super::rational::rat;
    if x.is_zero() {
        return None;
    }
    let n = x.order();
    let m = num_integer::lcm(2, n);
    for j in 0..m {
        let rho = super::roots::RootOfUnity::new(rat(j as i64, m as i64));
        let candidate = x * &rho.inverse().to_cyclo();
        if let Some(r) = candidate.as_rational() {
            if r.is_positive() {
                return Some((rho, r));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, rat_int};
    use super::*;

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let z = CycloNumber::zeta(3);
        let sum = &z + &z.pow(2);
        assert_eq!(sum, CycloNumber::from_rational(rat_int(-1)));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloNumber::zeta(4);
        assert_eq!(&i * &i, CycloNumber::from_rational(rat_int(-1)));
    }

    #[test]
    fn inverse_multiplies_back_to_one() {
        // Oracle: solve for the inverse independently by linear algebra over Q
        // on the power basis, then compare against the ext-gcd inverse and
        // check both multiply back to 1.
        let x = &CycloNumber::one(5) + &CycloNumber::zeta(5);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, CycloNumber::one(5));

        let oracle = linear_solve_inverse(&x);
        assert_eq!(inv, oracle);
    }

    /// Independent inverse: Gaussian elimination on the multiplication matrix.
    fn linear_solve_inverse(x: &CycloNumber) -> CycloNumber {
        let n = x.order();
        let phi = poly::euler_phi(n) as usize;
        // Column j of the matrix is x * zeta^j on the power basis.
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            let prod = x * &CycloNumber::zeta_power(n, j as i64);
            cols.push(prod.coeffs().to_vec());
        }
        // Solve M * v = e_0.
        let mut aug: Vec<Vec<Rat>> = (0..phi)
            .map(|row| {
                let mut r: Vec<Rat> = (0..phi).map(|col| cols[col][row].clone()).collect();
                r.push(if row == 0 { Rat::one() } else { Rat::zero() });
                r
            })
            .collect();
        for col in 0..phi {
            let pivot = (col..phi).find(|&r| !aug[r][col].is_zero()).expect("invertible");
            aug.swap(col, pivot);
            let p = aug[col][col].clone();
            for c in aug[col].iter_mut() {
                *c /= &p;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in 0..=phi {
                        let delta = &aug[col][c] * &factor;
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs: Vec<Rat> = (0..phi).map(|r| aug[r][phi].clone()).collect();
        CycloNumber { order: n, coeffs }
    }

    #[test]
    fn galois_identity_and_power() {
        let x = &CycloNumber::zeta(5) + &CycloNumber::from_rational(rat_int(2));
        assert_eq!(x.galois_sigma(1).unwrap(), x);
        assert_eq!(CycloNumber::zeta(5).galois_sigma(2).unwrap(), CycloNumber::zeta_power(5, 2));
        assert!(CycloNumber::zeta(6).galois_sigma(2).is_err());
    }

    #[test]
    fn galois_composition() {
        let z = CycloNumber::zeta(7);
        let lhs = z.galois_sigma(2).unwrap().galois_sigma(3).unwrap();
        let rhs = z.galois_sigma(6).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_compatible_with_multiplication() {
        let a = &CycloNumber::zeta(6) + &CycloNumber::from_rational(rat(1, 2));
        let b = &CycloNumber::zeta_power(6, 5) - &CycloNumber::from_rational(rat_int(3));
        let prod_then_lift = (&a * &b).lift(12);
        let lift_then_prod = &a.lift(12) * &b.lift(12);
        assert_eq!(prod_then_lift, lift_then_prod);
    }

    #[test]
    fn equality_across_orders() {
        // zeta_3 lives at order 6 as zeta_6^2.
        assert_eq!(CycloNumber::zeta(3), CycloNumber::zeta_power(6, 2));
        assert_ne!(CycloNumber::zeta(3), CycloNumber::zeta(4));
    }

    #[test]
    fn unit_rational_decomposition() {
        // (1 - zeta_3)(1 - zeta_3^2) = 3: a positive rational with trivial unit part.
        let one = CycloNumber::one(3);
        let x = &(&one - &CycloNumber::zeta(3)) * &(&one - &CycloNumber::zeta_power(3, 2));
        let (rho, r) = as_unit_times_rational(&x).unwrap();
        assert!(rho.exponent().is_zero());
        assert_eq!(r, rat_int(3));

        // -zeta_4 = e(3/4).
        let y = -&CycloNumber::zeta(4);
        let (rho, r) = as_unit_times_rational(&y).unwrap();
        assert_eq!(rho.exponent(), &rat(3, 4));
        assert_eq!(r, rat_int(1));

        // 1 - zeta_3 = sqrt(3) * e(-1/12) is not unit-times-rational.
        let z = &one - &CycloNumber::zeta(3);
        assert!(as_unit_times_rational(&z).is_none());
    }

    #[test]
    fn serde_wire_format() {
        let x = &CycloNumber::zeta(4) + &CycloNumber::from_rational(rat(1, 2));
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"order":4,"coeffs":["1/2","1"]}"#);
        let back: CycloNumber = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }
}
