//! The modular group PSL2(Z) and its principal congruence subgroups.
//!
//! Matrices are kept as integer matrices of determinant 1 and compared
//! projectively (up to global sign) where group theory requires it. The
//! paper's generator convention is used throughout: S = [[1,1],[0,1]] is the
//! unit translation and T = [[0,-1],[1,0]] the inversion -- note that many
//! texts swap these two names.

mod schreier;
mod words;

pub use schreier::{coset_reps, schreier_generators, verify_coset_table};
pub use words::{decompose_st, StStep, StWord};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Entry scan beyond this modulus is refused; the direct O(N^4) residue scan
/// is instantaneous well past the desk scale this library targets (the
/// largest modulus exercised by the verification suites is 48).
pub const ENUMERATION_BOUND: u64 = 64;

/// A 2x2 integer matrix of determinant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UniMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let m = UniMatrix { a, b, c, d };
        assert!(m.det().is_one(), "matrix must have determinant 1: {m}");
        m
    }

    pub fn try_new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let m = UniMatrix { a, b, c, d };
        if m.det().is_one() {
            Ok(m)
        } else {
            Err(Error::Precondition(format!("matrix {m} has determinant {}", m.det())))
        }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    /// S = [[1,1],[0,1]], the unit translation z -> z + 1.
    pub fn s() -> Self {
        Self::from_i64(1, 1, 0, 1)
    }

    /// S^k = [[1,k],[0,1]].
    pub fn s_pow(k: &BigInt) -> Self {
        UniMatrix { a: BigInt::one(), b: k.clone(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// T = [[0,-1],[1,0]], the inversion z -> -1/z.
    pub fn t() -> Self {
        Self::from_i64(0, -1, 1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        UniMatrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn inverse(&self) -> Self {
        UniMatrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        UniMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    /// Sign-normalized representative of the projective class: the first
    /// nonzero entry of (c, d, a, b) is made positive.
    pub fn normalized(&self) -> Self {
        for entry in [&self.c, &self.d, &self.a, &self.b] {
            if entry.is_positive() {
                return self.clone();
            }
            if entry.is_negative() {
                return self.neg();
            }
        }
        unreachable!("determinant-1 matrix has a nonzero entry")
    }

    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_identity_projective(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && (&self.a * &self.d).is_one() && self.a == self.d
    }

    pub fn reduce(&self, n: u64) -> MatModN {
        MatModN::new(
            n,
            rem_u64(&self.a, n),
            rem_u64(&self.b, n),
            rem_u64(&self.c, n),
            rem_u64(&self.d, n),
        )
    }

    /// True when the matrix is congruent to +I or -I mod n.
    pub fn is_congruent_identity(&self, n: u64) -> bool {
        self.reduce(n).is_identity()
    }

    /// The representative of the projective class congruent to +I mod n,
    /// for matrices in Gamma(n). Errors when the class is not in Gamma(n).
    pub fn normalize_to_identity_mod(&self, n: u64) -> Result<Self> {
        let r = self.reduce(n);
        let id = MatModN::identity_raw(n);
        if (r.a, r.b, r.c, r.d) == id {
            Ok(self.clone())
        } else {
            let m = self.neg();
            let r = m.reduce(n);
            if (r.a, r.b, r.c, r.d) == id {
                Ok(m)
            } else {
                Err(Error::Precondition(format!("{self} is not in Gamma({n})")))
            }
        }
    }

    /// Largest absolute value among the entries; useful for bound checks.
    pub fn max_entry_abs(&self) -> BigInt {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(|x| x.abs())
            .max()
            .unwrap()
    }
}

fn rem_u64(x: &BigInt, n: u64) -> u64 {
    let n_big = BigInt::from(n);
    let r = ((x % &n_big) + &n_big) % &n_big;
    r.to_u64().unwrap()
}

impl fmt::Debug for UniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for UniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireInt {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => WireInt::Small(v),
            None => WireInt::Big(x.to_string()),
        }
    }
}

impl TryFrom<WireInt> for BigInt {
    type Error = String;
    fn try_from(w: WireInt) -> std::result::Result<Self, String> {
        match w {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s.parse::<BigInt>().map_err(|e| e.to_string()),
        }
    }
}

impl Serialize for UniMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: [[WireInt; 2]; 2] = [
            [WireInt::from(&self.a), WireInt::from(&self.b)],
            [WireInt::from(&self.c), WireInt::from(&self.d)],
        ];
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: [[WireInt; 2]; 2] = Deserialize::deserialize(deserializer)?;
        let [[a, b], [c, d]] = rows;
        let convert = |w: WireInt| BigInt::try_from(w).map_err(D::Error::custom);
        UniMatrix::try_new(convert(a)?, convert(b)?, convert(c)?, convert(d)?)
            .map_err(D::Error::custom)
    }
}

/// A determinant-1 matrix over Z/NZ, stored as the sign-normalized
/// representative of its +/- class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatModN {
    pub modulus: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl MatModN {
    pub fn new(n: u64, a: u64, b: u64, c: u64, d: u64) -> Self {
        assert!(n >= 1);
        let (a, b, c, d) = (a % n, b % n, c % n, d % n);
        debug_assert_eq!(
            (a as u128 * d as u128 + (n as u128 * n as u128) - b as u128 * c as u128)
                % n as u128,
            1 % n as u128,
            "determinant must be 1 mod {n}"
        );
        // Pick the lexicographically smaller of the two sign representatives.
        let neg = |x: u64| if x == 0 { 0 } else { n - x };
        let flipped = (neg(a), neg(b), neg(c), neg(d));
        if n > 1 && flipped < (a, b, c, d) {
            MatModN { modulus: n, a: flipped.0, b: flipped.1, c: flipped.2, d: flipped.3 }
        } else {
            MatModN { modulus: n, a, b, c, d }
        }
    }

    fn identity_raw(n: u64) -> (u64, u64, u64, u64) {
        (1 % n, 0, 0, 1 % n)
    }

    pub fn identity(n: u64) -> Self {
        let (a, b, c, d) = Self::identity_raw(n);
        MatModN::new(n, a, b, c, d)
    }

    pub fn is_identity(&self) -> bool {
        let id = Self::identity(self.modulus);
        *self == id
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        let n = self.modulus as u128;
        let m = |x: u64, y: u64| (x as u128 * y as u128) % n;
        MatModN::new(
            self.modulus,
            ((m(self.a, rhs.a) + m(self.b, rhs.c)) % n) as u64,
            ((m(self.a, rhs.b) + m(self.b, rhs.d)) % n) as u64,
            ((m(self.c, rhs.a) + m(self.d, rhs.c)) % n) as u64,
            ((m(self.c, rhs.b) + m(self.d, rhs.d)) % n) as u64,
        )
    }
}

/// [Gamma : Gamma(N)], the size of SL2(Z/NZ)/{+-I}.
///
/// Returns 1 for N = 1 and 6 for N = 2; for N = 2 the matrices +I and -I
/// coincide mod 2 so the quotient by signs is trivial and the N > 2 halving
/// formula (1/2) N^3 prod_{p|N} (1 - 1/p^2) does not apply.
pub fn index_gamma(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("level must be >= 1".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    // N^3 prod (1 - 1/p^2) = N^3 prod (p^2-1)/p^2 over primes p | N.
    let mut num: u128 = (n as u128).pow(3);
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            num = num / (p as u128 * p as u128) * ((p as u128 * p as u128) - 1);
        }
        p += 1;
    }
    if m > 1 {
        num = num / (m as u128 * m as u128) * ((m as u128 * m as u128) - 1);
    }
    let full = num; // |SL2(Z/NZ)|
    let result = if n == 2 { full } else { full / 2 };
    Ok(result as u64)
}

/// One representative per +/- class of determinant-1 matrices mod N, by
/// direct residue scan. The list length equals [`index_gamma`]`(N)`.
pub fn enumerate_psl2_modn(n: u64) -> Result<Vec<MatModN>> {
    if n == 0 || n > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound { n, bound: ENUMERATION_BOUND });
    }
    if n == 1 {
        return Ok(vec![MatModN::identity(1)]);
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for d in 0..n {
            let ad = a as u128 * d as u128;
            for b in 0..n {
                for c in 0..n {
                    let bc = b as u128 * c as u128;
                    let det = (ad + (n as u128 * n as u128) - bc) % n as u128;
                    if det == 1 % n as u128 {
                        let m = MatModN::new(n, a, b, c, d);
                        if seen.insert(m.clone()) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Lift a determinant-1 class mod N to an integer matrix of determinant
/// exactly 1 that reduces to the chosen sign representative mod N.
///
/// Bottom row first: pick (c', d') congruent to (c, d) with gcd(c', d') = 1,
/// then complete with Bezout coefficients and translate the top row into the
/// right residue class. All entries are O(N^2).
pub fn lift_modn(m: &MatModN) -> UniMatrix {
    let n = m.modulus as i64;
    if m.is_identity() {
        return UniMatrix::identity();
    }
    let (a, b, c, d) = (m.a as i64, m.b as i64, m.c as i64, m.d as i64);
    // Bottom row with gcd 1. gcd(c, d, N) = 1 because the determinant is a
    // unit mod N, so a suitable translate of d exists; c = 0 is replaced by N.
    let cp = if c == 0 { n } else { c };
    let mut dp = d;
    let mut k = 0i64;
    while num_integer::gcd(cp, dp) != 1 {
        k += 1;
        dp = d + k * n;
        assert!(k <= cp.abs() + 1, "gcd search must terminate");
    }
    // x*dp - y*cp = 1, with x normalized into [0, cp) so entries stay small.
    let (g, x, yneg) = ext_gcd(dp, cp);
    debug_assert_eq!(g, 1);
    let (mut x0, mut y0) = (x, -yneg);
    let shift = x0.div_euclid(cp);
    x0 -= shift * cp;
    y0 -= shift * dp;
    // Top row (x0 + t*cp, y0 + t*dp) lands in the residue class of (a, b)
    // for exactly one t mod N.
    let t = (0..n)
        .find(|t| ((x0 + t * cp) - a).rem_euclid(n) == 0 && ((y0 + t * dp) - b).rem_euclid(n) == 0)
        .expect("determinant-1 class admits a lift");
    UniMatrix::from_i64(x0 + t * cp, y0 + t * dp, cp, dp)
}

/// Extended gcd: returns (g, x, y) with x*a + y*b = g = gcd(a, b), g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a >= 0 {
            (a, 1, 0)
        } else {
            (-a, -1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// A complete set of coset representatives for Gamma/Gamma(N), pairwise
/// inequivalent projectively, obtained by lifting [`enumerate_psl2_modn`].
/// The identity class is represented by the literal identity matrix.
pub fn coset_reps_gamma(n: u64) -> Result<Vec<UniMatrix>> {
    let classes = enumerate_psl2_modn(n)?;
    Ok(classes.iter().map(lift_modn).collect())
}

/// A finite-index subgroup of the modular group, given by modulus data and a
/// projective membership oracle.
///
/// The oracle must satisfy member(A) = member(-A); handles built by this
/// crate normalize the sign internally. Predicates are pure and safe to call
/// concurrently.
#[derive(Clone)]
pub struct SubgroupHandle {
    /// A modulus through which membership is known or suspected to factor;
    /// 0 when unknown.
    pub modulus_hint: u64,
    pub index_hint: Option<u64>,
    pub label: String,
    member: Arc<dyn Fn(&UniMatrix) -> bool + Send + Sync>,
    /// Set for principal congruence subgroups Gamma(N); enables fast coset
    /// identification through residue tables.
    pub principal_level: Option<u64>,
}

impl SubgroupHandle {
    /// The principal congruence subgroup Gamma(N).
    pub fn gamma(n: u64) -> Self {
        assert!(n >= 1);
        SubgroupHandle {
            modulus_hint: n,
            index_hint: index_gamma(n).ok(),
            label: format!("Gamma({n})"),
            member: Arc::new(move |m: &UniMatrix| m.is_congruent_identity(n)),
            principal_level: Some(n),
        }
    }

    /// A subgroup from an arbitrary projective membership oracle.
    pub fn from_oracle<F>(label: impl Into<String>, modulus_hint: u64, index_hint: Option<u64>, member: F) -> Self
    where
        F: Fn(&UniMatrix) -> bool + Send + Sync + 'static,
    {
        SubgroupHandle {
            modulus_hint,
            index_hint,
            label: label.into(),
            member: Arc::new(member),
            principal_level: None,
        }
    }

    pub fn is_member(&self, m: &UniMatrix) -> bool {
        (self.member)(m)
    }

    /// Search bound for coset/width scans: the known index with slack, or a
    /// generous default.
    pub fn search_bound(&self) -> u64 {
        self.index_hint.map(|i| 2 * i + 8).unwrap_or(4096)
    }
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("label", &self.label)
            .field("modulus_hint", &self.modulus_hint)
            .field("index_hint", &self.index_hint)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_formula_small_levels() {
        assert_eq!(index_gamma(1).unwrap(), 1);
        assert_eq!(index_gamma(2).unwrap(), 6);
        assert_eq!(index_gamma(3).unwrap(), 12);
        assert_eq!(index_gamma(4).unwrap(), 24);
        assert_eq!(index_gamma(5).unwrap(), 60);
        assert_eq!(index_gamma(6).unwrap(), 72);
        assert_eq!(index_gamma(48).unwrap(), 36864);
        assert!(index_gamma(0).is_err());
    }

    #[test]
    fn enumeration_matches_formula() {
        for n in 1..=8 {
            let classes = enumerate_psl2_modn(n).unwrap();
            assert_eq!(classes.len() as u64, index_gamma(n).unwrap(), "level {n}");
        }
        assert_eq!(enumerate_psl2_modn(1).unwrap(), vec![MatModN::identity(1)]);
        assert_eq!(enumerate_psl2_modn(6).unwrap().len(), 72);
        assert!(enumerate_psl2_modn(ENUMERATION_BOUND + 1).is_err());
    }

    #[test]
    fn lift_reduces_back() {
        for n in [2u64, 3, 5, 7, 12] {
            for class in enumerate_psl2_modn(n).unwrap() {
                let lifted = lift_modn(&class);
                assert!(lifted.det().is_one());
                assert_eq!(lifted.reduce(n), class, "lift of {class:?} mod {n}");
                // Documented entry bound O(N^2).
                assert!(
                    lifted.max_entry_abs() <= BigInt::from((4 * n * n + 2 * n) as i64),
                    "lift {lifted} of {class:?} exceeds the O(N^2) bound"
                );
            }
        }
    }

    #[test]
    fn lift_examples() {
        // Identity mod 5 lifts to the identity.
        assert_eq!(lift_modn(&MatModN::identity(5)), UniMatrix::identity());
        // [[0,-1],[1,0]] mod 3 is already integral with det 1.
        let t_class = UniMatrix::t().reduce(3);
        let lift = lift_modn(&t_class);
        assert_eq!(lift.reduce(3), t_class);
        // [[2,0],[0,3]] mod 5: lift must have det exactly 1 and reduce to
        // the +/- class.
        let m = MatModN::new(5, 2, 0, 0, 3);
        let lift = lift_modn(&m);
        assert!(lift.det().is_one());
        assert_eq!(lift.reduce(5), m);
    }

    #[test]
    fn coset_reps_are_pairwise_distinct() {
        for n in [3u64, 4] {
            let reps = coset_reps_gamma(n).unwrap();
            assert_eq!(reps.len() as u64, index_gamma(n).unwrap());
            for i in 0..reps.len() {
                for j in (i + 1)..reps.len() {
                    let q = reps[i].mul(&reps[j].inverse());
                    assert!(!q.is_congruent_identity(n), "reps {i} and {j} collide mod {n}");
                }
            }
        }
    }

    #[test]
    fn projective_normalization() {
        let m = UniMatrix::from_i64(-1, -5, 0, -1);
        let norm = m.normalized();
        assert_eq!(norm, UniMatrix::from_i64(1, 5, 0, 1));
        assert!(m.projectively_eq(&norm));
    }

    #[test]
    fn gamma_handle_membership_is_sign_insensitive() {
        let h = SubgroupHandle::gamma(4);
        let m = UniMatrix::from_i64(1, 4, 4, 17);
        assert!(h.is_member(&m));
        assert!(h.is_member(&m.neg()));
        assert!(!h.is_member(&UniMatrix::s()));
        assert!(h.is_member(&UniMatrix::identity()));
    }

    #[test]
    fn matrix_serde_round_trip() {
        let m = UniMatrix::from_i64(2, 7, 1, 4);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, "[[2,7],[1,4]]");
        let back: UniMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<UniMatrix>("[[1,1],[1,1]]").is_err());
    }
}
