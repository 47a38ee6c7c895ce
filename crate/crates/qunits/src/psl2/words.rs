//! Word decomposition in the generators S and T.
//!
//! Every determinant-1 integer matrix is a product of translation powers S^k
//! and inversions T, up to a global sign. The decomposition is a continued
//! fraction descent on the first column, so word lengths stay logarithmic in
//! the entries; translation runs are kept as single S^k steps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;

use super::UniMatrix;

/// One letter of an S/T word. T is projectively its own inverse, so the
/// alphabet {S^k, T} reaches every word over {S, S^-1, T}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StStep {
    /// S^k for a nonzero integer k.
    S(BigInt),
    T,
}

/// A word over {S, S^-1, T}, multiplying out to a matrix up to sign.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StWord(pub Vec<StStep>);

impl StWord {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Multiply the word out to an integer matrix.
    pub fn multiply(&self) -> UniMatrix {
        let mut acc = UniMatrix::identity();
        for step in &self.0 {
            acc = match step {
                StStep::S(k) => acc.mul(&UniMatrix::s_pow(k)),
                StStep::T => acc.mul(&UniMatrix::t()),
            };
        }
        acc
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for step in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match step {
                StStep::S(k) if k == &BigInt::from(1) => write!(f, "S")?,
                StStep::S(k) => write!(f, "S^{k}")?,
                StStep::T => write!(f, "T")?,
            }
        }
        Ok(())
    }
}

/// Nearest-integer division, ties broken toward the floor.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (a, b) = if b.is_negative() { (-a, -b) } else { (a.clone(), b.clone()) };
    let q = a.div_floor(&b);
    let r = &a - &q * &b;
    if BigInt::from(2) * r > b {
        q + 1
    } else {
        q
    }
}

/// Decompose a determinant-1 matrix as a word over {S, S^-1, T} whose
/// product equals the matrix up to a global sign.
pub fn decompose_st(a: &UniMatrix) -> StWord {
    let mut m = a.clone();
    let mut steps = Vec::new();
    loop {
        if m.c.is_zero() {
            // m = +-[[1, k],[0, 1]]; the sign of `a` tells which.
            let k = if m.a.is_positive() { m.b.clone() } else { -&m.b };
            if !k.is_zero() {
                steps.push(StStep::S(k));
            }
            break;
        }
        let k = div_nearest(&m.a, &m.c);
        if !k.is_zero() {
            // Emit S^k and peel it off the left: m <- S^-k m.
            m = UniMatrix {
                a: &m.a - &k * &m.c,
                b: &m.b - &k * &m.d,
                c: m.c,
                d: m.d,
            };
            steps.push(StStep::S(k));
        }
        // Emit T and peel it: T^-1 [[a,b],[c,d]] = [[c,d],[-a,-b]].
        steps.push(StStep::T);
        m = UniMatrix { a: m.c.clone(), b: m.d.clone(), c: -&m.a, d: -&m.b };
    }
    StWord(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_gives_empty_word() {
        assert!(decompose_st(&UniMatrix::identity()).is_empty());
    }

    #[test]
    fn pure_translation() {
        let m = UniMatrix::from_i64(1, 5, 0, 1);
        let w = decompose_st(&m);
        assert_eq!(w.0, vec![StStep::S(BigInt::from(5))]);
        assert_eq!(w.to_string(), "S^5");
    }

    #[test]
    fn word_display() {
        let w = StWord(vec![
            StStep::S(BigInt::from(5)),
            StStep::T,
            StStep::S(BigInt::from(-2)),
        ]);
        assert_eq!(w.to_string(), "S^5 T S^-2");
    }

    #[test]
    fn round_trip_random_matrices() {
        // 200 random determinant-1 matrices with entries up to 10^6; the
        // oracle is exact multiplication of the emitted word.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let m = random_unimodular(&mut rng, 1_000_000);
            let w = decompose_st(&m);
            let prod = w.multiply();
            assert!(
                prod == m || prod == m.neg(),
                "word {w} multiplies to {prod}, expected +-{m}"
            );
        }
    }

    /// Random determinant-1 matrix built from a random S/T word, entries
    /// capped by `bound`.
    pub(crate) fn random_unimodular(rng: &mut impl Rng, bound: i64) -> UniMatrix {
        let mut m = UniMatrix::identity();
        loop {
            let k: i64 = rng.gen_range(-9..=9);
            let next = if rng.gen_bool(0.5) {
                m.mul(&UniMatrix::s_pow(&BigInt::from(k)))
            } else {
                m.mul(&UniMatrix::t())
            };
            if next.max_entry_abs() > BigInt::from(bound) {
                return m;
            }
            m = next;
        }
    }
}
