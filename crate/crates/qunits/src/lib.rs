//! Exact computation with congruence subgroups of the modular group and with
//! modular units given by q-expansions.
//!
//! The crate is organized around six layers:
//!
//! - [`arith`]: exact rationals, cyclotomic numbers in canonical form, roots
//!   of unity, and the second Bernoulli polynomial.
//! - [`psl2`]: the modular group PSL2(Z), principal congruence subgroups,
//!   coset representatives, S/T word decomposition, and Schreier generators
//!   for finite-index subgroups given by a membership oracle.
//! - [`cusps`]: cusp equivalence, fan widths, and the conductor both as an
//!   lcm of fan widths and as a kernel-containment scan at a fixed modulus.
//! - [`qseries`]: truncated Puiseux-style q-expansions with exact cyclotomic
//!   coefficients, including canonical p-th roots and numeric evaluation.
//! - [`units`]: Siegel functions as formal products with slash action and
//!   exact multiplier bookkeeping, Dedekind eta powers, the j-function, and
//!   the square root of j - 1728.
//! - [`level`]: the level harness for p-th roots of modular units: the root
//!   ambiguity character, its kernel subgroup, and the N vs pN dichotomy.
//!
//! All values are immutable after construction and all operations are pure;
//! internal memo tables sit behind locks and produce deterministic results,
//! so everything can be used from concurrent contexts.

pub mod arith;
pub mod cusps;
pub mod error;
pub mod level;
pub mod psl2;
pub mod qseries;
pub mod units;

pub use error::{Error, Result};
