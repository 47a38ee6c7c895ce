//! Exact rational and cyclotomic arithmetic, the Galois coefficient action,
//! and the second Bernoulli polynomial.

mod cyclo;
mod poly;
pub mod rational;
mod roots;

pub use cyclo::{as_unit_times_rational, norm_to_real, CycloNumber};
pub use poly::euler_phi;
pub use rational::{bernoulli2, frac_mod_one, rat, rat_from_str, rat_int, rat_to_string, Rat};
pub use roots::{e, RootOfUnity};
