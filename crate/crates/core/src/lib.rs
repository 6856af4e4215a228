//! Exact root-system combinatorics for equal-rank reductive pairs and finite
//! order inner automorphisms: multiplets, signed dimension sums, the very
//! strange formula and truncated affine character identities.

pub mod affine;
pub mod asdim;
pub mod error;
pub mod fin_multiplets;
pub mod pairs;
pub mod rootsys;
pub mod scalar;
pub mod twisted;
pub mod weight;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
pub use weight::Weight;
