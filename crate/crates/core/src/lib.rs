//! Exact verification of argument-shift (Mishchenko-Fomenko) families:
//! polynomials over Q, classical Lie algebras and their centralizers,
//! Groebner bases, and the nilpotent bicone.

pub mod bicone;
pub mod centralizer_lab;
pub mod error;
pub mod exactpoly;
pub mod groebner;
pub mod invariants;
pub mod liealg;
pub mod linalg;
pub mod poisson;
pub mod sampling;
pub mod shift;

pub use error::{Error, PolyError, Result};
