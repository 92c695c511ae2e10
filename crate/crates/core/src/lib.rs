//! Exact, degreewise verification of the algebra of fold products of
//! linear forms: ideals `I_a(Σ)` generated by `a`-fold products, their
//! primary decompositions and saturations, Betti tables and linear
//! resolutions, star configurations with their symbolic and ordinary
//! powers, and resurgence.

pub mod betti;
pub mod check;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod fold;
pub mod linalg;
pub mod poly;
pub mod sigma;
pub mod star;

pub use error::{AlgebraError, Result};
