//! Exact scalars and dense linear algebra.
//!
//! Everything in the crate eventually reduces to ranks, kernels and
//! subspace arithmetic over an exact field; this module is that kernel.

mod matrix;
mod scalar;
mod space;

pub use matrix::Matrix;
pub use scalar::{rational_into, Field, Fp, Rational, Scalar};
pub use space::{
    kernel, preimage, rank, rref, solve_conditions, subspace_intersect, subspace_leq,
    subspace_sum, EchelonBuilder, RowSpace,
};
