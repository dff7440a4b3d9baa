//! Orbit parameters of symmetric subgroups on flag schemes over `Z[1/2]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`dyadic`]: exact arithmetic over `Z[1/2]` and `Z[1/2, sqrt(-1)]`, matrices,
//!   involutions and extraction of Weyl classes from monomial matrices.
//! * [`weyl`]: classical Weyl groups as signed permutation groups.
//! * [`twisted`]: twisted involutions, the monoid action and the Springer image.
//! * [`tori`]: classification of θ-stable maximal torus classes.
//! * [`catalog`]: the standard symmetric pairs as data, with a matrix verifier.
//! * [`descent`]: Galois involutions on parameter sets and fields of definition.
//! * [`cli`]: rendering used by the `orbitdescent` binary.

pub mod catalog;
pub mod cli;
pub mod descent;
pub mod dyadic;
mod error;
pub mod tori;
pub mod twisted;
pub mod weyl;

pub use error::{Error, Result};
