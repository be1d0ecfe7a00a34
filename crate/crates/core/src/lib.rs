//! Algebraic matroids of parametrized affine cones, their joins and secant
//! varieties, and matroid-union checks on them.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactlin`] exact arithmetic over prime fields, the rationals and
//!   polynomial rings, including rank computations.
//! * [`matroid`] rank-oracle matroids, base enumeration, matroid union via
//!   matroid partition, and weak-order comparisons.
//! * [`geometry`] variety specifications, point samplers and Jacobians.
//! * [`polytope`] lattice point sets and translate scans.
//! * [`terracini`] the analysis engine built on top of all of the above.

pub mod error;
pub mod exactlin;
pub mod geometry;
pub mod matroid;
pub mod polytope;
pub mod terracini;

pub use error::{Error, Result};
