//! Numerical library for the discrete-time Euler top and its geometry.
//!
//! The discrete flow is an explicit birational map on R^3 conserving three
//! rational quantities whose level sets are quadric cylinders. The orbit
//! lives on the base curve cut out by those cylinders, which this crate
//! parameterizes by Jacobi elliptic functions; each step of the flow is a
//! fixed phase shift. The same step also factors into pairs of involutions
//! acting along the rulings of hyperboloids from the pencil through the base
//! curve, both over the reals and on the complexified curve. Every module
//! exposes one representation, and the test suites check them against each
//! other.

pub mod complex_curve;
pub mod curve;
pub mod dynamics;
pub mod elliptic;
mod error;
pub mod involution;
pub mod pencil;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
