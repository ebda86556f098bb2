//! Moebius dynamics on the space of circles for Kleinian groups whose limit
//! sets are circle packings.
//!
//! The crate is organised bottom-up: [`moebius`] holds the group,
//! [`circlespace`] the circles it acts on, [`halfspace`] the hyperbolic
//! geometry behind them, [`packing`] the limit sets, and [`orbits`] and
//! [`recurrence`] the experiments built on top.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod circlespace;
pub mod dedup;
pub mod error;
pub mod fixtures;
pub mod halfspace;
pub mod moebius;
pub mod orbits;
pub mod packing;
pub mod recurrence;
pub mod selftest;
pub mod svg;

pub use error::{Error, Result};

/// Default tolerance for algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-9;
/// Default tolerance for geometric comparisons.
pub const GEOMETRIC_TOL: f64 = 1e-6;
/// Coefficient tolerance for circle equality.
pub const CIRCLE_EQ_TOL: f64 = 1e-7;
/// Grid used to hash circles and maps.
pub const HASH_GRID: f64 = 1e-6;
