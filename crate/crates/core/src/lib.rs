//! Exact invariants of plane line arrangements and reduced plane curves.
//!
//! The crate is `no_std` (with `alloc`): every computation is a pure
//! function of rational input data.
//!
//! * [`ratlin`]: exact and modular ranks, kernels, echelon forms.
//! * [`graded_poly`]: homogeneous polynomials in `x, y, z`.
//! * [`milnor`]: Hilbert function of the Milnor algebra, syzygy degrees,
//!   freeness, regularity and saturation.
//! * [`lattice`]: intersection lattices, canonical forms and named families.
//! * [`strata`]: incidence systems, stratum and orbit dimensions.

#![no_std]

extern crate alloc;

pub mod error;
pub mod graded_poly;
pub mod lattice;
pub mod milnor;
pub mod ratlin;
pub mod strata;

pub use error::{Error, Result};
