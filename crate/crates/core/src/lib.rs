//! Degenerate Whittaker coefficients of spherical Eisenstein series on split
//! simply-laced groups, computed as exact symbolic expressions in the
//! Eisenstein parameter `s`.
//!
//! The crate is organized bottom-up:
//!
//! * [`rootsys`]: root systems of types A, D, E with exact rational data;
//! * [`weyl`]: Weyl group elements and minimal coset representatives;
//! * [`symzeta`]: products of completed zeta factors and Whittaker blocks;
//! * [`reduction`]: the coset-sum reduction to generic Whittaker
//!   coefficients on the subgroup cut out by the character support;
//! * [`numeval`]: floating-point evaluation of the symbolic output;
//! * [`orbits`]: nilpotent orbits and Whittaker-pair linear algebra.

pub mod affine;
pub mod numeval;
pub mod orbits;
pub mod par;
pub mod reduction;
pub mod rootsys;
pub mod symzeta;
pub mod weyl;

pub use affine::{AffineArg, Q};
pub use par::Execution;
pub use rootsys::{Node, RootSystem, Series};
