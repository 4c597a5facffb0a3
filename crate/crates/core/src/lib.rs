//! Numerical spectral analysis of Klein-Gordon operators in Schrödinger form.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! - [`potentials`]: the one-dimensional von Neumann–Wigner construction, its
//!   printed and derived closed forms, Coulomb effective potentials and
//!   reference wells.
//! - [`conditions`]: numeric checks of the operator hypotheses (the S_λ
//!   criterion, N_{α,δ} seminorms, the Simon conditions for V = V₁ + V₂).
//! - [`spectral`]: finite-difference discretization on truncated domains,
//!   a Sturm-bisection / inverse-iteration eigensolver and a localization
//!   classifier that separates bound states embedded in the discretized
//!   continuum from box modes.
//! - [`kgmap`]: the map Ẽ = E² − m² between Schrödinger and Klein-Gordon
//!   spectra, the self-consistent energy loop for electric potentials,
//!   absence regions and the aggregated audit.
//!
//! File formats, the CLI and threading live in the `kgspec-cli` crate.
#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod conditions;
mod error;
pub mod grid;
pub mod kgmap;
mod math;
pub mod potentials;
pub mod quadrature;
pub mod search;
pub mod spectral;
pub mod tridiag;

pub use error::{Error, Result};
pub use grid::{Grid1D, GridKind};
pub use potentials::{Domain, Potential, PotentialSpec};

/// Crate version embedded in report provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
