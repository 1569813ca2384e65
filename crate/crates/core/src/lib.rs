//! Finite-algebra engine for first-species counterpoint.
//!
//! The crate codifies the strict-style progression rules over integer pitch
//! space ([`strict`]), reduces them modulo the octave ([`reduction`]), and
//! implements the symmetry-based counterpoint model over `Z_n[ε]` and
//! `Z_n[χ]` together with its local-global variations ([`model`]).
//! [`compare`] cross-tabulates the two.

pub mod cli;
pub mod compare;
pub mod config;
pub mod dichotomy;
pub mod dual;
pub mod error;
pub mod model;
pub mod reduction;
pub mod report;
pub mod ring;
pub mod scale;
pub mod strict;
pub mod verify;

pub use dichotomy::Dichotomy;
pub use dual::{DualNumber, DualSet, DualSymmetry, Flavor};
pub use error::{Error, Result};
pub use ring::{AffineSymmetry, Residue};
