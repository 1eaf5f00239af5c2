//! Rovibrational structure, dynamic polarizabilities and magic trapping
//! conditions for a ground-state diatomic polar molecule.
//!
//! Internal working units are atomic units (Hartree, bohr, electron mass,
//! e·a₀) except for the hyperfine module, which works in MHz and
//! Hz/(W/cm²) like the spectroscopic constants it consumes. Conversions to
//! laboratory units go through [`units::convert`].

pub mod angular;
pub mod constants;
pub mod error;
pub mod hyperfine;
pub mod magic;
pub mod polarizability;
pub mod potentials;
pub mod radial;
pub mod roots;
pub mod surrogate;
pub mod units;

pub use error::{Error, Result};
