//! Exact lattice arithmetic for lattice-polarized K3 mirror symmetry and the
//! Borcea-Voisin Calabi-Yau threefolds built from K3 surfaces with involution.
//!
//! Everything is computed with arbitrary-precision integers and exact
//! rationals; no floating point is used anywhere.

pub mod bv;
pub mod catalog;
pub mod census;
pub mod complex;
pub mod error;
pub mod hyperkahler;
pub mod involution;
pub mod json;
pub mod lattice;
pub mod leray;
pub mod mirror_lattice;
pub mod mirror_map;
pub mod period;
pub mod verify;

pub use error::{Error, Result};
