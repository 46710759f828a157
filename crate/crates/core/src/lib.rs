//! Executable constructions around growth and amenability of group
//! algebras: word metrics and dead ends, crystal/Hecke deformations,
//! rank defects over finite fields, augmentation filtrations, tiling
//! certificates and Golod–Shafarevich checks.

pub mod error;
pub mod filtration;
pub mod group;
pub mod gs;
pub mod hecke;
pub mod linalg;
pub mod rewriting;
pub mod report;
pub mod ring;
pub mod subspace;
pub mod tiling;

pub use error::{Error, Result};
