//! Exact construction and verification of cluster exchange quivers, c-cluster
//! quivers, Cambrian lattices and τ-tilting shadows for finite-type root
//! systems.

pub mod cambrian;
mod error;
pub mod lattice;
pub mod laurent;
pub mod matrix;
pub mod mutation;
pub mod quivers;
pub mod rootsys;
pub mod verify;

pub use error::{Error, Result};
