//! Finite Coxeter groups, congruences of the weak order, Cambrian lattices,
//! sortable elements and Cambrian fans.

pub mod cambrian;
pub mod coxeter;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod type_a;

pub use error::{Error, Result};
