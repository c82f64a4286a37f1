//! Construction and exhaustive certification of partial difference sets,
//! amorphic Cayley schemes and Paley-Hadamard difference sets in
//! (mostly nonabelian) groups.

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod field;
pub mod groups;
pub mod linalg;
pub mod partition;
pub mod products;
pub mod quadform;

pub use error::{Error, Result};
