pub mod arith;
pub mod cli;
pub mod cones;
pub mod error;
pub mod io;
pub mod lattice;
pub mod zeta;
pub mod suspension;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
