pub mod bases;
pub mod cli;
pub mod error;
pub mod fock;
pub mod json;
pub mod linalg;
pub mod ncpoly;
pub mod projections;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
