pub mod algebra;
pub mod constraints;
pub mod diffform;
mod error;
pub mod positivity;
pub mod reduction;
pub mod selftest;

pub use error::{Error, Result};
