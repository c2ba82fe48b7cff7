pub mod divided_difference;
pub mod error;
pub mod maps;
pub mod measure;
pub mod simple_function;
pub mod verifier;

pub use error::{Error, Result};
