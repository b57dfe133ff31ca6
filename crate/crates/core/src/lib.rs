pub mod divisor;
pub mod edwards;
pub mod error;
pub mod family;
pub mod field;
pub mod json;
pub mod kummer;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod proj;

pub use error::{Error, Result};
