pub mod arith;
pub mod curve;
pub mod descent;
pub mod error;
pub mod local;
pub mod mersenne;
pub mod parity;
pub mod pipeline;

pub use error::{Error, Result};
