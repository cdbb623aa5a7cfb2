//! Factor complexity, factor frequencies and labeled Rauzy graphs of
//! infinite words, with exact arithmetic wherever the word allows it.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod factors;
pub mod frequency;
pub mod linalg;
pub mod qnum;
pub mod rauzy;
pub mod words;

pub use error::{Error, Result};
pub use qnum::QuadraticNumber;
