//! Compiler and verifier reducing maximum independent set on planar graphs of
//! maximum degree 3 to ground-state problems of Rydberg atom arrays.

pub mod error;
pub mod graph;
pub mod embed;
pub mod series;
pub mod layout;
pub mod energy;
pub mod compile;
pub mod structures;
pub mod verify;

pub use error::{Error, Result};
