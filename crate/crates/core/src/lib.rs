//! A laboratory for the chain-of-interpreters distance between programs.
//!
//! Programs live in a tiny total language over `Z_m`. An interpreter is a
//! total program transformation that preserves the denoted function on every
//! input program; its cost is the bit length of a fixed self-delimiting
//! encoding, with the identity costing zero. The distance from `p` to `q` is
//! the least bound on the costliest step of any interpreter chain mapping
//! `p` to `q`.

pub mod error;
pub mod harness;
pub mod config;
pub mod lab;
pub mod lang;
pub mod metric;
pub mod transform;

pub use error::{Error, Result};
pub use lab::Lab;
pub use lang::{Modulus, Program};
pub use transform::{Catalog, ComplexityBits, Transformation};
