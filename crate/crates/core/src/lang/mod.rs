//! The toy total language: tokens, syntax, semantics and the canonical
//! enumeration that serves as the program numbering.

pub mod enumerate;
pub mod semantics;
pub mod syntax;
pub mod token;

pub use enumerate::{Enumeration, ProgramIndex, DEFAULT_CEILING};
pub use semantics::{equivalent, evaluate, table, FunctionTable};
pub use syntax::{Body, Expr, Modulus, Numeral, Op, Program, Selector, Split};
pub use token::{Token, INACTIVE_TOKENS};
