//! Here-and-There with constraints: syntax, semantics and program transformations
//! for conditional terms, aggregates and assignment rules.

pub mod checker;
mod error;
pub mod parser;
pub mod semantics;
pub mod syntax;
pub mod transforms;

pub use error::{Error, Result};
