//! Text formulas in, BDDs out.

mod compile;
pub mod families;
mod parse;

pub use compile::{compile, compile_interned, compile_pure, Builder, PureBuilder};
pub use parse::{parse, ParseError, ParseErrorKind};
