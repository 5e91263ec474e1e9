//! Reduced ordered binary decision diagrams with two interchangeable
//! hash-consing backends:
//!
//! - [`pure`]: a persistent [`pure::Store`] threaded explicitly through
//!   every operation, with node ids, an inverse map and memo tables held in
//!   immutable finite maps;
//! - [`interned`]: a mutable [`interned::Manager`] whose unique table gives
//!   each node shape one uid, so equality is a uid comparison.
//!
//! [`oracle`] evaluates formulas and diagrams by brute force and is used to
//! check both. [`frontend`] parses formulas and compiles them into either
//! backend.
//!
//! ```
//! use robdd::frontend::{compile_interned, parse};
//! use robdd::interned::{structural_eq, Manager};
//!
//! let mut m = Manager::new();
//! let f = compile_interned(&parse("x1 ^ x2").unwrap(), &mut m).unwrap();
//! let g = compile_interned(&parse("(x1|x2) & !(x1&x2)").unwrap(), &mut m).unwrap();
//! assert!(structural_eq(f, g));
//! ```

pub mod diagram;
pub mod dot;
mod error;
pub mod formula;
pub mod frontend;
pub mod interned;
pub mod oracle;
pub mod pure;

pub use diagram::{Assignment, BinOp, Node, NodeRef, Stats, Var};
pub use error::{Error, Result};
pub use formula::Formula;
