//! Monadic second-order logic over finite words.
//!
//! Formulas are parsed from a small surface syntax, checked against a
//! signature of free variables and compiled to minimal DFAs whose tracks
//! carry the values of those variables.

mod ast;
mod compile;
mod parser;

pub use ast::{Cmp, Formula, Sort, Term, Var};
pub use compile::{mso_compile, mso_compile_dfa};
pub use parser::parse_formula;
