//! The language: syntax, text form, numerals and Gödel numbering.

mod encode;
pub mod godel;
mod parse;
mod print;
mod syntax;

pub use encode::{add_rel, add_rel_literal, double_iter, encode_nat, encode_u64, mult_rel};
pub use godel::{decode_formula, godel_decode, godel_number, Coded, DecodeError, Godel, GodelNumber};
pub use parse::{parse_formula, parse_formula_with_params, parse_term, parse_term_with_params, ParseError, ParseErrorKind};
pub use print::{print_formula, print_term};
pub use syntax::{Atom, Constant, Formula, Func, Quantifier, Rel, Symbol, Term};

/// Free variables of a formula; see [`Formula::free_vars`].
pub fn free_vars(f: &Formula) -> alloc::collections::BTreeSet<Symbol> {
    f.free_vars()
}
