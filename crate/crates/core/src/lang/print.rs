//! Canonical text rendering.
//!
//! Precedence, loosest first: `->` (right associative), `|`, `&`, then the
//! prefix forms `~`, quantifiers and atoms. A quantifier body extends as far
//! right as possible, so a quantifier that is followed by more text is
//! parenthesized.

use core::fmt::{self, Write};

use super::syntax::{Formula, Func, Term};

pub(crate) fn write_term<W: Write>(w: &mut W, t: &Term) -> fmt::Result {
    match t {
        Term::Const(c) => w.write_str(c.name()),
        Term::Var(v) => w.write_str(v),
        Term::Param(p) => write!(w, "#{p}"),
        Term::App(Func::Add, args) => {
            write_term(w, &args[0])?;
            w.write_str(" + ")?;
            if matches!(&args[1], Term::App(Func::Add, _)) {
                w.write_char('(')?;
                write_term(w, &args[1])?;
                w.write_char(')')
            } else {
                write_term(w, &args[1])
            }
        }
        Term::App(f, args) => {
            w.write_str(f.name())?;
            w.write_char('(')?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    w.write_str(", ")?;
                }
                write_term(w, a)?;
            }
            w.write_char(')')
        }
    }
}

const PREC_IMPLIES: u8 = 0;
const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_PREFIX: u8 = 3;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_PREFIX,
    }
}

pub(crate) fn write_formula<W: Write>(w: &mut W, f: &Formula) -> fmt::Result {
    write_at(w, f, PREC_IMPLIES, true)
}

/// `min_prec` is the loosest operator allowed unparenthesized here; `tail`
/// says whether nothing follows this formula in the enclosing text.
fn write_at<W: Write>(w: &mut W, f: &Formula, min_prec: u8, tail: bool) -> fmt::Result {
    let needs_parens = precedence(f) < min_prec || (f.as_quantifier().is_some() && !tail);
    if needs_parens {
        w.write_char('(')?;
        write_bare(w, f, true)?;
        w.write_char(')')
    } else {
        write_bare(w, f, tail)
    }
}

fn write_bare<W: Write>(w: &mut W, f: &Formula, tail: bool) -> fmt::Result {
    match f {
        Formula::Atom(a) => {
            write_term(w, &a.lhs)?;
            write!(w, " {} ", a.rel.symbol())?;
            write_term(w, &a.rhs)
        }
        Formula::Not(g) => {
            w.write_char('~')?;
            match &**g {
                Formula::Not(_) => write_at(w, g, PREC_PREFIX, tail),
                g if g.as_quantifier().is_some() => write_at(w, g, PREC_PREFIX, tail),
                g => {
                    w.write_char('(')?;
                    write_bare(w, g, true)?;
                    w.write_char(')')
                }
            }
        }
        Formula::And(a, b) => {
            write_at(w, a, PREC_AND, false)?;
            w.write_str(" & ")?;
            write_at(w, b, PREC_AND + 1, tail)
        }
        Formula::Or(a, b) => {
            write_at(w, a, PREC_OR, false)?;
            w.write_str(" | ")?;
            write_at(w, b, PREC_OR + 1, tail)
        }
        Formula::Implies(a, b) => {
            write_at(w, a, PREC_IMPLIES + 1, false)?;
            w.write_str(" -> ")?;
            write_at(w, b, PREC_IMPLIES, tail)
        }
        _ => {
            let (q, v, bound, body) = f.as_quantifier().expect("quantifier");
            w.write_str(match q {
                super::syntax::Quantifier::All => "A ",
                super::syntax::Quantifier::Ex => "E ",
            })?;
            w.write_str(v)?;
            if let Some(t) = bound {
                w.write_str(" <= ")?;
                write_term(w, t)?;
            }
            w.write_str(". ")?;
            write_at(w, body, PREC_IMPLIES, true)
        }
    }
}

/// Canonical text of a formula. `parse_formula(print_formula(f)) == f`.
pub fn print_formula(f: &Formula) -> alloc::string::String {
    alloc::format!("{f}")
}

pub fn print_term(t: &Term) -> alloc::string::String {
    alloc::format!("{t}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::syntax::Constant;

    #[test]
    fn prints_smallest_atom() {
        let f = Formula::eq(Constant::C0.into(), Constant::C0.into());
        assert_eq!(print_formula(&f), "C0 = C0");
    }

    #[test]
    fn prints_bounded_forall() {
        let f = Formula::bounded_forall("x", Constant::C2.into(), Formula::le(Term::var("x"), Constant::C2.into()));
        assert_eq!(print_formula(&f), "A x <= C2. x <= C2");
    }

    #[test]
    fn quantifier_on_the_left_is_parenthesized() {
        let q = Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")));
        let p = Formula::eq(Constant::C0.into(), Constant::C1.into());
        assert_eq!(print_formula(&Formula::and(q.clone(), p.clone())), "(A x. x = x) & C0 = C1");
        assert_eq!(print_formula(&Formula::and(p, q)), "C0 = C1 & A x. x = x");
    }

    #[test]
    fn right_nested_sum_keeps_parentheses() {
        let t = Term::add(Term::var("x"), Term::add(Term::var("y"), Term::var("z")));
        assert_eq!(print_term(&t), "x + (y + z)");
        let t = Term::add(Term::add(Term::var("x"), Term::var("y")), Term::var("z"));
        assert_eq!(print_term(&t), "x + y + z");
    }
}
