//! Recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! formula := "A" var ("<=" term)? "." formula | "E" var ("<=" term)? "." formula
//!          | formula binop formula | "~" formula | "(" formula ")" | atom
//! binop   := "&" | "|" | "->"      (~ > & > | > ->; -> is right associative)
//! atom    := term ("=" | "<=") term
//! term    := "C0" | "C1" | "C2" | var | param | term "+" term | "(" term ")"
//!          | fn "(" term ("," term)? ")"
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::syntax::{Constant, Formula, Func, Quantifier, Rel, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownSymbol(String),
    Arity { func: &'static str, expected: usize, found: usize },
    /// A `#name` parameter in input that must not contain parameters.
    ParameterNotAllowed(String),
    /// The bound term of a bounded quantifier mentions the bound variable.
    BoundMentionsVariable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => write!(f, "expected {expected}, found {found:?}"),
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol {s:?}"),
            ParseErrorKind::Arity { func, expected, found } => {
                write!(f, "{func} takes {expected} argument(s), found {found}")
            }
            ParseErrorKind::ParameterNotAllowed(p) => write!(f, "parameter #{p} is not allowed here"),
            ParseErrorKind::BoundMentionsVariable(v) => write!(f, "bound of quantifier over {v} mentions {v}"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Upper(String),
    Param(String),
    Dot,
    Comma,
    LParen,
    RParen,
    Eq,
    Le,
    Plus,
    Not,
    And,
    Or,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Upper(s) => s.clone(),
            Tok::Param(s) => alloc::format!("#{s}"),
            Tok::Dot => ".".into(),
            Tok::Comma => ",".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Eq => "=".into(),
            Tok::Le => "<=".into(),
            Tok::Plus => "+".into(),
            Tok::Not => "~".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Arrow => "->".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize)), ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let err = |kind| ParseError { kind, line: tl, column: tc };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '.' => Tok::Dot,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            '+' => Tok::Plus,
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '<' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Tok::Le
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '#' => {
                let mut j = i + 1;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                if j == i + 1 {
                    return Err(err(ParseErrorKind::UnexpectedChar('#')));
                }
                let name: String = chars[i + 1..j].iter().collect();
                i = j - 1;
                Tok::Param(name)
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                if c.is_ascii_lowercase() {
                    Tok::Ident(word)
                } else {
                    Tok::Upper(word)
                }
            }
            other => return Err(err(ParseErrorKind::UnexpectedChar(other))),
        };
        i += 1;
        col += i - start;
        out.push(Spanned { tok, line: tl, column: tc });
    }
    Ok((out, (line, col)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    allow_params: bool,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(s) => (s.line, s.column),
            None => self.end,
        };
        ParseError { kind, line, column }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error_here(ParseErrorKind::UnexpectedToken { found: t.describe(), expected }),
            None => self.error_here(ParseErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Upper(k)) if k == "A" || k == "E" => {
                let q = if k == "A" { Quantifier::All } else { Quantifier::Ex };
                self.pos += 1;
                self.quantifier(q)
            }
            Some(Tok::LParen) => {
                let save = self.pos;
                self.pos += 1;
                if let Ok(f) = self.formula() {
                    if self.peek() == Some(&Tok::RParen)
                        && !matches!(self.peek_at(1), Some(Tok::Eq | Tok::Le | Tok::Plus))
                    {
                        self.pos += 1;
                        return Ok(f);
                    }
                }
                self.pos = save;
                self.atom()
            }
            _ => self.atom(),
        }
    }

    fn quantifier(&mut self, q: Quantifier) -> Result<Formula, ParseError> {
        let var = match self.peek() {
            Some(Tok::Ident(v)) if Func::from_name(v).is_none() => Symbol::from(v.as_str()),
            Some(Tok::Ident(v)) => return Err(self.error_here(ParseErrorKind::UnknownSymbol(v.clone()))),
            _ => return Err(self.unexpected("a variable")),
        };
        self.pos += 1;
        let bound = if self.peek() == Some(&Tok::Le) {
            self.pos += 1;
            let t = self.term()?;
            if t.contains_var(&var) {
                return Err(self.error_here(ParseErrorKind::BoundMentionsVariable(var.to_string())));
            }
            Some(t)
        } else {
            None
        };
        self.expect(Tok::Dot, "\".\"")?;
        let body = self.formula()?;
        Ok(Formula::quantified(q, var, bound, alloc::sync::Arc::new(body)))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        let rel = match self.peek() {
            Some(Tok::Eq) => Rel::Eq,
            Some(Tok::Le) => Rel::Le,
            _ => return Err(self.unexpected("\"=\" or \"<=\"")),
        };
        self.pos += 1;
        let rhs = self.term()?;
        Ok(Formula::atom(lhs, rel, rhs))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.primary()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.primary()?;
            acc = Term::add(acc, rhs);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.unexpected("a term")),
        };
        match tok {
            Tok::LParen => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(t)
            }
            Tok::Upper(word) => {
                let c = match word.as_str() {
                    "C0" => Constant::C0,
                    "C1" => Constant::C1,
                    "C2" => Constant::C2,
                    _ => return Err(self.error_here(ParseErrorKind::UnknownSymbol(word))),
                };
                self.pos += 1;
                Ok(Term::Const(c))
            }
            Tok::Param(name) => {
                if !self.allow_params {
                    return Err(self.error_here(ParseErrorKind::ParameterNotAllowed(name)));
                }
                self.pos += 1;
                Ok(Term::Param(Symbol::from(name.as_str())))
            }
            Tok::Ident(name) => {
                if self.peek_at(1) == Some(&Tok::LParen) {
                    let func = Func::from_name(&name)
                        .ok_or_else(|| self.error_here(ParseErrorKind::UnknownSymbol(name.clone())))?;
                    let at = self.pos;
                    self.pos += 2;
                    let mut args = alloc::vec![self.term()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.term()?);
                    }
                    self.expect(Tok::RParen, "\")\" or \",\"")?;
                    if args.len() != func.arity() {
                        let s = &self.toks[at];
                        return Err(ParseError {
                            kind: ParseErrorKind::Arity { func: func.name(), expected: func.arity(), found: args.len() },
                            line: s.line,
                            column: s.column,
                        });
                    }
                    Ok(Term::App(func, args))
                } else if Func::from_name(&name).is_some() {
                    Err(self.error_here(ParseErrorKind::UnknownSymbol(name)))
                } else {
                    self.pos += 1;
                    Ok(Term::Var(Symbol::from(name.as_str())))
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

fn run<T>(text: &str, allow_params: bool, f: impl FnOnce(&mut Parser) -> Result<T, ParseError>) -> Result<T, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, pos: 0, end, allow_params };
    let out = f(&mut p)?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(out)
}

/// Parses user input. Parameter symbols are rejected.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    run(text, false, Parser::formula)
}

/// Parses a formula that may mention `#name` parameters, as found in the
/// sentences of stored proofs.
pub fn parse_formula_with_params(text: &str) -> Result<Formula, ParseError> {
    run(text, true, Parser::formula)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    run(text, false, Parser::term)
}

pub fn parse_term_with_params(text: &str) -> Result<Term, ParseError> {
    run(text, true, Parser::term)
}
