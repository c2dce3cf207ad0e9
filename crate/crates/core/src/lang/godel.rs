//! Gödel numbering.
//!
//! An object is serialized to a prefix-free stream of tagged symbols: each
//! constructor writes a one-byte tag followed by its fields in order,
//! naturals as LEB128 varints and names as length-prefixed bytes. The stream
//! is preceded by a non-zero kind byte and read as a big-endian base-256
//! natural, so the numbering is injective and decoding is exact.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::syntax::{Atom, Constant, Formula, Func, Rel, Symbol, Term};
use crate::systems::SelfRefRecord;
use crate::tableaux::Proof;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelNumber(pub BigUint);

impl fmt::Display for GodelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) const KIND_FORMULA: u8 = 1;
pub(crate) const KIND_PROOF: u8 = 2;
pub(crate) const KIND_SELF_REF: u8 = 3;

/// The object a Gödel number decodes to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coded {
    Formula(Formula),
    Proof(Proof),
    SelfRef(SelfRefRecord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeError(pub &'static str);

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a valid code: {}", self.0)
    }
}

impl core::error::Error for DecodeError {}

/// Symbol-stream writer shared by every encodable object.
pub struct CodeWriter {
    buf: Vec<u8>,
}

impl CodeWriter {
    pub fn new(kind: u8) -> Self {
        CodeWriter { buf: alloc::vec![kind] }
    }

    pub fn tag(&mut self, t: u8) {
        self.buf.push(t);
    }

    pub fn nat(&mut self, mut n: u64) {
        loop {
            let byte = (n & 0x7f) as u8;
            n >>= 7;
            if n == 0 {
                self.buf.push(byte);
                return;
            }
            self.buf.push(byte | 0x80);
        }
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.nat(b.len() as u64);
        self.buf.extend_from_slice(b);
    }

    pub fn name(&mut self, s: &str) {
        self.bytes(s.as_bytes());
    }

    pub fn big(&mut self, n: &BigUint) {
        self.bytes(&n.to_bytes_be());
    }

    pub fn term(&mut self, t: &Term) {
        match t {
            Term::Const(c) => self.tag(1 + c.value() as u8),
            Term::Var(v) => {
                self.tag(4);
                self.name(v);
            }
            Term::Param(p) => {
                self.tag(5);
                self.name(p);
            }
            Term::App(f, args) => {
                let idx = Func::ALL.iter().position(|g| g == f).expect("known function");
                self.tag(16 + idx as u8);
                args.iter().for_each(|a| self.term(a));
            }
        }
    }

    pub fn formula(&mut self, f: &Formula) {
        match f {
            Formula::Atom(a) => {
                self.tag(1);
                self.term(&a.lhs);
                self.tag(match a.rel {
                    Rel::Eq => 0,
                    Rel::Le => 1,
                });
                self.term(&a.rhs);
            }
            Formula::Not(g) => {
                self.tag(2);
                self.formula(g);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.tag(match f {
                    Formula::And(..) => 3,
                    Formula::Or(..) => 4,
                    _ => 5,
                });
                self.formula(a);
                self.formula(b);
            }
            Formula::ForAll(v, b) | Formula::Exists(v, b) => {
                self.tag(if matches!(f, Formula::ForAll(..)) { 6 } else { 7 });
                self.name(v);
                self.formula(b);
            }
            Formula::BoundedForAll(v, t, b) | Formula::BoundedExists(v, t, b) => {
                self.tag(if matches!(f, Formula::BoundedForAll(..)) { 8 } else { 9 });
                self.name(v);
                self.term(t);
                self.formula(b);
            }
        }
    }

    pub fn finish(self) -> GodelNumber {
        GodelNumber(BigUint::from_bytes_be(&self.buf))
    }
}

pub struct CodeReader<'a> {
    buf: &'a [u8],
    pos: usize,
}

type R<T> = Result<T, DecodeError>;

impl<'a> CodeReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        CodeReader { buf, pos: 0 }
    }

    pub fn tag(&mut self) -> R<u8> {
        let b = *self.buf.get(self.pos).ok_or(DecodeError("truncated"))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn nat(&mut self) -> R<u64> {
        let mut out = 0u64;
        for shift in (0..64).step_by(7) {
            let b = self.tag()?;
            let low = (b & 0x7f) as u64;
            if shift == 63 && low > 1 {
                return Err(DecodeError("varint overflow"));
            }
            out |= low << shift;
            if b & 0x80 == 0 {
                if b == 0 && shift > 0 {
                    return Err(DecodeError("non-canonical varint"));
                }
                return Ok(out);
            }
        }
        Err(DecodeError("varint overflow"))
    }

    pub fn bytes(&mut self) -> R<&'a [u8]> {
        let n = self.nat()? as usize;
        let end = self.pos.checked_add(n).ok_or(DecodeError("length overflow"))?;
        let s = self.buf.get(self.pos..end).ok_or(DecodeError("truncated"))?;
        self.pos = end;
        Ok(s)
    }

    pub fn name(&mut self) -> R<Symbol> {
        let b = self.bytes()?;
        let s = core::str::from_utf8(b).map_err(|_| DecodeError("bad utf-8 name"))?;
        Ok(Symbol::from(s))
    }

    pub fn string(&mut self) -> R<String> {
        Ok(String::from(&*self.name()?))
    }

    pub fn big(&mut self) -> R<BigUint> {
        let b = self.bytes()?;
        if b.first() == Some(&0) {
            return Err(DecodeError("non-canonical natural"));
        }
        Ok(BigUint::from_bytes_be(b))
    }

    pub fn term(&mut self) -> R<Term> {
        Ok(match self.tag()? {
            1 => Term::Const(Constant::C0),
            2 => Term::Const(Constant::C1),
            3 => Term::Const(Constant::C2),
            4 => Term::Var(self.name()?),
            5 => Term::Param(self.name()?),
            t if (16..26).contains(&t) => {
                let f = Func::ALL[(t - 16) as usize];
                let mut args = Vec::with_capacity(f.arity());
                for _ in 0..f.arity() {
                    args.push(self.term()?);
                }
                Term::App(f, args)
            }
            _ => return Err(DecodeError("unknown term tag")),
        })
    }

    pub fn formula(&mut self) -> R<Formula> {
        Ok(match self.tag()? {
            1 => {
                let lhs = self.term()?;
                let rel = match self.tag()? {
                    0 => Rel::Eq,
                    1 => Rel::Le,
                    _ => return Err(DecodeError("unknown relation")),
                };
                let rhs = self.term()?;
                Formula::Atom(Atom { lhs, rel, rhs })
            }
            2 => Formula::Not(Arc::new(self.formula()?)),
            3 => Formula::And(Arc::new(self.formula()?), Arc::new(self.formula()?)),
            4 => Formula::Or(Arc::new(self.formula()?), Arc::new(self.formula()?)),
            5 => Formula::Implies(Arc::new(self.formula()?), Arc::new(self.formula()?)),
            6 => Formula::ForAll(self.name()?, Arc::new(self.formula()?)),
            7 => Formula::Exists(self.name()?, Arc::new(self.formula()?)),
            8 => Formula::BoundedForAll(self.name()?, self.term()?, Arc::new(self.formula()?)),
            9 => Formula::BoundedExists(self.name()?, self.term()?, Arc::new(self.formula()?)),
            _ => return Err(DecodeError("unknown formula tag")),
        })
    }

    pub fn finish(self) -> R<()> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(DecodeError("trailing symbols"))
        }
    }
}

/// Anything with a Gödel number.
pub trait Godel {
    fn godel_number(&self) -> GodelNumber;
}

impl Godel for Formula {
    fn godel_number(&self) -> GodelNumber {
        let mut w = CodeWriter::new(KIND_FORMULA);
        w.formula(self);
        w.finish()
    }
}

pub fn godel_number<T: Godel + ?Sized>(x: &T) -> GodelNumber {
    x.godel_number()
}

pub fn godel_decode(g: &GodelNumber) -> Result<Coded, DecodeError> {
    let bytes = g.0.to_bytes_be();
    let mut r = CodeReader::new(&bytes);
    let coded = match r.tag()? {
        KIND_FORMULA => Coded::Formula(r.formula()?),
        KIND_PROOF => Coded::Proof(Proof::decode_body(&mut r)?),
        KIND_SELF_REF => Coded::SelfRef(SelfRefRecord::decode_body(&mut r)?),
        _ => return Err(DecodeError("unknown object kind")),
    };
    r.finish()?;
    Ok(coded)
}

/// Decodes a number that must denote a formula.
pub fn decode_formula(g: &GodelNumber) -> Result<Formula, DecodeError> {
    match godel_decode(g)? {
        Coded::Formula(f) => Ok(f),
        _ => Err(DecodeError("not a formula code")),
    }
}
