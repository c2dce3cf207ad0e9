//! The self-referential "I am consistent" axiom, realized at the meta level.
//!
//! A template describes the claim "no proof of `C0 = C1` from `system` at
//! `level`" about the object whose code is `diag(h)`, where `diag(h)` fills
//! the template coded by `h` with `h` itself. The record is the template
//! filled with its own code, so `diag` of its stored code is the record's
//! own number.

use alloc::format;
use alloc::string::String;

use crate::enrichment::EnrichmentLevel;
use crate::lang::godel::{CodeReader, CodeWriter, KIND_SELF_REF};
use crate::lang::{encode_nat, godel_decode, Coded, DecodeError, Formula, Godel, GodelNumber};

use super::GeneralizedArithmetic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfRefRecord {
    /// The extended system the claim is about.
    pub system: String,
    /// The system that was extended.
    pub base: String,
    /// The apparatus level the claim quantifies over.
    pub level: EnrichmentLevel,
    /// Code of the template this record fills; `None` for the template itself.
    pub template: Option<GodelNumber>,
}

impl SelfRefRecord {
    pub(crate) fn decode_body(r: &mut CodeReader<'_>) -> Result<SelfRefRecord, DecodeError> {
        let filled = match r.tag()? {
            0 => false,
            1 => true,
            _ => return Err(DecodeError("unknown self-reference form")),
        };
        let system = r.string()?;
        let base = r.string()?;
        let level = decode_level(r)?;
        let template = if filled { Some(GodelNumber(r.big()?)) } else { None };
        Ok(SelfRefRecord { system, base, level, template })
    }

    /// The number the record refers to: the diagonalization of its template
    /// code. `None` if the code is not a template.
    pub fn referenced(&self) -> Option<GodelNumber> {
        diag(self.template.as_ref()?)
    }

    /// The diagonal identity: the record refers to its own number.
    pub fn is_fixed_point(&self) -> bool {
        self.referenced() == Some(self.godel_number())
    }

    /// The L* sentence standing in for this axiom in the basis: a true
    /// identity on the numeral of the record's number, so the basis stays
    /// a set of L* sentences and the checker treats it as a proper axiom.
    pub fn surrogate_sentence(&self) -> Formula {
        let n = encode_nat(&self.godel_number().0);
        Formula::eq(n.clone(), n)
    }

    /// Display form of the asserted content.
    pub fn claim(&self) -> String {
        format!("no proof of C0 = C1 from {} at level {}", self.system, self.level)
    }
}

pub(crate) fn decode_level(r: &mut CodeReader<'_>) -> Result<EnrichmentLevel, DecodeError> {
    Ok(match r.tag()? {
        0 => EnrichmentLevel::None,
        1 => EnrichmentLevel::RankZero,
        2 => EnrichmentLevel::RankZeroPlus,
        3 => EnrichmentLevel::RankK(u32::try_from(r.nat()?).map_err(|_| DecodeError("rank overflow"))?),
        4 => EnrichmentLevel::Infinite,
        _ => return Err(DecodeError("unknown level")),
    })
}

pub(crate) fn encode_level(w: &mut CodeWriter, level: EnrichmentLevel) {
    match level {
        EnrichmentLevel::None => w.tag(0),
        EnrichmentLevel::RankZero => w.tag(1),
        EnrichmentLevel::RankZeroPlus => w.tag(2),
        EnrichmentLevel::RankK(k) => {
            w.tag(3);
            w.nat(k as u64);
        }
        EnrichmentLevel::Infinite => w.tag(4),
    }
}

impl Godel for SelfRefRecord {
    fn godel_number(&self) -> GodelNumber {
        let mut w = CodeWriter::new(KIND_SELF_REF);
        w.tag(self.template.is_some() as u8);
        w.name(&self.system);
        w.name(&self.base);
        encode_level(&mut w, self.level);
        if let Some(t) = &self.template {
            w.big(&t.0);
        }
        w.finish()
    }
}

/// Fills the template coded by `h` with `h` and returns the result's code.
pub fn diag(h: &GodelNumber) -> Option<GodelNumber> {
    match godel_decode(h).ok()? {
        Coded::SelfRef(t) if t.template.is_none() => {
            Some(SelfRefRecord { template: Some(h.clone()), ..t }.godel_number())
        }
        _ => None,
    }
}

/// `α + SelfRef(α, d)`: adds the self-referential axiom as a proper axiom.
pub fn self_ref_extend(g: &GeneralizedArithmetic) -> GeneralizedArithmetic {
    let system = format!("{}+selfref", g.basis.name());
    let template = SelfRefRecord { system: system.clone(), base: g.basis.name().into(), level: g.level, template: None };
    let code = template.godel_number();
    let record = SelfRefRecord { template: Some(code), ..template };
    let sentence = record.surrogate_sentence();
    let basis = g.basis.with_self_ref(system, record, sentence);
    GeneralizedArithmetic { basis, level: g.level }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::relational_arith_basis;

    fn base() -> GeneralizedArithmetic {
        GeneralizedArithmetic { basis: relational_arith_basis(), level: EnrichmentLevel::RankZero }
    }

    #[test]
    fn fixed_point() {
        let ext = self_ref_extend(&base());
        let (_, record) = &ext.basis.self_refs()[0];
        assert!(record.is_fixed_point());
        match godel_decode(&record.godel_number()).unwrap() {
            Coded::SelfRef(r) => {
                assert_eq!(&r, record);
                assert_eq!(r.referenced(), Some(record.godel_number()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn emitted_once_with_base_axioms() {
        let g = base();
        let ext = self_ref_extend(&g);
        assert_eq!(ext.basis.len(), g.basis.len() + 1);
        assert!(g.basis.iter().all(|a| ext.basis.contains(a)));
        let (idx, record) = &ext.basis.self_refs()[0];
        assert_eq!(ext.basis.axiom(*idx), Some(&record.surrogate_sentence()));
    }

    #[test]
    fn twice_gives_distinct_records() {
        let once = self_ref_extend(&base());
        let twice = self_ref_extend(&once);
        let refs = twice.basis.self_refs();
        assert_eq!(refs.len(), 2);
        assert_ne!(refs[0].1.godel_number(), refs[1].1.godel_number());
        assert!(refs.iter().all(|(_, r)| r.is_fixed_point()));
    }
}
