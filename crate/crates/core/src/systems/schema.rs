//! Meta-level schema records. `Prf` and `Pair` are realized by the native
//! checker and decoder, not as L* formulas.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::lang::{parse_formula, Formula, Godel, GodelNumber};
use crate::prenex::classify;
use crate::tableaux::{check_proof, Proof};

use super::{consistency_search, pair_meta, prf_meta, ConsistencyMode, GeneralizedArithmetic, SelfRefRecord};

pub const META_NOTE: &str = "meta-level: Prf and Pair are decided by the proof checker and the Godel decoder";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaKind {
    Group2 { code: GodelNumber, phi: Formula },
    Group3 { system: String },
    SelfRef { system: String },
}

/// A contradictory pair certified against the Group-3 shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub x: GodelNumber,
    pub y: GodelNumber,
    pub p: Proof,
    pub q: Proof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaRecord {
    pub kind: SchemaKind,
    pub display: String,
    pub note: &'static str,
    pub witness: Option<Proof>,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemaError {
    NotPi1,
    InvalidProof,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaError::NotPi1 => write!(f, "sentence is not Pi(1) or lower"),
            SchemaError::InvalidProof => write!(f, "proof does not check for this sentence"),
        }
    }
}

impl core::error::Error for SchemaError {}

fn group2_display(code: &GodelNumber, phi: &Formula) -> String {
    format!("A p. {{ Prf({code}, p) -> {phi} }}")
}

/// Reads back a Group-2 display form.
pub fn parse_group2_display(text: &str) -> Option<(GodelNumber, Formula)> {
    let rest = text.strip_prefix("A p. { Prf(")?;
    let (digits, rest) = rest.split_once(", p) -> ")?;
    let body = rest.strip_suffix(" }")?;
    let code = GodelNumber(digits.parse().ok()?);
    Some((code, parse_formula(body).ok()?))
}

/// `∀p { Prf(⌈Φ⌉, p) → Φ }` for a `Π_1` sentence with a checked proof.
pub fn group2_record(g: &GeneralizedArithmetic, phi: &Formula, proof: &Proof) -> Result<SchemaRecord, SchemaError> {
    if !phi.is_sentence() || !classify(phi).is_ok_and(|c| c.is_pi(1)) {
        return Err(SchemaError::NotPi1);
    }
    if proof.goal != *phi || !check_proof(proof, &g.basis, g.level).is_valid() {
        return Err(SchemaError::InvalidProof);
    }
    let code = phi.godel_number();
    Ok(SchemaRecord {
        display: group2_display(&code, phi),
        kind: SchemaKind::Group2 { code, phi: phi.clone() },
        note: META_NOTE,
        witness: Some(proof.clone()),
        violation: None,
    })
}

/// `∀x ∀y ∀p ∀q ¬[Pair(x,y) ∧ Prf(x,p) ∧ Prf(y,q)]`, checked by a bounded
/// Level(1) search; a certified witness is recorded as a violation.
pub fn group3_record(g: &GeneralizedArithmetic, budget: u64) -> SchemaRecord {
    let system = g.basis.name().to_string();
    let violation = consistency_search(g, ConsistencyMode::Level(1), budget)
        .refutation()
        .and_then(|r| {
            let (x, y) = r.pair.clone()?;
            let q = r.negation_proof.clone()?;
            let certified = pair_meta(&x, &y) && prf_meta(g, &x, &r.proof) && prf_meta(g, &y, &q);
            certified.then(|| Violation { x, y, p: r.proof.clone(), q })
        });
    SchemaRecord {
        display: format!("A x. A y. A p. A q. ~[ Pair(x, y) & Prf[{system}](x, p) & Prf[{system}](y, q) ]"),
        kind: SchemaKind::Group3 { system },
        note: META_NOTE,
        witness: None,
        violation,
    }
}

impl SelfRefRecord {
    pub fn schema(&self) -> SchemaRecord {
        SchemaRecord {
            display: format!("SelfRef[{}]: {} (code {})", self.system, self.claim(), self.godel_number()),
            kind: SchemaKind::SelfRef { system: self.system.clone() },
            note: META_NOTE,
            witness: None,
            violation: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrichment::EnrichmentLevel;
    use crate::systems::AxiomBasis;
    use crate::tableaux::prove;

    fn sys(axioms: &[&str]) -> GeneralizedArithmetic {
        let axioms = axioms.iter().map(|s| parse_formula(s).unwrap()).collect();
        GeneralizedArithmetic { basis: AxiomBasis::new("t", axioms), level: EnrichmentLevel::None }
    }

    #[test]
    fn group2_round_trip() {
        let g = sys(&["A x. x <= double(x)"]);
        let phi = parse_formula("A x. x <= double(x)").unwrap();
        let proof = prove(&phi, &g.basis, g.level, 1000).unwrap().proof;
        let rec = group2_record(&g, &phi, &proof).unwrap();
        let SchemaKind::Group2 { code, .. } = &rec.kind else { panic!() };
        assert_eq!(*code, phi.godel_number());
        let (c, f) = parse_group2_display(&rec.display).unwrap();
        assert_eq!((c.clone(), f.clone()), (code.clone(), phi.clone()));
        assert_eq!(group2_display(&c, &f), rec.display);
    }

    #[test]
    fn group2_rejects_sigma2() {
        let g = sys(&["E a. A b. a <= b"]);
        let phi = parse_formula("E a. A b. a <= b").unwrap();
        let proof = prove(&phi, &g.basis, g.level, 1000).unwrap().proof;
        assert_eq!(group2_record(&g, &phi, &proof), Err(SchemaError::NotPi1));
    }

    #[test]
    fn group3_violation_only_when_inconsistent() {
        let bad = group3_record(&sys(&["C0 = C1", "~(C0 = C1)"]), 10_000);
        assert!(bad.violation.is_some());
        let good = group3_record(&sys(&["C0 = C0"]), 5_000);
        assert!(good.violation.is_none());
        assert!(good.display.starts_with("A x. A y. A p. A q. ~[ Pair(x, y) & Prf"));
    }
}
