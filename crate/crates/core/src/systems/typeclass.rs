//! Type-S/A/M/NS classification by which totality sentences are proved.

use alloc::vec::Vec;
use core::fmt;

use crate::tableaux::{prove, Proof};

use super::{totality_sentence, GeneralizedArithmetic, Totality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeKind {
    TypeNS,
    TypeS,
    TypeA,
    TypeM,
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeKind::TypeNS => "Type-NS",
            TypeKind::TypeS => "Type-S",
            TypeKind::TypeA => "Type-A",
            TypeKind::TypeM => "Type-M",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attempt {
    Proved { proof: Proof, expansions: u64 },
    /// Not a refutation: the search ran out of budget or saturated.
    UnprovenWithinBudget { budget: u64, expansions: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeClass {
    pub kind: TypeKind,
    pub evidence: Vec<(Totality, Attempt)>,
}

impl TypeClass {
    pub fn proved(&self, which: Totality) -> bool {
        self.evidence.iter().any(|(t, a)| *t == which && matches!(a, Attempt::Proved { .. }))
    }
}

/// Tries each totality sentence with `budget` expansions and reports the
/// strongest class whose required proofs were all found. A lower bound
/// relative to the budget.
pub fn classify_type(g: &GeneralizedArithmetic, budget: u64) -> TypeClass {
    let evidence: Vec<(Totality, Attempt)> = Totality::ALL
        .iter()
        .map(|&t| {
            let attempt = match prove(&totality_sentence(t), &g.basis, g.level, budget) {
                Ok(found) => Attempt::Proved { proof: found.proof, expansions: found.expansions },
                Err(e) => Attempt::UnprovenWithinBudget { budget, expansions: e.expansions },
            };
            (t, attempt)
        })
        .collect();
    let mut class = TypeClass { kind: TypeKind::TypeNS, evidence };
    let (s, a, m) = (
        class.proved(Totality::Successor),
        class.proved(Totality::Addition),
        class.proved(Totality::Multiplication),
    );
    class.kind = match (s, a, m) {
        (true, true, true) => TypeKind::TypeM,
        (true, true, false) => TypeKind::TypeA,
        (true, false, _) => TypeKind::TypeS,
        _ => TypeKind::TypeNS,
    };
    class
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrichment::EnrichmentLevel;
    use crate::systems::AxiomBasis;

    fn with(ts: &[Totality]) -> GeneralizedArithmetic {
        let axioms = ts.iter().map(|&t| totality_sentence(t)).collect();
        GeneralizedArithmetic { basis: AxiomBasis::new("t", axioms), level: EnrichmentLevel::None }
    }

    #[test]
    fn verbatim_axioms_give_type_m() {
        let c = classify_type(&with(&Totality::ALL), 1000);
        assert_eq!(c.kind, TypeKind::TypeM);
        for (_, a) in &c.evidence {
            let Attempt::Proved { proof, .. } = a else { panic!() };
            assert_eq!(proof.size(), 2);
        }
    }

    #[test]
    fn empty_basis_is_ns() {
        assert_eq!(classify_type(&with(&[]), 2000).kind, TypeKind::TypeNS);
    }

    #[test]
    fn successor_and_addition_give_type_a() {
        let c = classify_type(&with(&[Totality::Successor, Totality::Addition]), 5000);
        assert_eq!(c.kind, TypeKind::TypeA);
        assert!(!c.proved(Totality::Multiplication));
    }
}
