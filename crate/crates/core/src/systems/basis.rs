use alloc::string::String;
use alloc::vec::Vec;

use crate::lang::Formula;

use super::SelfRefRecord;

/// Declared properties of a basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasisFlags {
    /// Every axiom is asserted to hold in the standard model.
    pub declared_true: bool,
}

/// A named set of proper axioms.
///
/// Axioms are numbered by their position; the enumerator emits them in that
/// order, so every axiom appears after finitely many steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomBasis {
    name: String,
    axioms: Vec<Formula>,
    self_refs: Vec<(usize, SelfRefRecord)>,
    pub flags: BasisFlags,
}

impl AxiomBasis {
    pub fn new(name: impl Into<String>, axioms: Vec<Formula>) -> Self {
        AxiomBasis { name: name.into(), axioms, self_refs: Vec::new(), flags: BasisFlags::default() }
    }

    pub fn empty() -> Self {
        AxiomBasis::new("empty", Vec::new())
    }

    pub fn declared_true(mut self) -> Self {
        self.flags.declared_true = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// The axiom with enumeration index `id`.
    pub fn axiom(&self, id: usize) -> Option<&Formula> {
        self.axioms.get(id)
    }

    pub fn contains(&self, sentence: &Formula) -> bool {
        self.axioms.iter().any(|a| a == sentence)
    }

    pub fn position(&self, sentence: &Formula) -> Option<usize> {
        self.axioms.iter().position(|a| a == sentence)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.axioms.iter()
    }

    pub fn self_refs(&self) -> &[(usize, SelfRefRecord)] {
        &self.self_refs
    }

    pub(crate) fn with_self_ref(&self, name: String, record: SelfRefRecord, sentence: Formula) -> AxiomBasis {
        let mut out = self.clone();
        out.name = name;
        out.flags.declared_true = false;
        out.self_refs.push((out.axioms.len(), record));
        out.axioms.push(sentence);
        out
    }
}
