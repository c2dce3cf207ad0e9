//! Semantic tableaux: proof trees, the eight deduction rules, an independent
//! checker and a budgeted search.

mod check;
mod prune;
mod rules;
mod search;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::enrichment::{EnrichmentLevel, LemShape};
use crate::lang::godel::{CodeReader, CodeWriter, KIND_PROOF};
use crate::lang::{DecodeError, Formula, Godel, GodelNumber, Symbol, Term};
use crate::systems::selfref::{decode_level, encode_level};

pub use check::{check_proof, InvalidReason, Verdict};
pub use prune::{dedupe, prune};
pub use rules::{negation_rule, Side};
pub use search::{prove, Found, NotFoundWithinBudget, DEFAULT_BUDGET};

pub type NodeId = usize;

/// One application of a deduction rule. The rule number is implied by the
/// variant; the payload is what the rule's schema leaves open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `Υ ∧ Γ` yields `Υ` (left) or `Γ` (right).
    Conjunction(Side),
    /// Negation pushes: `¬¬Υ`, `¬(Υ ∨ Γ)`, `¬(Υ → Γ)`, `¬(Υ ∧ Γ)`, `¬∃`, `¬∀`.
    Negation,
    /// `Υ ∨ Γ` splits into siblings `Υ` | `Γ`.
    Disjunction(Side),
    /// `Υ → Γ` splits into siblings `¬Υ` | `Γ`.
    Implication(Side),
    /// `∃v Υ(v)` yields `Υ(u)` for a fresh parameter `u`.
    Witness(Symbol),
    /// `∃v ≤ s Υ(v)` yields `u ≤ s ∧ Υ(u)` for a fresh parameter `u`.
    BoundedWitness(Symbol),
    /// `∀v Υ(v)` yields `Υ(t)` for a grounded term `t`.
    Instance(Term),
    /// `∀v ≤ s Υ(v)` yields `t ≤ s → Υ(t)` for a grounded term `t`.
    BoundedInstance(Term),
}

impl Rule {
    pub fn number(&self) -> u8 {
        match self {
            Rule::Conjunction(_) => 1,
            Rule::Negation => 2,
            Rule::Disjunction(_) => 3,
            Rule::Implication(_) => 4,
            Rule::Witness(_) => 5,
            Rule::BoundedWitness(_) => 6,
            Rule::Instance(_) => 7,
            Rule::BoundedInstance(_) => 8,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self {
            Rule::Conjunction(s) | Rule::Disjunction(s) | Rule::Implication(s) => Some(*s),
            _ => None,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, Rule::Disjunction(_) | Rule::Implication(_))
    }

    pub fn param(&self) -> Option<&Symbol> {
        match self {
            Rule::Witness(p) | Rule::BoundedWitness(p) => Some(p),
            _ => None,
        }
    }

    pub fn term(&self) -> Option<&Term> {
        match self {
            Rule::Instance(t) | Rule::BoundedInstance(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// The negated goal.
    Root,
    /// Proper axiom, by its index in the basis.
    ProperAxiom(usize),
    /// An excluded-middle instance admitted by the enrichment level.
    LogicalAxiom(LemShape),
    /// Deduction from a node strictly above on the same branch.
    Rule { rule: Rule, ancestor: NodeId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub parent: Option<NodeId>,
    pub sentence: Formula,
    pub justification: Justification,
}

/// A tableau tree. Node ids are positions in `nodes`; a node's parent always
/// has a smaller id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub goal: Formula,
    pub basis: String,
    pub level: EnrichmentLevel,
    pub nodes: Vec<ProofNode>,
}

impl Proof {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn children(&self) -> Vec<Vec<NodeId>> {
        let mut out = alloc::vec![Vec::new(); self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                if p < out.len() {
                    out[p].push(id);
                }
            }
        }
        out
    }

    /// Ids from the root down to `id`, inclusive.
    pub fn branch(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = alloc::vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            out.push(p);
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn leaves(&self) -> Vec<NodeId> {
        self.children()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_empty())
            .map(|(id, _)| id)
            .collect()
    }

    pub(crate) fn decode_body(r: &mut CodeReader<'_>) -> Result<Proof, DecodeError> {
        let goal = r.formula()?;
        let basis = r.string()?;
        let level = decode_level(r)?;
        let count = r.nat()?;
        let mut nodes = Vec::new();
        for _ in 0..count {
            let parent = match r.nat()? {
                0 => None,
                p => Some(p as usize - 1),
            };
            let sentence = r.formula()?;
            let side = |b: u8| match b {
                0 => Ok(Side::Left),
                1 => Ok(Side::Right),
                _ => Err(DecodeError("unknown side")),
            };
            let justification = match r.tag()? {
                0 => Justification::Root,
                1 => Justification::ProperAxiom(r.nat()? as usize),
                2 => Justification::LogicalAxiom(LemShape::Lem),
                3 => Justification::LogicalAxiom(LemShape::LemPlus { arity: r.nat()? as usize }),
                t @ 11..=18 => {
                    let ancestor = r.nat()? as usize;
                    let rule = match t - 10 {
                        1 => Rule::Conjunction(side(r.tag()?)?),
                        2 => Rule::Negation,
                        3 => Rule::Disjunction(side(r.tag()?)?),
                        4 => Rule::Implication(side(r.tag()?)?),
                        5 => Rule::Witness(r.name()?),
                        6 => Rule::BoundedWitness(r.name()?),
                        7 => Rule::Instance(r.term()?),
                        _ => Rule::BoundedInstance(r.term()?),
                    };
                    Justification::Rule { rule, ancestor }
                }
                _ => return Err(DecodeError("unknown justification")),
            };
            nodes.push(ProofNode { parent, sentence, justification });
        }
        Ok(Proof { goal, basis, level, nodes })
    }
}

impl Godel for Proof {
    fn godel_number(&self) -> GodelNumber {
        let mut w = CodeWriter::new(KIND_PROOF);
        w.formula(&self.goal);
        w.name(&self.basis);
        encode_level(&mut w, self.level);
        w.nat(self.nodes.len() as u64);
        for n in &self.nodes {
            w.nat(n.parent.map_or(0, |p| p as u64 + 1));
            w.formula(&n.sentence);
            match &n.justification {
                Justification::Root => w.tag(0),
                Justification::ProperAxiom(i) => {
                    w.tag(1);
                    w.nat(*i as u64);
                }
                Justification::LogicalAxiom(LemShape::Lem) => w.tag(2),
                Justification::LogicalAxiom(LemShape::LemPlus { arity }) => {
                    w.tag(3);
                    w.nat(*arity as u64);
                }
                Justification::Rule { rule, ancestor } => {
                    w.tag(10 + rule.number());
                    w.nat(*ancestor as u64);
                    match rule {
                        Rule::Conjunction(s) | Rule::Disjunction(s) | Rule::Implication(s) => {
                            w.tag(*s as u8)
                        }
                        Rule::Negation => {}
                        Rule::Witness(p) | Rule::BoundedWitness(p) => w.name(p),
                        Rule::Instance(t) | Rule::BoundedInstance(t) => w.term(t),
                    }
                }
            }
        }
        w.finish()
    }
}

/// Node count, the length measure for proofs.
pub fn proof_size(p: &Proof) -> usize {
    p.size()
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, n) in self.nodes.iter().enumerate() {
            let depth = self.branch(id).len() - 1;
            write!(f, "{:width$}{id}. {}", "", n.sentence, width = depth * 2)?;
            match &n.justification {
                Justification::Root => writeln!(f, "  [root]")?,
                Justification::ProperAxiom(i) => writeln!(f, "  [axiom {i}]")?,
                Justification::LogicalAxiom(s) => writeln!(f, "  [{s}]")?,
                Justification::Rule { rule, ancestor } => {
                    write!(f, "  [rule {} on {ancestor}", rule.number())?;
                    if let Some(s) = rule.side() {
                        write!(f, ", {}", s.name())?;
                    }
                    if let Some(p) = rule.param() {
                        write!(f, ", #{p}")?;
                    }
                    if let Some(t) = rule.term() {
                        write!(f, ", t = {t}")?;
                    }
                    writeln!(f, "]")?;
                }
            }
        }
        Ok(())
    }
}
