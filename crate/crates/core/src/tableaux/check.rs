//! The proof checker. It shares no code with the search: every schema is
//! matched directly against the recorded ancestor.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use core::fmt;

use crate::enrichment::{lem_shape, permits, EnrichmentLevel};
use crate::lang::{Formula, Term};
use crate::systems::AxiomBasis;

use super::{Justification, NodeId, Proof, Rule, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    Empty,
    GoalNotSentence,
    BadRoot,
    BadParent,
    NotASentence,
    AncestorNotAbove,
    SchemaMismatch { rule: u8 },
    ParamNotFresh,
    TermNotGrounded,
    UnknownAxiom,
    LogicalAxiomNotPermitted,
    BadSiblings,
    OpenBranch,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::Empty => write!(f, "proof has no nodes"),
            InvalidReason::GoalNotSentence => write!(f, "goal is not a sentence"),
            InvalidReason::BadRoot => write!(f, "root must be the negated goal"),
            InvalidReason::BadParent => write!(f, "parent must be an earlier node"),
            InvalidReason::NotASentence => write!(f, "node has free variables"),
            InvalidReason::AncestorNotAbove => write!(f, "cited node is not strictly above on the branch"),
            InvalidReason::SchemaMismatch { rule } => write!(f, "does not match the schema of rule {rule}"),
            InvalidReason::ParamNotFresh => write!(f, "parameter already occurs above"),
            InvalidReason::TermNotGrounded => write!(f, "instantiation term is not grounded"),
            InvalidReason::UnknownAxiom => write!(f, "not an axiom of the basis"),
            InvalidReason::LogicalAxiomNotPermitted => write!(f, "logical axiom not permitted at this level"),
            InvalidReason::BadSiblings => write!(f, "children must be a single node or a rule 3/4 sibling pair"),
            InvalidReason::OpenBranch => write!(f, "branch is open"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { reason: InvalidReason, node: NodeId },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "Valid"),
            Verdict::Invalid { reason, node } => write!(f, "Invalid at node {node}: {reason}"),
        }
    }
}

/// Checks `p` against `basis` and `level`; reports the lowest offending node.
pub fn check_proof(p: &Proof, basis: &AxiomBasis, level: EnrichmentLevel) -> Verdict {
    match check_inner(p, basis, level) {
        Ok(()) => Verdict::Valid,
        Err((node, reason)) => Verdict::Invalid { reason, node },
    }
}

type Failure = (NodeId, InvalidReason);

fn check_inner(p: &Proof, basis: &AxiomBasis, level: EnrichmentLevel) -> Result<(), Failure> {
    if p.nodes.is_empty() {
        return Err((0, InvalidReason::Empty));
    }
    if !p.goal.is_sentence() {
        return Err((0, InvalidReason::GoalNotSentence));
    }
    for (id, node) in p.nodes.iter().enumerate() {
        if id == 0 {
            let root_ok = node.parent.is_none()
                && node.justification == Justification::Root
                && node.sentence == Formula::not(p.goal.clone());
            if !root_ok {
                return Err((0, InvalidReason::BadRoot));
            }
            continue;
        }
        match node.parent {
            Some(q) if q < id => {}
            _ => return Err((id, InvalidReason::BadParent)),
        }
        if !node.sentence.is_closed() {
            return Err((id, InvalidReason::NotASentence));
        }
        check_justification(p, basis, level, id).map_err(|r| (id, r))?;
    }
    let children = p.children();
    for (id, kids) in children.iter().enumerate() {
        match kids.as_slice() {
            [] => {}
            [only] => {
                if split_of(p, *only).is_some() {
                    return Err((*only, InvalidReason::BadSiblings));
                }
            }
            [a, b] => {
                let pair_ok = match (split_of(p, *a), split_of(p, *b)) {
                    (Some((ra, sa, xa)), Some((rb, sb, xb))) => {
                        ra == rb && xa == xb && sa == Side::Left && sb == Side::Right
                    }
                    _ => false,
                };
                if !pair_ok {
                    return Err((*a.min(b), InvalidReason::BadSiblings));
                }
            }
            more => return Err((more[2], InvalidReason::BadSiblings)),
        }
        let _ = id;
    }
    for (id, kids) in children.iter().enumerate() {
        if kids.is_empty() && !branch_closed(p, id) {
            return Err((id, InvalidReason::OpenBranch));
        }
    }
    Ok(())
}

/// `(rule number, side, ancestor)` for a rule 3/4 node.
fn split_of(p: &Proof, id: NodeId) -> Option<(u8, Side, NodeId)> {
    match &p.nodes[id].justification {
        Justification::Rule { rule: Rule::Disjunction(s), ancestor } => Some((3, *s, *ancestor)),
        Justification::Rule { rule: Rule::Implication(s), ancestor } => Some((4, *s, *ancestor)),
        _ => None,
    }
}

fn check_justification(
    p: &Proof,
    basis: &AxiomBasis,
    level: EnrichmentLevel,
    id: NodeId,
) -> Result<(), InvalidReason> {
    let node = &p.nodes[id];
    match &node.justification {
        Justification::Root => Err(InvalidReason::BadRoot),
        Justification::ProperAxiom(i) => match basis.axiom(*i) {
            Some(a) if *a == node.sentence => Ok(()),
            _ => Err(InvalidReason::UnknownAxiom),
        },
        Justification::LogicalAxiom(shape) => {
            if lem_shape(&node.sentence) == Some(*shape) && permits(level, &node.sentence) {
                Ok(())
            } else {
                Err(InvalidReason::LogicalAxiomNotPermitted)
            }
        }
        Justification::Rule { rule, ancestor } => {
            let above = p.branch(id);
            let above = &above[..above.len() - 1];
            if !above.contains(ancestor) {
                return Err(InvalidReason::AncestorNotAbove);
            }
            let anc = &p.nodes[*ancestor].sentence;
            if let Some(t) = rule.term() {
                if !t.is_grounded() {
                    return Err(InvalidReason::TermNotGrounded);
                }
            }
            if let Some(u) = rule.param() {
                if above.iter().any(|&a| p.nodes[a].sentence.contains_param(u)) {
                    return Err(InvalidReason::ParamNotFresh);
                }
            }
            if schema_holds(rule, anc, &node.sentence) {
                Ok(())
            } else {
                Err(InvalidReason::SchemaMismatch { rule: rule.number() })
            }
        }
    }
}

fn schema_holds(rule: &Rule, anc: &Formula, out: &Formula) -> bool {
    use Formula as F;
    let is_not_of = |x: &Formula, y: &Arc<Formula>| matches!(x, F::Not(z) if z == y);
    match (rule, anc) {
        (Rule::Conjunction(Side::Left), F::And(a, _)) => **a == *out,
        (Rule::Conjunction(Side::Right), F::And(_, b)) => **b == *out,
        (Rule::Negation, F::Not(inner)) => match (&**inner, out) {
            (F::Not(x), _) => **x == *out,
            (F::Or(a, b), F::And(x, y)) => is_not_of(x, a) && is_not_of(y, b),
            (F::Implies(a, b), F::And(x, y)) => x == a && is_not_of(y, b),
            (F::And(a, b), F::Or(x, y)) => is_not_of(x, a) && is_not_of(y, b),
            (F::Exists(v, b), F::ForAll(w, body)) => v == w && is_not_of(body, b),
            (F::ForAll(v, b), F::Exists(w, body)) => v == w && is_not_of(body, b),
            (F::BoundedExists(v, s, b), F::BoundedForAll(w, t, body)) => v == w && s == t && is_not_of(body, b),
            (F::BoundedForAll(v, s, b), F::BoundedExists(w, t, body)) => v == w && s == t && is_not_of(body, b),
            _ => false,
        },
        (Rule::Disjunction(Side::Left), F::Or(a, _)) => **a == *out,
        (Rule::Disjunction(Side::Right), F::Or(_, b)) => **b == *out,
        (Rule::Implication(Side::Left), F::Implies(a, _)) => is_not_of(out, a),
        (Rule::Implication(Side::Right), F::Implies(_, b)) => **b == *out,
        (Rule::Witness(u), F::Exists(v, body)) => body.subst(v, &Term::Param(u.clone())) == *out,
        (Rule::BoundedWitness(u), F::BoundedExists(v, s, body)) => match out {
            F::And(l, r) => {
                let u = Term::Param(u.clone());
                **l == Formula::le(u.clone(), s.clone()) && **r == body.subst(v, &u)
            }
            _ => false,
        },
        (Rule::Instance(t), F::ForAll(v, body)) => body.subst(v, t) == *out,
        (Rule::BoundedInstance(t), F::BoundedForAll(v, s, body)) => match out {
            F::Implies(l, r) => **l == Formula::le(t.clone(), s.clone()) && **r == body.subst(v, t),
            _ => false,
        },
        _ => false,
    }
}

fn branch_closed(p: &Proof, leaf: NodeId) -> bool {
    let mut seen = BTreeSet::new();
    for id in p.branch(leaf) {
        seen.insert(p.nodes[id].sentence.alpha_canonical());
    }
    seen.iter().any(|s| seen.contains(&Formula::not(s.clone())))
}
