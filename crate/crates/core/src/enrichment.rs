//! Enrichment levels: which excluded-middle instances count as logical
//! axioms, and the cut construction they make available.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::lang::{Formula, Symbol};
use crate::prenex::classify;
use crate::systems::AxiomBasis;
use crate::tableaux::{check_proof, dedupe, Justification, Proof, ProofNode, Rule, Side, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnrichmentLevel {
    None,
    RankZero,
    RankZeroPlus,
    RankK(u32),
    Infinite,
}

impl fmt::Display for EnrichmentLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnrichmentLevel::None => write!(f, "none"),
            EnrichmentLevel::RankZero => write!(f, "rank0"),
            EnrichmentLevel::RankZeroPlus => write!(f, "rank0plus"),
            EnrichmentLevel::RankK(k) => write!(f, "rankK:{k}"),
            EnrichmentLevel::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelParseError(pub String);

impl fmt::Display for LevelParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown enrichment level `{}` (expected none, rank0, rank0plus, rankK:k or inf)", self.0)
    }
}

impl core::error::Error for LevelParseError {}

impl FromStr for EnrichmentLevel {
    type Err = LevelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LevelParseError(s.into());
        Ok(match s {
            "none" => EnrichmentLevel::None,
            "rank0" => EnrichmentLevel::RankZero,
            "rank0plus" => EnrichmentLevel::RankZeroPlus,
            "inf" => EnrichmentLevel::Infinite,
            _ => {
                let k = s.strip_prefix("rankK:").ok_or_else(err)?;
                match k.parse::<u32>() {
                    Ok(k) if k >= 1 => EnrichmentLevel::RankK(k),
                    _ => return Err(err()),
                }
            }
        })
    }
}

/// Which excluded-middle shape a logical-axiom node uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LemShape {
    /// `Ψ ∨ ¬Ψ` for a sentence `Ψ`.
    Lem,
    /// `∀v1 … ∀vm (ψ ∨ ¬ψ)` for a Δ₀ formula `ψ` with exactly those free variables.
    LemPlus { arity: usize },
}

impl fmt::Display for LemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemShape::Lem => write!(f, "lem"),
            LemShape::LemPlus { arity } => write!(f, "lem+{arity}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnrichmentError {
    NotClosed,
    Closed,
    NotDelta0,
}

impl fmt::Display for EnrichmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnrichmentError::NotClosed => write!(f, "formula has free variables"),
            EnrichmentError::Closed => write!(f, "formula is closed; use the plain excluded-middle axiom"),
            EnrichmentError::NotDelta0 => write!(f, "formula has an unbounded quantifier"),
        }
    }
}

impl core::error::Error for EnrichmentError {}

/// `Ψ ∨ ¬Ψ`.
pub fn lem_axiom(psi: &Formula) -> Result<Formula, EnrichmentError> {
    if !psi.is_closed() {
        return Err(EnrichmentError::NotClosed);
    }
    Ok(Formula::or(psi.clone(), Formula::not(psi.clone())))
}

/// `∀v1 … ∀vm (ψ ∨ ¬ψ)`, closing the free variables in name order.
pub fn lem_plus_axiom(psi: &Formula) -> Result<Formula, EnrichmentError> {
    if !psi.is_delta0() {
        return Err(EnrichmentError::NotDelta0);
    }
    let free = psi.free_vars();
    if free.is_empty() {
        return Err(EnrichmentError::Closed);
    }
    let body = Formula::or(psi.clone(), Formula::not(psi.clone()));
    Ok(free.iter().rev().fold(body, |acc, v| Formula::ForAll(v.clone(), Arc::new(acc))))
}

/// Recognizes the excluded-middle shapes.
pub fn lem_shape(candidate: &Formula) -> Option<LemShape> {
    if !candidate.is_closed() {
        return None;
    }
    if let Formula::Or(a, b) = candidate {
        if matches!(&**b, Formula::Not(x) if x == a) {
            return Some(LemShape::Lem);
        }
    }
    let mut vars = Vec::new();
    let mut cur = candidate;
    while let Formula::ForAll(v, body) = cur {
        vars.push(v.clone());
        cur = body;
    }
    let Formula::Or(a, b) = cur else { return None };
    if vars.is_empty() || !matches!(&**b, Formula::Not(x) if x == a) || !a.is_delta0() {
        return None;
    }
    let distinct: BTreeSet<Symbol> = vars.iter().cloned().collect();
    (distinct.len() == vars.len() && distinct == a.free_vars()).then_some(LemShape::LemPlus { arity: vars.len() })
}

/// The least level at which `candidate` is a logical axiom.
pub fn minimal_level(candidate: &Formula) -> Option<EnrichmentLevel> {
    match lem_shape(candidate)? {
        LemShape::LemPlus { .. } => Some(EnrichmentLevel::RankZeroPlus),
        LemShape::Lem => {
            let Formula::Or(psi, _) = candidate else { unreachable!() };
            if psi.is_delta0() {
                return Some(EnrichmentLevel::RankZero);
            }
            Some(match classify(psi) {
                Ok(class) => EnrichmentLevel::RankK(class.rank().max(1)),
                Err(_) => EnrichmentLevel::Infinite,
            })
        }
    }
}

/// Whether `candidate` may appear as a logical axiom at `level`.
///
/// At a finite rank, `Ψ` must be syntactically prenex; other sentences are
/// admitted only at the infinite level.
pub fn permits(level: EnrichmentLevel, candidate: &Formula) -> bool {
    minimal_level(candidate).is_some_and(|need| need <= level)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutError {
    /// The implication proof's goal is not `Ψ → Φ` for the other proof's goal `Ψ`.
    GoalMismatch,
    InvalidInput { which: &'static str, verdict: Verdict },
    NotStrippable,
    /// The assembled proof failed the checker; indicates a bug.
    Assembly(Verdict),
}

impl fmt::Display for CutError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutError::GoalMismatch => write!(f, "second goal must be an implication from the first goal"),
            CutError::InvalidInput { which, verdict } => write!(f, "{which} proof is not valid: {verdict}"),
            CutError::NotStrippable => write!(f, "implication proof does not begin with a strippable chain"),
            CutError::Assembly(v) => write!(f, "assembled proof failed to check: {v}"),
        }
    }
}

impl core::error::Error for CutError {}

/// From proofs of `Ψ` and `Ψ → Φ`, a proof of `Φ` through the axiom `Ψ ∨ ¬Ψ`.
///
/// The result has root `¬Φ`, the logical axiom as its only child, and the
/// siblings `Ψ` and `¬Ψ`; the implication proof hangs under `Ψ` with its
/// opening chain removed, the proof of `Ψ` under `¬Ψ`.
pub fn cut_combine(proof_psi: &Proof, proof_impl: &Proof, basis: &AxiomBasis) -> Result<Proof, CutError> {
    let psi = &proof_psi.goal;
    let Formula::Implies(psi2, phi) = &proof_impl.goal else { return Err(CutError::GoalMismatch) };
    if **psi2 != *psi {
        return Err(CutError::GoalMismatch);
    }
    for (which, p) in [("first", proof_psi), ("second", proof_impl)] {
        let v = check_proof(p, basis, p.level);
        if !v.is_valid() {
            return Err(CutError::InvalidInput { which, verdict: v });
        }
    }
    let phi = (**phi).clone();
    let imp = normalize_impl(proof_impl, psi, &phi)?;
    let lem = lem_axiom(psi).expect("goals are sentences");
    let level = proof_psi.level.max(proof_impl.level).max(minimal_level(&lem).expect("lem shape"));

    let mut fresh = 0usize;
    let mut nodes = alloc::vec![
        ProofNode { parent: None, sentence: Formula::not(phi.clone()), justification: Justification::Root },
        ProofNode { parent: Some(0), sentence: lem, justification: Justification::LogicalAxiom(LemShape::Lem) },
        ProofNode {
            parent: Some(1),
            sentence: psi.clone(),
            justification: Justification::Rule { rule: Rule::Disjunction(Side::Left), ancestor: 1 },
        },
    ];
    // normalized implication proof: 0 ¬(Ψ→Φ), 1 Ψ∧¬Φ, 2 Ψ, 3 ¬Φ
    let mut map: Vec<Option<usize>> = alloc::vec![None, None, Some(2), Some(0)];
    graft(&imp, 4, &mut map, &mut nodes, &mut fresh, |old| if old == 3 { 2 } else { old })?;
    let neg_psi = nodes.len();
    nodes.push(ProofNode {
        parent: Some(1),
        sentence: Formula::not(psi.clone()),
        justification: Justification::Rule { rule: Rule::Disjunction(Side::Right), ancestor: 1 },
    });
    let mut map: Vec<Option<usize>> = alloc::vec![Some(neg_psi)];
    graft(proof_psi, 1, &mut map, &mut nodes, &mut fresh, |old| old)?;

    let mut out = Proof { goal: phi.clone(), basis: basis.name().into(), level, nodes };
    repair_closures(&mut out, psi, &phi)?;
    match check_proof(&out, basis, level) {
        Verdict::Valid => Ok(out),
        v => Err(CutError::Assembly(v)),
    }
}

/// Copies nodes `from..` of `src` into `dst`. `map` holds the new ids of the
/// nodes before `from`; `parent_of` redirects parents that were stripped.
fn graft(
    src: &Proof,
    from: usize,
    map: &mut Vec<Option<usize>>,
    dst: &mut Vec<ProofNode>,
    fresh: &mut usize,
    parent_of: impl Fn(usize) -> usize,
) -> Result<(), CutError> {
    let mut rename: BTreeMap<Symbol, Symbol> = BTreeMap::new();
    for node in &src.nodes[from..] {
        if let Justification::Rule { rule, .. } = &node.justification {
            if let Some(p) = rule.param() {
                *fresh += 1;
                rename.insert(p.clone(), Symbol::from(format!("p{fresh}").as_str()));
            }
        }
    }
    let mut ren = |s: &Symbol| rename.get(s).cloned().unwrap_or_else(|| s.clone());
    for node in &src.nodes[from..] {
        let parent = match node.parent {
            Some(q) => Some(map[parent_of(q)].ok_or(CutError::NotStrippable)?),
            None => None,
        };
        let justification = match &node.justification {
            Justification::Rule { rule, ancestor } => {
                let rule = match rule {
                    Rule::Witness(p) => Rule::Witness(ren(p)),
                    Rule::BoundedWitness(p) => Rule::BoundedWitness(ren(p)),
                    Rule::Instance(t) => Rule::Instance(t.map_params(&mut ren)),
                    Rule::BoundedInstance(t) => Rule::BoundedInstance(t.map_params(&mut ren)),
                    r => r.clone(),
                };
                let ancestor = map[*ancestor].ok_or(CutError::NotStrippable)?;
                Justification::Rule { rule, ancestor }
            }
            j => j.clone(),
        };
        map.push(Some(dst.len()));
        dst.push(ProofNode { parent, sentence: node.sentence.map_params(&mut ren), justification });
    }
    Ok(())
}

/// Puts the implication proof into the form `¬(Ψ→Φ)`, `Ψ∧¬Φ`, `Ψ`, `¬Φ`, rest.
fn normalize_impl(p: &Proof, psi: &Formula, phi: &Formula) -> Result<Proof, CutError> {
    let chain = [
        Formula::and(psi.clone(), Formula::not(phi.clone())),
        psi.clone(),
        Formula::not(phi.clone()),
    ];
    let chain_just = [
        Justification::Rule { rule: Rule::Negation, ancestor: 0 },
        Justification::Rule { rule: Rule::Conjunction(Side::Left), ancestor: 1 },
        Justification::Rule { rule: Rule::Conjunction(Side::Right), ancestor: 1 },
    ];
    let is_chain = |q: &Proof| {
        q.nodes.len() >= 4
            && (1..4).all(|i| {
                q.nodes[i].parent == Some(i - 1)
                    && q.nodes[i].sentence == chain[i - 1]
                    && q.nodes[i].justification == chain_just[i - 1]
            })
    };
    if is_chain(p) {
        return Ok(p.clone());
    }
    let mut nodes = alloc::vec![p.nodes[0].clone()];
    for (i, (s, j)) in chain.iter().zip(chain_just.iter()).enumerate() {
        nodes.push(ProofNode { parent: Some(i), sentence: s.clone(), justification: j.clone() });
    }
    for node in &p.nodes[1..] {
        let mut n = node.clone();
        n.parent = n.parent.map(|q| if q == 0 { 3 } else { q + 3 });
        if let Justification::Rule { ancestor, .. } = &mut n.justification {
            if *ancestor > 0 {
                *ancestor += 3;
            }
        }
        nodes.push(n);
    }
    let q = dedupe(&Proof { nodes, ..p.clone() });
    if is_chain(&q) {
        Ok(q)
    } else {
        Err(CutError::NotStrippable)
    }
}

/// Re-closes branches that relied on the stripped `¬(Ψ→Φ)` or `Ψ∧¬Φ`: the
/// subtree under the partner node is replaced by a short split that closes
/// against the sibling `Ψ` (node 2) and the root `¬Φ`.
fn repair_closures(p: &mut Proof, psi: &Formula, phi: &Formula) -> Result<(), CutError> {
    let implication = Formula::implies(psi.clone(), phi.clone()).alpha_canonical();
    let conj = Formula::and(psi.clone(), Formula::not(phi.clone())).alpha_canonical();
    loop {
        let children = p.children();
        let open = (0..p.nodes.len()).find(|&i| children[i].is_empty() && !closed(p, i));
        let Some(leaf) = open else { return Ok(()) };
        let mut fix = None;
        for id in p.branch(leaf) {
            let c = p.nodes[id].sentence.alpha_canonical();
            if c == implication {
                fix = Some((id, 0));
            } else if c == Formula::not(conj.clone()) {
                fix = Some((id, 1));
            } else if c == Formula::not(Formula::not(implication.clone())) {
                fix = Some((id, 2));
            }
            if fix.is_some() {
                break;
            }
        }
        let (at, kind) = fix.ok_or(CutError::NotStrippable)?;
        let at = cut_subtree(p, at);
        let mut push = |parent: usize, sentence: Formula, justification: Justification| {
            p.nodes.push(ProofNode { parent: Some(parent), sentence, justification });
            p.nodes.len() - 1
        };
        let rule = |rule, ancestor| Justification::Rule { rule, ancestor };
        match kind {
            0 | 2 => {
                let imp = if kind == 0 {
                    at
                } else {
                    push(at, Formula::implies(psi.clone(), phi.clone()), rule(Rule::Negation, at))
                };
                push(imp, Formula::not(psi.clone()), rule(Rule::Implication(Side::Left), imp));
                push(imp, phi.clone(), rule(Rule::Implication(Side::Right), imp));
            }
            _ => {
                let split = Formula::or(Formula::not(psi.clone()), Formula::not(Formula::not(phi.clone())));
                let d = push(at, split, rule(Rule::Negation, at));
                push(d, Formula::not(psi.clone()), rule(Rule::Disjunction(Side::Left), d));
                push(d, Formula::not(Formula::not(phi.clone())), rule(Rule::Disjunction(Side::Right), d));
            }
        }
    }
}

/// Removes the descendants of `at`; returns its new id.
fn cut_subtree(p: &mut Proof, at: usize) -> usize {
    let n = p.nodes.len();
    let mut drop = alloc::vec![false; n];
    for i in at + 1..n {
        if let Some(q) = p.nodes[i].parent {
            drop[i] = q == at || drop[q];
        }
    }
    let mut new_id = alloc::vec![usize::MAX; n];
    let mut nodes = Vec::new();
    for i in (0..n).filter(|&i| !drop[i]) {
        new_id[i] = nodes.len();
        nodes.push(p.nodes[i].clone());
    }
    for node in &mut nodes {
        node.parent = node.parent.map(|q| new_id[q]);
        if let Justification::Rule { ancestor, .. } = &mut node.justification {
            *ancestor = new_id[*ancestor];
        }
    }
    p.nodes = nodes;
    new_id[at]
}

fn closed(p: &Proof, leaf: usize) -> bool {
    let seen: BTreeSet<Formula> = p.branch(leaf).into_iter().map(|i| p.nodes[i].sentence.alpha_canonical()).collect();
    seen.iter().any(|s| seen.contains(&Formula::not(s.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_formula;
    use crate::systems::{totality_sentence, Totality};
    use crate::tableaux::prove;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    const LEVELS: [EnrichmentLevel; 6] = [
        EnrichmentLevel::None,
        EnrichmentLevel::RankZero,
        EnrichmentLevel::RankZeroPlus,
        EnrichmentLevel::RankK(1),
        EnrichmentLevel::RankK(2),
        EnrichmentLevel::Infinite,
    ];

    #[test]
    fn level_text_round_trip() {
        for l in LEVELS {
            assert_eq!(l.to_string().parse::<EnrichmentLevel>(), Ok(l));
        }
        assert!("rankK:0".parse::<EnrichmentLevel>().is_err());
        assert!("rank1".parse::<EnrichmentLevel>().is_err());
    }

    #[test]
    fn lem_examples() {
        assert_eq!(lem_axiom(&p("C0 = C0")).unwrap(), p("C0 = C0 | ~(C0 = C0)"));
        let t = totality_sentence(Totality::Multiplication);
        assert_eq!(lem_axiom(&t).unwrap(), Formula::or(t.clone(), Formula::not(t)));
        assert_eq!(lem_axiom(&p("x = C0")), Err(EnrichmentError::NotClosed));
    }

    #[test]
    fn lem_plus_examples() {
        assert_eq!(lem_plus_axiom(&p("x = C0")).unwrap(), p("A x. x = C0 | ~(x = C0)"));
        let two = lem_plus_axiom(&p("x <= y")).unwrap();
        assert_eq!(two, p("A x. A y. x <= y | ~(x <= y)"));
        assert_eq!(lem_shape(&two), Some(LemShape::LemPlus { arity: 2 }));
        assert_eq!(classify(&two).unwrap().rank(), 1);
        assert_eq!(lem_plus_axiom(&p("E z. x = z")), Err(EnrichmentError::NotDelta0));
        assert_eq!(lem_plus_axiom(&p("C0 = C0")), Err(EnrichmentError::Closed));
    }

    #[test]
    fn permits_table() {
        let d0 = lem_axiom(&p("C0 = C0")).unwrap();
        let plus = lem_plus_axiom(&p("x = C0")).unwrap();
        let pi1 = lem_axiom(&p("A x. x <= double(x)")).unwrap();
        let pi2 = lem_axiom(&p("A x. E y. x <= y")).unwrap();
        let odd = lem_axiom(&p("~A x. x = x")).unwrap();
        let table: [(&Formula, [bool; 6]); 5] = [
            (&d0, [false, true, true, true, true, true]),
            (&plus, [false, false, true, true, true, true]),
            (&pi1, [false, false, false, true, true, true]),
            (&pi2, [false, false, false, false, true, true]),
            (&odd, [false, false, false, false, false, true]),
        ];
        for (cand, row) in table {
            for (l, want) in LEVELS.iter().zip(row) {
                assert_eq!(permits(*l, cand), want, "{l} {cand}");
            }
        }
        assert!(!permits(EnrichmentLevel::Infinite, &p("C0 = C0")));
        assert!(!permits(EnrichmentLevel::Infinite, &p("A x. x = C0 | ~(x = C1)")));
    }

    fn tautology() -> Formula {
        p("C0 = C0 | ~(C0 = C0)")
    }

    #[test]
    fn cut_on_tautology() {
        let basis = AxiomBasis::empty();
        let psi = tautology();
        let p1 = prove(&psi, &basis, EnrichmentLevel::None, 10_000).unwrap().proof;
        let p2 = prove(&Formula::implies(psi.clone(), psi.clone()), &basis, EnrichmentLevel::None, 10_000)
            .unwrap()
            .proof;
        let out = cut_combine(&p1, &p2, &basis).unwrap();
        assert_eq!(out.goal, psi);
        assert_eq!(out.level, EnrichmentLevel::RankZero);
        assert!(out.size() <= p1.size() + p2.size() + 4);
        assert!(check_proof(&out, &basis, EnrichmentLevel::RankZero).is_valid());
        assert!(check_proof(&out, &basis, EnrichmentLevel::RankK(1)).is_valid());
        assert!(!check_proof(&out, &basis, EnrichmentLevel::None).is_valid());
        assert_eq!(out.nodes[1].justification, Justification::LogicalAxiom(LemShape::Lem));
    }

    #[test]
    fn cut_rejects_mismatch() {
        let basis = AxiomBasis::empty();
        let p1 = prove(&tautology(), &basis, EnrichmentLevel::None, 10_000).unwrap().proof;
        assert_eq!(cut_combine(&p1, &p1, &basis), Err(CutError::GoalMismatch));
    }

    #[test]
    fn chain_steps_grow_linearly() {
        let atom = |i: u64| {
            let n = crate::lang::encode_u64(i);
            Formula::eq(n.clone(), n)
        };
        let mut axioms = alloc::vec![atom(0)];
        axioms.extend((0..4).map(|i| Formula::implies(atom(i), atom(i + 1))));
        let basis = AxiomBasis::new("chain", axioms);
        let mut proof = prove(&atom(0), &basis, EnrichmentLevel::None, 1000).unwrap().proof;
        let mut sizes = alloc::vec![proof.size()];
        for i in 0..4 {
            let step = prove(&Formula::implies(atom(i), atom(i + 1)), &basis, EnrichmentLevel::None, 1000)
                .unwrap()
                .proof;
            proof = cut_combine(&proof, &step, &basis).unwrap();
            assert!(check_proof(&proof, &basis, EnrichmentLevel::RankZero).is_valid());
            sizes.push(proof.size());
        }
        let steps: Vec<usize> = sizes.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(steps.iter().all(|&d| d == steps[0]), "{sizes:?}");
    }
}
