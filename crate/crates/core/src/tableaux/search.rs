//! Budgeted proof search.
//!
//! Each round builds a tableau from scratch with wider windows: the first
//! `8r` axioms are placed under the root and every universal node may be
//! instantiated with up to `r + 1` pool terms. Inside a round, a branch is
//! saturated depth-first: non-branching rules first, then the split whose
//! children close soonest, then one instantiation per universal node in
//! round-robin order. A round that closes every branch yields the proof; a
//! round that saturates without hitting a window means no proof exists in
//! this calculus from these axioms.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::enrichment::EnrichmentLevel;
use crate::lang::{Constant, Formula, Func, Symbol, Term};
use crate::systems::AxiomBasis;

use super::rules::{derive, negation_rule, Side};
use super::{prune, Justification, Proof, ProofNode, Rule};

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub proof: Proof,
    pub expansions: u64,
}

/// The search ran out of budget, or saturated without closing. Never a claim
/// of unprovability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotFoundWithinBudget {
    pub budget: u64,
    pub expansions: u64,
}

impl core::fmt::Display for NotFoundWithinBudget {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "no proof found within budget {} ({} expansions)", self.budget, self.expansions)
    }
}

/// Searches for a tableau proof of `goal`. Deterministic; a larger budget
/// explores a superset and returns the same proof whenever a smaller one did.
pub fn prove(
    goal: &Formula,
    basis: &AxiomBasis,
    level: EnrichmentLevel,
    budget: u64,
) -> Result<Found, NotFoundWithinBudget> {
    let mut search = Search {
        basis,
        nodes: Vec::new(),
        on_branch: BTreeMap::new(),
        undo: Vec::new(),
        spent: 0,
        budget,
        next_param: 0,
        term_window: 0,
        truncated: false,
    };
    let not_found = |spent| NotFoundWithinBudget { budget, expansions: spent };
    if !goal.is_sentence() {
        return Err(not_found(0));
    }
    for round in 1usize.. {
        match search.round(goal, round) {
            Ok(true) => {
                let raw = Proof {
                    goal: goal.clone(),
                    basis: basis.name().to_string(),
                    level,
                    nodes: core::mem::take(&mut search.nodes)
                        .into_iter()
                        .map(|d| ProofNode { parent: d.parent, sentence: d.sentence, justification: d.just })
                        .collect(),
                };
                return Ok(Found { proof: prune(&raw), expansions: search.spent });
            }
            Ok(false) if search.truncated => continue,
            _ => return Err(not_found(search.spent)),
        }
    }
    unreachable!()
}

struct Draft {
    parent: Option<usize>,
    sentence: Formula,
    just: Justification,
}

struct Exhausted;

#[derive(Clone)]
struct Gamma {
    node: usize,
    used: Vec<Term>,
}

#[derive(Clone)]
struct Branch {
    tip: usize,
    alpha: VecDeque<usize>,
    betas: Vec<usize>,
    gammas: Vec<Gamma>,
    params: Vec<Term>,
    /// Ground subterms seen on the branch, ordered by size then first sight.
    ground: Vec<Term>,
}

struct Search<'a> {
    basis: &'a AxiomBasis,
    nodes: Vec<Draft>,
    /// Canonical sentences on the current path, with the first node holding each.
    on_branch: BTreeMap<Formula, usize>,
    undo: Vec<Formula>,
    spent: u64,
    budget: u64,
    next_param: usize,
    term_window: usize,
    truncated: bool,
}

type Step<T> = Result<T, Exhausted>;

impl Search<'_> {
    fn round(&mut self, goal: &Formula, round: usize) -> Step<bool> {
        self.nodes.clear();
        self.on_branch.clear();
        self.undo.clear();
        self.next_param = 0;
        self.term_window = round + 1;
        self.truncated = false;
        let mut br = Branch {
            tip: usize::MAX,
            alpha: VecDeque::new(),
            betas: Vec::new(),
            gammas: Vec::new(),
            params: Vec::new(),
            ground: Vec::new(),
        };
        if self.add(&mut br, Formula::not(goal.clone()), Justification::Root)? {
            return Ok(true);
        }
        let window = 8 * round;
        if self.basis.len() > window {
            self.truncated = true;
        }
        for (i, ax) in self.basis.iter().enumerate().take(window) {
            if self.is_on_branch(ax) {
                continue;
            }
            if self.add(&mut br, ax.clone(), Justification::ProperAxiom(i))? {
                return Ok(true);
            }
        }
        self.run(br)
    }

    fn is_on_branch(&self, f: &Formula) -> bool {
        self.on_branch.contains_key(&f.alpha_canonical())
    }

    /// Appends a node under the branch tip; returns whether it closes the branch.
    fn add(&mut self, br: &mut Branch, sentence: Formula, just: Justification) -> Step<bool> {
        if self.spent >= self.budget {
            return Err(Exhausted);
        }
        self.spent += 1;
        let canon = sentence.alpha_canonical();
        let id = self.nodes.len();
        let parent = if br.tip == usize::MAX { None } else { Some(br.tip) };
        br.tip = id;
        let partner = match &canon {
            Formula::Not(x) => self.on_branch.get(&**x).copied(),
            _ => None,
        }
        .or_else(|| self.on_branch.get(&Formula::not(canon.clone())).copied());
        if !self.on_branch.contains_key(&canon) {
            self.on_branch.insert(canon.clone(), id);
            self.undo.push(canon);
        }
        let closed = partner.is_some();
        if !closed {
            match &sentence {
                Formula::And(..) | Formula::Exists(..) | Formula::BoundedExists(..) => br.alpha.push_back(id),
                Formula::Not(_) if negation_rule(&sentence).is_some() => br.alpha.push_back(id),
                Formula::Or(..) | Formula::Implies(..) => br.betas.push(id),
                Formula::ForAll(..) | Formula::BoundedForAll(..) => br.gammas.push(Gamma { node: id, used: Vec::new() }),
                _ => {}
            }
            let mut terms = Vec::new();
            sentence.for_each_term(&mut |t| t.ground_subterms(&mut terms));
            for t in terms {
                if matches!(t, Term::Param(_)) || br.ground.contains(&t) {
                    continue;
                }
                let at = br.ground.iter().position(|g| g.size() > t.size()).unwrap_or(br.ground.len());
                br.ground.insert(at, t);
            }
        }
        self.nodes.push(Draft { parent, sentence, just });
        Ok(closed)
    }

    fn rewind(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let key = self.undo.pop().expect("mark within undo log");
            self.on_branch.remove(&key);
        }
    }

    fn closes(&self, f: &Formula) -> bool {
        let canon = f.alpha_canonical();
        if let Formula::Not(x) = &canon {
            if self.on_branch.contains_key(&**x) {
                return true;
            }
        }
        self.on_branch.contains_key(&Formula::not(canon))
    }

    fn run(&mut self, mut br: Branch) -> Step<bool> {
        loop {
            if let Some(id) = br.alpha.pop_front() {
                if self.expand_alpha(&mut br, id)? {
                    return Ok(true);
                }
                continue;
            }
            if let Some((id, rule_pair, left, right)) = self.pick_beta(&mut br) {
                let tip = br.tip;
                let mark = self.undo.len();
                let mut lb = br.clone();
                let just = |side| Justification::Rule { rule: rule_pair(side), ancestor: id };
                let closed = self.add(&mut lb, left, just(Side::Left))? || self.run(lb)?;
                self.rewind(mark);
                if !closed {
                    return Ok(false);
                }
                br.tip = tip;
                return Ok(self.add(&mut br, right, just(Side::Right))? || self.run(br)?);
            }
            match self.instantiate(&mut br)? {
                Some(true) => return Ok(true),
                Some(false) => continue,
                None => return Ok(false),
            }
        }
    }

    fn expand_alpha(&mut self, br: &mut Branch, id: usize) -> Step<bool> {
        let s = self.nodes[id].sentence.clone();
        let rules = match &s {
            Formula::And(..) => alloc::vec![Rule::Conjunction(Side::Left), Rule::Conjunction(Side::Right)],
            Formula::Not(_) => alloc::vec![Rule::Negation],
            Formula::Exists(..) => alloc::vec![Rule::Witness(self.fresh_param(br))],
            Formula::BoundedExists(..) => alloc::vec![Rule::BoundedWitness(self.fresh_param(br))],
            _ => return Ok(false),
        };
        for rule in rules {
            let Some(out) = derive(&rule, &s) else { continue };
            if self.is_on_branch(&out) {
                continue;
            }
            if self.add(br, out, Justification::Rule { rule, ancestor: id })? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn fresh_param(&mut self, br: &mut Branch) -> Symbol {
        self.next_param += 1;
        let name = Symbol::from(format!("p{}", self.next_param).as_str());
        br.params.push(Term::Param(name.clone()));
        name
    }

    /// Chooses a pending split, dropping splits already satisfied on the
    /// branch. Prefers splits with more children that close at once.
    #[allow(clippy::type_complexity)]
    fn pick_beta(&self, br: &mut Branch) -> Option<(usize, fn(Side) -> Rule, Formula, Formula)> {
        let parts = |f: &Formula| -> (fn(Side) -> Rule, Formula, Formula) {
            match f {
                Formula::Or(a, b) => (Rule::Disjunction, (**a).clone(), (**b).clone()),
                Formula::Implies(a, b) => (Rule::Implication, Formula::Not(a.clone()), (**b).clone()),
                _ => unreachable!("only splits are queued"),
            }
        };
        br.betas.retain(|&id| {
            let (_, l, r) = parts(&self.nodes[id].sentence);
            !self.is_on_branch(&l) && !self.is_on_branch(&r)
        });
        let mut best: Option<(usize, usize)> = None;
        for (pos, &id) in br.betas.iter().enumerate() {
            let (_, l, r) = parts(&self.nodes[id].sentence);
            let score = self.closes(&l) as usize + self.closes(&r) as usize;
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((pos, score));
            }
            if score == 2 {
                break;
            }
        }
        let (pos, _) = best?;
        let id = br.betas.remove(pos);
        let (rule, l, r) = parts(&self.nodes[id].sentence);
        Some((id, rule, l, r))
    }

    /// One instantiation of the least-used universal node. `None` when every
    /// universal node has exhausted its window or its candidates.
    fn instantiate(&mut self, br: &mut Branch) -> Step<Option<bool>> {
        loop {
            let w = self.term_window;
            let mut pick = None;
            for (gi, g) in br.gammas.iter().enumerate() {
                if g.used.len() >= w {
                    self.truncated = true;
                    continue;
                }
                if pick.is_none_or(|(_, n)| g.used.len() < n) {
                    pick = Some((gi, g.used.len()));
                }
            }
            let Some((gi, _)) = pick else { return Ok(None) };
            let Some(t) = self.next_term(br, &br.gammas[gi].used) else {
                // no candidate left: retire this node
                br.gammas[gi].used.resize(w, Term::Const(Constant::C0));
                continue;
            };
            br.gammas[gi].used.push(t.clone());
            let node = br.gammas[gi].node;
            let rule = match &self.nodes[node].sentence {
                Formula::ForAll(..) => Rule::Instance(t),
                _ => Rule::BoundedInstance(t),
            };
            let out = derive(&rule, &self.nodes[node].sentence).expect("universal node");
            if self.is_on_branch(&out) {
                continue;
            }
            return self.add(br, out, Justification::Rule { rule, ancestor: node }).map(Some);
        }
    }

    /// First pool term not in `used`: branch parameters, ground subterms by
    /// size, the constants, then function applications over earlier terms.
    fn next_term(&self, br: &Branch, used: &[Term]) -> Option<Term> {
        let mut cands: Vec<Term> = Vec::new();
        let mut seen = BTreeSet::new();
        let consts = [Constant::C0, Constant::C1, Constant::C2].map(Term::Const);
        for t in br.params.iter().chain(&br.ground).chain(consts.iter()) {
            if seen.insert(t.clone()) {
                cands.push(t.clone());
            }
        }
        loop {
            if let Some(t) = cands.iter().find(|t| !used.contains(t)) {
                return Some(t.clone());
            }
            let seeds: Vec<Term> = cands.iter().take(self.term_window).cloned().collect();
            let mut layer = Vec::new();
            for f in Func::ALL {
                for a in &seeds {
                    if f.arity() == 1 {
                        layer.push(Term::app(f, alloc::vec![a.clone()]));
                    } else {
                        for b in &seeds {
                            layer.push(Term::app(f, alloc::vec![a.clone(), b.clone()]));
                        }
                    }
                }
            }
            layer.sort_by_key(Term::size);
            let before = cands.len();
            for t in layer {
                if seen.insert(t.clone()) {
                    cands.push(t);
                }
            }
            if cands.len() == before {
                return None;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_formula;
    use crate::tableaux::{check_proof, proof_size};
    use alloc::vec;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn tautology() {
        let basis = AxiomBasis::empty();
        let found = prove(&f("C0 = C0 | ~(C0 = C0)"), &basis, EnrichmentLevel::None, 1000).unwrap();
        assert!(proof_size(&found.proof) <= 6);
        assert!(check_proof(&found.proof, &basis, EnrichmentLevel::None).is_valid());
    }

    #[test]
    fn false_atom_is_not_found() {
        let r = prove(&f("C0 = C1"), &AxiomBasis::empty(), EnrichmentLevel::None, 10_000);
        assert!(r.is_err());
    }

    #[test]
    fn instantiation() {
        let basis = AxiomBasis::new("b", vec![f("A x. x + C0 = x")]);
        let found = prove(&f("C2 + C0 = C2"), &basis, EnrichmentLevel::None, 1000).unwrap();
        assert!(proof_size(&found.proof) <= 4);
        assert!(check_proof(&found.proof, &basis, EnrichmentLevel::None).is_valid());
    }

    #[test]
    fn quantifier_reasoning() {
        let basis = AxiomBasis::new("b", vec![f("A x. E y. x <= y"), f("A x. A y. x <= y -> ~(y <= x) | x = y")]);
        let goal = f("E z. C1 <= z");
        let found = prove(&goal, &basis, EnrichmentLevel::None, 50_000).unwrap();
        assert!(check_proof(&found.proof, &basis, EnrichmentLevel::None).is_valid());
    }

    #[test]
    fn budget_is_monotone() {
        let basis = AxiomBasis::new("b", vec![f("A x. x + C0 = x"), f("A x. x <= x + C1")]);
        let goal = f("C2 <= C2 + C1 & C1 + C0 = C1");
        let small = prove(&goal, &basis, EnrichmentLevel::None, 200).unwrap();
        let large = prove(&goal, &basis, EnrichmentLevel::None, 20_000).unwrap();
        assert_eq!(small.proof, large.proof);
        assert_eq!(small.expansions, large.expansions);
    }

    #[test]
    fn chain_uses_splits() {
        let basis = AxiomBasis::new(
            "chain",
            vec![f("C0 = C0"), f("C0 = C0 -> C1 = C1"), f("C1 = C1 -> C2 = C2")],
        );
        let found = prove(&f("C2 = C2"), &basis, EnrichmentLevel::None, 1000).unwrap();
        assert_eq!(proof_size(&found.proof), 1 + 3 + 4);
        assert!(check_proof(&found.proof, &basis, EnrichmentLevel::None).is_valid());
    }
}
