//! Bounded refutation searches and the meta-level `Pair` / `Prf` predicates.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::lang::{decode_formula, Constant, Formula, Func, Godel, GodelNumber, Term};
use crate::prenex::classify;
use crate::tableaux::{check_proof, prove, Proof};

use super::GeneralizedArithmetic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConsistencyMode {
    /// Look for a proof of `C0 = C1`.
    Level0Minus,
    /// Look for a `Π_n` sentence proved together with its negation.
    Level(u32),
}

impl fmt::Display for ConsistencyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyMode::Level0Minus => write!(f, "level0-"),
            ConsistencyMode::Level(n) => write!(f, "level{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    /// `C0 = C1`, or the sentence `Υ` proved alongside `¬Υ`.
    pub sentence: Formula,
    pub proof: Proof,
    pub negation_proof: Option<Proof>,
    /// `(⌈Υ⌉, ⌈¬Υ⌉)` for a contradictory pair.
    pub pair: Option<(GodelNumber, GodelNumber)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    /// Nothing found within `budget` node expansions. Not a consistency claim.
    NoRefutationFound { budget: u64, expansions: u64 },
    RefutationFound(Refutation),
}

impl SearchVerdict {
    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            SearchVerdict::RefutationFound(r) => Some(r),
            _ => None,
        }
    }
}

pub fn consistency_search(g: &GeneralizedArithmetic, mode: ConsistencyMode, budget: u64) -> SearchVerdict {
    match mode {
        ConsistencyMode::Level0Minus => {
            let goal = Formula::eq(Term::Const(Constant::C0), Term::Const(Constant::C1));
            match prove(&goal, &g.basis, g.level, budget) {
                Ok(found) => SearchVerdict::RefutationFound(Refutation {
                    sentence: goal,
                    proof: found.proof,
                    negation_proof: None,
                    pair: None,
                }),
                Err(e) => SearchVerdict::NoRefutationFound { budget, expansions: e.expansions },
            }
        }
        ConsistencyMode::Level(n) => level_search(g, n, budget),
    }
}

struct Candidate {
    sentence: Formula,
    proof: Option<Proof>,
    negation_proof: Option<Proof>,
}

/// Stage `s` admits more candidates and doubles the per-attempt budget.
/// Candidates come from the basis axioms of rank at most `n`, then from a
/// size-ordered stream of ground atoms; a candidate already proved on one
/// side is retried first.
fn level_search(g: &GeneralizedArithmetic, n: u32, budget: u64) -> SearchVerdict {
    let mut stream = CandidateStream::new(g, n);
    let mut cands: Vec<Candidate> = Vec::new();
    let mut spent = 0u64;
    for stage in 1u32.. {
        let attempt = 32u64 << stage.min(40);
        while cands.len() < 4 * stage as usize {
            match stream.next() {
                Some(s) => cands.push(Candidate { sentence: s, proof: None, negation_proof: None }),
                None => break,
            }
        }
        if cands.is_empty() {
            return SearchVerdict::NoRefutationFound { budget, expansions: spent };
        }
        let mut order: Vec<usize> = (0..cands.len()).collect();
        order.sort_by_key(|&i| !(cands[i].proof.is_some() || cands[i].negation_proof.is_some()));
        for i in order {
            for negated in [false, true] {
                let c = &mut cands[i];
                let slot = if negated { &mut c.negation_proof } else { &mut c.proof };
                if slot.is_some() {
                    continue;
                }
                let left = budget - spent;
                if left == 0 {
                    return SearchVerdict::NoRefutationFound { budget, expansions: spent };
                }
                let goal = if negated { Formula::not(c.sentence.clone()) } else { c.sentence.clone() };
                match prove(&goal, &g.basis, g.level, attempt.min(left)) {
                    Ok(found) => {
                        spent += found.expansions;
                        *slot = Some(found.proof);
                    }
                    Err(e) => spent += e.expansions.max(1),
                }
                if let (Some(p), Some(q)) = (&c.proof, &c.negation_proof) {
                    let x = c.sentence.godel_number();
                    let y = Formula::not(c.sentence.clone()).godel_number();
                    return SearchVerdict::RefutationFound(Refutation {
                        sentence: c.sentence.clone(),
                        proof: p.clone(),
                        negation_proof: Some(q.clone()),
                        pair: Some((x, y)),
                    });
                }
            }
        }
    }
    unreachable!()
}

struct CandidateStream {
    axioms: Vec<Formula>,
    seen: BTreeSet<Formula>,
    terms: Vec<Term>,
    next_atom: usize,
}

impl CandidateStream {
    fn new(g: &GeneralizedArithmetic, n: u32) -> Self {
        let axioms = g
            .basis
            .iter()
            .filter(|a| a.is_sentence() && classify(a).is_ok_and(|c| c.is_pi(n)))
            .cloned()
            .collect();
        let mut terms: Vec<Term> = [Constant::C0, Constant::C1, Constant::C2].map(Term::Const).to_vec();
        let base = terms.clone();
        for f in Func::ALL {
            for a in &base {
                if f.arity() == 1 {
                    terms.push(Term::app(f, alloc::vec![a.clone()]));
                } else {
                    for b in &base {
                        terms.push(Term::app(f, alloc::vec![a.clone(), b.clone()]));
                    }
                }
            }
        }
        CandidateStream { axioms, seen: BTreeSet::new(), terms, next_atom: 0 }
    }
}

impl Iterator for CandidateStream {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        loop {
            let f = if !self.axioms.is_empty() {
                self.axioms.remove(0)
            } else {
                // atoms `s = t` and `s <= t` over the term list, by index sum
                let k = self.next_atom;
                self.next_atom += 1;
                let n = self.terms.len();
                let pairs = n * n;
                if k >= 2 * pairs {
                    return None;
                }
                let (rel, k) = (k % 2, k / 2);
                let (i, j) = diagonal(k, n)?;
                let (s, t) = (self.terms[i].clone(), self.terms[j].clone());
                if rel == 0 { Formula::eq(s, t) } else { Formula::le(s, t) }
            };
            if self.seen.insert(f.clone()) {
                return Some(f);
            }
        }
    }
}

/// The `k`-th pair `(i, j)` with `i, j < n`, ordered by `i + j`.
fn diagonal(k: usize, n: usize) -> Option<(usize, usize)> {
    let mut k = k;
    for sum in 0..2 * n - 1 {
        let lo = sum.saturating_sub(n - 1);
        let hi = sum.min(n - 1);
        let width = hi - lo + 1;
        if k < width {
            return Some((lo + k, sum - lo - k));
        }
        k -= width;
    }
    None
}

/// Whether `x` codes a `Π_1` sentence `Φ` and `y` codes `¬Φ`.
pub fn pair_meta(x: &GodelNumber, y: &GodelNumber) -> bool {
    pair_meta_at(1, x, y)
}

/// [`pair_meta`] for `Π_n` sentences.
pub fn pair_meta_at(n: u32, x: &GodelNumber, y: &GodelNumber) -> bool {
    let Ok(phi) = decode_formula(x) else { return false };
    phi.is_sentence()
        && classify(&phi).is_ok_and(|c| c.is_pi(n))
        && Formula::not(phi).godel_number() == *y
}

/// Whether `p` is a valid proof, from `g`'s basis at `g`'s level, of the
/// sentence coded by `phi`.
pub fn prf_meta(g: &GeneralizedArithmetic, phi: &GodelNumber, p: &Proof) -> bool {
    match decode_formula(phi) {
        Ok(f) => p.goal == f && check_proof(p, &g.basis, g.level).is_valid(),
        Err(_) => false,
    }
}
