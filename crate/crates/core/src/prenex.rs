//! Quantifier classes and Prenex* normalization.
//!
//! Only unbounded quantifiers count toward the rank; bounded quantifiers
//! stay inside the matrix.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::lang::{Formula, Quantifier, Symbol, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Delta0,
    Pi(u32),
    Sigma(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrenexClass {
    pub shape: Shape,
    /// The rank is the least one the syntax attains.
    pub minimal: bool,
}

impl PrenexClass {
    /// Membership in the Π class of rank `k`, respecting the inclusions
    /// `Δ0 ⊆ Π0`, `Π_i ⊆ Π_{i+1}` and `Σ_i ⊆ Π_{i+1}`.
    pub fn is_pi(&self, k: u32) -> bool {
        match self.shape {
            Shape::Delta0 => true,
            Shape::Pi(i) => i <= k,
            Shape::Sigma(i) => i < k,
        }
    }

    pub fn is_sigma(&self, k: u32) -> bool {
        match self.shape {
            Shape::Delta0 => true,
            Shape::Sigma(i) => i <= k,
            Shape::Pi(i) => i < k,
        }
    }

    /// In `Π_k ∪ Σ_k`.
    pub fn within_rank(&self, k: u32) -> bool {
        self.is_pi(k) || self.is_sigma(k)
    }

    pub fn rank(&self) -> u32 {
        match self.shape {
            Shape::Delta0 => 0,
            Shape::Pi(i) | Shape::Sigma(i) => i,
        }
    }
}

impl fmt::Display for PrenexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shape {
            Shape::Delta0 => f.write_str("Delta0"),
            Shape::Pi(i) => write!(f, "Pi({i})"),
            Shape::Sigma(i) => write!(f, "Sigma({i})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrenexError {
    /// An unbounded quantifier occurs inside the matrix; use [`to_prenex`].
    NotPrenex,
    NotClosed,
}

impl fmt::Display for PrenexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrenexError::NotPrenex => f.write_str("not in Prenex* form (normalize it first)"),
            PrenexError::NotClosed => f.write_str("formula has free variables"),
        }
    }
}

impl core::error::Error for PrenexError {}

/// Splits a formula into its leading unbounded-quantifier prefix and the rest.
pub fn split_prefix(f: &Formula) -> (Vec<(Quantifier, &Symbol)>, &Formula) {
    let mut prefix = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::ForAll(v, b) => {
                prefix.push((Quantifier::All, v));
                cur = b;
            }
            Formula::Exists(v, b) => {
                prefix.push((Quantifier::Ex, v));
                cur = b;
            }
            _ => return (prefix, cur),
        }
    }
}

/// Classifies a sentence already in Prenex* form.
pub fn classify(s: &Formula) -> Result<PrenexClass, PrenexError> {
    if !s.is_closed() {
        return Err(PrenexError::NotClosed);
    }
    classify_shape(s)
}

/// Like [`classify`] but does not insist on closure; free variables are
/// treated as outermost-universal parameters of the matrix.
pub fn classify_shape(f: &Formula) -> Result<PrenexClass, PrenexError> {
    let (prefix, matrix) = split_prefix(f);
    if !matrix.is_delta0() {
        return Err(PrenexError::NotPrenex);
    }
    let Some(&(first, _)) = prefix.first() else {
        return Ok(PrenexClass { shape: Shape::Delta0, minimal: true });
    };
    let blocks = 1 + prefix.windows(2).filter(|w| w[0].0 != w[1].0).count() as u32;
    let shape = match first {
        Quantifier::All => Shape::Pi(blocks),
        Quantifier::Ex => Shape::Sigma(blocks),
    };
    Ok(PrenexClass { shape, minimal: true })
}

pub fn is_prenex(f: &Formula) -> bool {
    classify_shape(f).is_ok()
}

/// Maps a closed formula to an equivalent Prenex* sentence.
///
/// Binders are renamed apart, then unbounded quantifiers are pulled out
/// left to right, outermost first. Negation and implication antecedents
/// flip them. A bounded quantifier whose body still contains an unbounded
/// one is unfolded to `A v. v <= t -> ...` / `E v. v <= t & ...` so that its
/// variable can join the prefix; a bounded quantifier over a bounded body
/// stays in the matrix.
pub fn to_prenex(f: &Formula) -> Formula {
    let mut used = crate::lang::free_vars(f);
    let renamed = rename_apart(f, &mut used, &mut Vec::new());
    let (prefix, matrix) = extract(&renamed);
    prefix
        .into_iter()
        .rev()
        .fold(matrix, |acc, (q, v)| Formula::quantified(q, v, None, Arc::new(acc)))
}

fn fresh_name(base: &Symbol, used: &mut BTreeSet<Symbol>) -> Symbol {
    if used.insert(base.clone()) {
        return base.clone();
    }
    let stem: &str = match base.rfind('_') {
        Some(i) if base[i + 1..].chars().all(|c| c.is_ascii_digit()) && i + 1 < base.len() => &base[..i],
        _ => base,
    };
    (1usize..)
        .map(|k| {
            let mut s = String::from(stem);
            s.push('_');
            s.push_str(&alloc::format!("{k}"));
            Symbol::from(s.as_str())
        })
        .find(|cand| used.insert(cand.clone()))
        .expect("unbounded supply of names")
}

fn rename_term(t: &Term, scope: &[(Symbol, Symbol)]) -> Term {
    match t {
        Term::Var(v) => match scope.iter().rev().find(|(from, _)| from == v) {
            Some((_, to)) => Term::Var(to.clone()),
            None => t.clone(),
        },
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| rename_term(a, scope)).collect()),
        _ => t.clone(),
    }
}

fn rename_apart(f: &Formula, used: &mut BTreeSet<Symbol>, scope: &mut Vec<(Symbol, Symbol)>) -> Formula {
    match f {
        Formula::Atom(a) => Formula::atom(rename_term(&a.lhs, scope), a.rel, rename_term(&a.rhs, scope)),
        Formula::Not(g) => Formula::not(rename_apart(g, used, scope)),
        Formula::And(a, b) => Formula::and(rename_apart(a, used, scope), rename_apart(b, used, scope)),
        Formula::Or(a, b) => Formula::or(rename_apart(a, used, scope), rename_apart(b, used, scope)),
        Formula::Implies(a, b) => Formula::implies(rename_apart(a, used, scope), rename_apart(b, used, scope)),
        _ => {
            let (q, v, bound, body) = f.as_quantifier().expect("quantifier");
            let bound = bound.map(|t| rename_term(t, scope));
            let fresh = fresh_name(v, used);
            scope.push((v.clone(), fresh.clone()));
            let body = rename_apart(body, used, scope);
            scope.pop();
            Formula::quantified(q, fresh, bound, Arc::new(body))
        }
    }
}

type Prefix = Vec<(Quantifier, Symbol)>;

fn flip(prefix: Prefix) -> Prefix {
    prefix.into_iter().map(|(q, v)| (q.dual(), v)).collect()
}

fn extract(f: &Formula) -> (Prefix, Formula) {
    if f.is_delta0() {
        return (Vec::new(), f.clone());
    }
    match f {
        Formula::Atom(_) => unreachable!("atoms are bounded"),
        Formula::Not(g) => {
            let (p, m) = extract(g);
            (flip(p), Formula::not(m))
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (mut pa, ma) = extract(a);
            let (pb, mb) = extract(b);
            pa.extend(pb);
            let m = if matches!(f, Formula::And(..)) { Formula::and(ma, mb) } else { Formula::or(ma, mb) };
            (pa, m)
        }
        Formula::Implies(a, b) => {
            let (pa, ma) = extract(a);
            let (pb, mb) = extract(b);
            let mut p = flip(pa);
            p.extend(pb);
            (p, Formula::implies(ma, mb))
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            let q = if matches!(f, Formula::ForAll(..)) { Quantifier::All } else { Quantifier::Ex };
            let (p, m) = extract(body);
            let mut prefix = alloc::vec![(q, v.clone())];
            prefix.extend(p);
            (prefix, m)
        }
        Formula::BoundedForAll(v, t, body) => {
            let (p, m) = extract(body);
            let mut prefix = alloc::vec![(Quantifier::All, v.clone())];
            prefix.extend(p);
            (prefix, Formula::implies(Formula::le(Term::Var(v.clone()), t.clone()), m))
        }
        Formula::BoundedExists(v, t, body) => {
            let (p, m) = extract(body);
            let mut prefix = alloc::vec![(Quantifier::Ex, v.clone())];
            prefix.extend(p);
            (prefix, Formula::and(Formula::le(Term::Var(v.clone()), t.clone()), m))
        }
    }
}

/// Replaces every unbounded quantifier with one bounded by `bound`.
pub fn truncate(f: &Formula, bound: &Term) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(truncate(g, bound)),
        Formula::And(a, b) => Formula::and(truncate(a, bound), truncate(b, bound)),
        Formula::Or(a, b) => Formula::or(truncate(a, bound), truncate(b, bound)),
        Formula::Implies(a, b) => Formula::implies(truncate(a, bound), truncate(b, bound)),
        Formula::ForAll(v, b) => Formula::BoundedForAll(v.clone(), bound.clone(), Arc::new(truncate(b, bound))),
        Formula::Exists(v, b) => Formula::BoundedExists(v.clone(), bound.clone(), Arc::new(truncate(b, bound))),
        Formula::BoundedForAll(v, t, b) => Formula::BoundedForAll(v.clone(), t.clone(), Arc::new(truncate(b, bound))),
        Formula::BoundedExists(v, t, b) => Formula::BoundedExists(v.clone(), t.clone(), Arc::new(truncate(b, bound))),
    }
}
