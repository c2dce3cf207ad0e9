#![allow(dead_code)]

use std::collections::BTreeSet;

use lstar::lang::{encode_u64, Constant, Formula, Func, Rel, Term};
use proptest::prelude::*;
use proptest::strategy::{BoxedStrategy, Union};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn constant() -> impl Strategy<Value = Term> {
    prop_oneof![Just(Constant::C0), Just(Constant::C1), Just(Constant::C2)].prop_map(Term::Const)
}

pub fn var() -> impl Strategy<Value = String> {
    proptest::sample::select(VARS.to_vec()).prop_map(String::from)
}

pub fn func() -> impl Strategy<Value = Func> {
    proptest::sample::select(Func::ALL.to_vec())
}

pub fn term_with(leaf: BoxedStrategy<Term>, depth: u32) -> BoxedStrategy<Term> {
    leaf.prop_recursive(depth, 12, 2, |inner| {
        (func(), inner.clone(), inner).prop_map(|(f, a, b)| {
            let args = if f.arity() == 1 { vec![a] } else { vec![a, b] };
            Term::app(f, args)
        })
    })
    .boxed()
}

pub fn term() -> BoxedStrategy<Term> {
    term_with(prop_oneof![constant(), var().prop_map(|v| Term::var(&v))].boxed(), 2)
}

/// Terms built from constants and `params` only.
pub fn ground_term(params: Vec<&'static str>) -> BoxedStrategy<Term> {
    let leaf = if params.is_empty() {
        constant().boxed()
    } else {
        prop_oneof![constant(), proptest::sample::select(params).prop_map(Term::param)].boxed()
    };
    term_with(leaf, 2)
}

pub fn atom_with(t: BoxedStrategy<Term>) -> BoxedStrategy<Formula> {
    (t.clone(), any::<bool>(), t)
        .prop_map(|(a, eq, b)| Formula::atom(a, if eq { Rel::Eq } else { Rel::Le }, b))
        .boxed()
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub unbounded: bool,
    /// Largest literal numeral allowed as a quantifier bound.
    pub max_bound: u64,
    pub depth: u32,
}

fn bound(max_bound: u64) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = vec![constant().boxed(), var().prop_map(|v| Term::var(&v)).boxed()];
    if max_bound > 2 {
        leaves.push((0..=max_bound).prop_map(encode_u64).boxed());
    }
    Union::new(leaves).boxed()
}

/// Open formulas over `x, y, z`; bounds are single constants, numerals or
/// variables so enumeration stays small.
pub fn formula(shape: Shape) -> BoxedStrategy<Formula> {
    let leaf = atom_with(term());
    leaf.prop_recursive(shape.depth, 24, 2, move |inner| {
        let mut arms: Vec<BoxedStrategy<Formula>> = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
            (var(), bound(shape.max_bound), inner.clone(), any::<bool>())
                .prop_map(|(v, t, b, all)| {
                    // a bound may not mention its own variable
                    let t = if t.contains_var(&v) { Term::Const(Constant::C2) } else { t };
                    if all {
                        Formula::bounded_forall(&v, t, b)
                    } else {
                        Formula::bounded_exists(&v, t, b)
                    }
                })
                .boxed(),
        ];
        if shape.unbounded {
            arms.push(
                (var(), inner, any::<bool>())
                    .prop_map(|(v, b, all)| if all { Formula::forall(&v, b) } else { Formula::exists(&v, b) })
                    .boxed(),
            );
        }
        Union::new(arms)
    })
    .boxed()
}

/// Closes free variables with `A v <= C2.` so Δ₀ formulas stay Δ₀.
pub fn close_bounded(f: Formula) -> Formula {
    let free: BTreeSet<_> = f.free_vars();
    free.iter()
        .rev()
        .fold(f, |acc, v| Formula::bounded_forall(v, Term::Const(Constant::C2), acc))
}

pub fn delta0_sentence(max_bound: u64, depth: u32) -> BoxedStrategy<Formula> {
    formula(Shape { unbounded: false, max_bound, depth }).prop_map(close_bounded).boxed()
}

pub fn sentence(depth: u32) -> BoxedStrategy<Formula> {
    formula(Shape { unbounded: true, max_bound: 2, depth }).prop_map(close_bounded).boxed()
}

/// Closes every free variable except `keep`.
pub fn close_except(f: Formula, keep: &str) -> Formula {
    let free: BTreeSet<_> = f.free_vars();
    free.iter()
        .rev()
        .filter(|v| &***v != keep)
        .fold(f, |acc, v| Formula::bounded_forall(v, Term::Const(Constant::C2), acc))
}
