//! Abstract syntax of terms and formulas.

use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Interned-ish name of a variable or parameter. Cheap to clone.
pub type Symbol = Arc<str>;

/// The three constant symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    C0,
    C1,
    C2,
}

impl Constant {
    pub fn value(self) -> u32 {
        match self {
            Constant::C0 => 0,
            Constant::C1 => 1,
            Constant::C2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::C0 => "C0",
            Constant::C1 => "C1",
            Constant::C2 => "C2",
        }
    }
}

/// The ten U-Grounding function symbols.
///
/// The first eight are non-growth functions; `Add` and `Double` are the two
/// growth functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sub,
    Div,
    Pred,
    Max,
    Log,
    Root,
    Count,
    Bit,
    Add,
    Double,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sub,
        Func::Div,
        Func::Pred,
        Func::Max,
        Func::Log,
        Func::Root,
        Func::Count,
        Func::Bit,
        Func::Add,
        Func::Double,
    ];

    /// The eight non-growth grounding functions.
    pub const GROUNDING: [Func; 8] = [
        Func::Sub,
        Func::Div,
        Func::Pred,
        Func::Max,
        Func::Log,
        Func::Root,
        Func::Count,
        Func::Bit,
    ];

    pub fn arity(self) -> usize {
        match self {
            Func::Pred | Func::Log | Func::Double => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sub => "sub",
            Func::Div => "div",
            Func::Pred => "pred",
            Func::Max => "max",
            Func::Log => "log",
            Func::Root => "root",
            Func::Count => "count",
            Func::Bit => "bit",
            Func::Add => "add",
            Func::Double => "double",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn is_growth(self) -> bool {
        matches!(self, Func::Add | Func::Double)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(Constant),
    Var(Symbol),
    /// A parameter symbol introduced by the existential tableaux rules.
    Param(Symbol),
    App(Func, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Symbol::from(name))
    }

    pub fn param(name: &str) -> Term {
        Term::Param(Symbol::from(name))
    }

    /// Builds a function application. Panics when the argument count does
    /// not match the symbol's arity.
    pub fn app(func: Func, args: Vec<Term>) -> Term {
        assert_eq!(args.len(), func.arity(), "arity mismatch for {}", func.name());
        Term::App(func, args)
    }

    pub fn unary(func: Func, a: Term) -> Term {
        Term::app(func, alloc::vec![a])
    }

    pub fn binary(func: Func, a: Term, b: Term) -> Term {
        Term::app(func, alloc::vec![a, b])
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::binary(Func::Add, a, b)
    }

    pub fn double(a: Term) -> Term {
        Term::unary(Func::Double, a)
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::binary(Func::Sub, a, b)
    }

    pub fn div(a: Term, b: Term) -> Term {
        Term::binary(Func::Div, a, b)
    }

    /// Number of symbol occurrences in the term.
    pub fn size(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            _ => 1,
        }
    }

    /// Number of function-symbol occurrences.
    pub fn function_count(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::function_count).sum::<usize>(),
            _ => 0,
        }
    }

    /// A term without variables: built from constants, parameters and
    /// grounding-function applications.
    pub fn is_grounded(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_grounded),
            _ => true,
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => &**v == name,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(name)),
            _ => false,
        }
    }

    pub fn contains_param(&self, name: &str) -> bool {
        match self {
            Term::Param(p) => &**p == name,
            Term::App(_, args) => args.iter().any(|a| a.contains_param(name)),
            _ => false,
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            _ => {}
        }
    }

    pub fn collect_params(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Param(p) => {
                out.insert(p.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_params(out)),
            _ => {}
        }
    }

    /// Replaces every occurrence of variable `name` with `by`.
    pub fn subst(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if &**v == name => by.clone(),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.subst(name, by)).collect()),
            _ => self.clone(),
        }
    }

    pub fn rename_var(&self, from: &str, to: &Symbol) -> Term {
        self.subst(from, &Term::Var(to.clone()))
    }

    /// Applies `f` to every parameter symbol.
    pub fn map_params(&self, f: &mut dyn FnMut(&Symbol) -> Symbol) -> Term {
        match self {
            Term::Param(p) => Term::Param(f(p)),
            Term::App(func, args) => Term::App(*func, args.iter().map(|a| a.map_params(f)).collect()),
            _ => self.clone(),
        }
    }

    /// Ground subterms in post-order (children before parents).
    pub fn ground_subterms(&self, out: &mut Vec<Term>) {
        if let Term::App(_, args) = self {
            args.iter().for_each(|a| a.ground_subterms(out));
        }
        if self.is_grounded() {
            out.push(self.clone());
        }
    }
}

impl From<Constant> for Term {
    fn from(c: Constant) -> Term {
        Term::Const(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    Eq,
    Le,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Le => "<=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub lhs: Term,
    pub rel: Rel,
    pub rhs: Term,
}

/// A formula of the language. Subformulas are shared through `Arc`, so
/// decomposition by the tableaux rules never copies whole trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
    ForAll(Symbol, Arc<Formula>),
    Exists(Symbol, Arc<Formula>),
    BoundedForAll(Symbol, Term, Arc<Formula>),
    BoundedExists(Symbol, Term, Arc<Formula>),
}

/// Quantifier kind, used when a formula's quantifier is inspected generically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantifier {
    All,
    Ex,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::All => Quantifier::Ex,
            Quantifier::Ex => Quantifier::All,
        }
    }
}

impl Formula {
    pub fn atom(lhs: Term, rel: Rel, rhs: Term) -> Formula {
        Formula::Atom(Atom { lhs, rel, rhs })
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::atom(lhs, Rel::Eq, rhs)
    }

    pub fn le(lhs: Term, rhs: Term) -> Formula {
        Formula::atom(lhs, Rel::Le, rhs)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::ForAll(Symbol::from(v), Arc::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(Symbol::from(v), Arc::new(body))
    }

    pub fn bounded_forall(v: &str, bound: Term, body: Formula) -> Formula {
        Formula::BoundedForAll(Symbol::from(v), bound, Arc::new(body))
    }

    pub fn bounded_exists(v: &str, bound: Term, body: Formula) -> Formula {
        Formula::BoundedExists(Symbol::from(v), bound, Arc::new(body))
    }

    /// Left-nested conjunction of a non-empty list, matching how `&` parses.
    pub fn conj(parts: Vec<Formula>) -> Formula {
        let mut it = parts.into_iter();
        let first = it.next().expect("empty conjunction");
        it.fold(first, Formula::and)
    }

    /// Wraps the formula in universal quantifiers, outermost first.
    pub fn forall_many(vars: &[&str], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, v| Formula::forall(v, acc))
    }

    pub fn negated(&self) -> Formula {
        Formula::Not(Arc::new(self.clone()))
    }

    /// Returns the quantifier parts `(kind, var, bound, body)` when the
    /// formula is quantified.
    pub fn as_quantifier(&self) -> Option<(Quantifier, &Symbol, Option<&Term>, &Arc<Formula>)> {
        match self {
            Formula::ForAll(v, b) => Some((Quantifier::All, v, None, b)),
            Formula::Exists(v, b) => Some((Quantifier::Ex, v, None, b)),
            Formula::BoundedForAll(v, t, b) => Some((Quantifier::All, v, Some(t), b)),
            Formula::BoundedExists(v, t, b) => Some((Quantifier::Ex, v, Some(t), b)),
            _ => None,
        }
    }

    pub fn quantified(q: Quantifier, v: Symbol, bound: Option<Term>, body: Arc<Formula>) -> Formula {
        match (q, bound) {
            (Quantifier::All, None) => Formula::ForAll(v, body),
            (Quantifier::Ex, None) => Formula::Exists(v, body),
            (Quantifier::All, Some(t)) => Formula::BoundedForAll(v, t, body),
            (Quantifier::Ex, Some(t)) => Formula::BoundedExists(v, t, body),
        }
    }

    /// Number of connectives, quantifiers and atoms plus term sizes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(a) => 1 + a.lhs.size() + a.rhs.size(),
            Formula::Not(f) => 1 + f.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.size() + b.size(),
            Formula::ForAll(_, b) | Formula::Exists(_, b) => 1 + b.size(),
            Formula::BoundedForAll(_, t, b) | Formula::BoundedExists(_, t, b) => 1 + t.size() + b.size(),
        }
    }

    /// Variables occurring free. The variables of a bounded quantifier's
    /// bound term count as free occurrences.
    pub fn free_vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<Symbol>, out: &mut BTreeSet<Symbol>) {
        let push_term = |t: &Term, bound: &Vec<Symbol>, out: &mut BTreeSet<Symbol>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Atom(a) => {
                push_term(&a.lhs, bound, out);
                push_term(&a.rhs, bound, out);
            }
            Formula::Not(f) => f.collect_free_vars(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free_vars(bound, out);
                b.collect_free_vars(bound, out);
            }
            Formula::ForAll(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                b.collect_free_vars(bound, out);
                bound.pop();
            }
            Formula::BoundedForAll(v, t, b) | Formula::BoundedExists(v, t, b) => {
                push_term(t, bound, out);
                bound.push(v.clone());
                b.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All parameter symbols occurring anywhere in the formula.
    pub fn params(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.for_each_term(&mut |t| t.collect_params(&mut out));
        out
    }

    pub fn contains_param(&self, name: &str) -> bool {
        let mut found = false;
        self.for_each_term(&mut |t| found |= t.contains_param(name));
        found
    }

    /// A sentence: closed and free of parameter symbols.
    pub fn is_sentence(&self) -> bool {
        self.is_closed() && self.params().is_empty()
    }

    /// Visits every term occurring in the formula (atom sides and bounds).
    pub fn for_each_term(&self, f: &mut dyn FnMut(&Term)) {
        match self {
            Formula::Atom(a) => {
                f(&a.lhs);
                f(&a.rhs);
            }
            Formula::Not(g) => g.for_each_term(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.for_each_term(f);
                b.for_each_term(f);
            }
            Formula::ForAll(_, b) | Formula::Exists(_, b) => b.for_each_term(f),
            Formula::BoundedForAll(_, t, b) | Formula::BoundedExists(_, t, b) => {
                f(t);
                b.for_each_term(f);
            }
        }
    }

    /// True when every quantifier is bounded.
    pub fn is_delta0(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(f) => f.is_delta0(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.is_delta0() && b.is_delta0(),
            Formula::ForAll(..) | Formula::Exists(..) => false,
            Formula::BoundedForAll(_, _, b) | Formula::BoundedExists(_, _, b) => b.is_delta0(),
        }
    }

    /// Substitutes `by` for the free occurrences of variable `name`.
    ///
    /// `by` must not contain variables that are bound inside the formula;
    /// the tableaux rules only substitute grounded terms, which satisfy this.
    pub fn subst(&self, name: &str, by: &Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                lhs: a.lhs.subst(name, by),
                rel: a.rel,
                rhs: a.rhs.subst(name, by),
            }),
            Formula::Not(f) => Formula::Not(Arc::new(f.subst(name, by))),
            Formula::And(a, b) => Formula::And(Arc::new(a.subst(name, by)), Arc::new(b.subst(name, by))),
            Formula::Or(a, b) => Formula::Or(Arc::new(a.subst(name, by)), Arc::new(b.subst(name, by))),
            Formula::Implies(a, b) => Formula::Implies(Arc::new(a.subst(name, by)), Arc::new(b.subst(name, by))),
            Formula::ForAll(v, _) | Formula::Exists(v, _) if &**v == name => self.clone(),
            Formula::ForAll(v, b) => Formula::ForAll(v.clone(), Arc::new(b.subst(name, by))),
            Formula::Exists(v, b) => Formula::Exists(v.clone(), Arc::new(b.subst(name, by))),
            Formula::BoundedForAll(v, t, b) => {
                let body = if &**v == name { b.clone() } else { Arc::new(b.subst(name, by)) };
                Formula::BoundedForAll(v.clone(), t.subst(name, by), body)
            }
            Formula::BoundedExists(v, t, b) => {
                let body = if &**v == name { b.clone() } else { Arc::new(b.subst(name, by)) };
                Formula::BoundedExists(v.clone(), t.subst(name, by), body)
            }
        }
    }

    /// Applies `f` to every parameter symbol.
    pub fn map_params(&self, f: &mut dyn FnMut(&Symbol) -> Symbol) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                lhs: a.lhs.map_params(f),
                rel: a.rel,
                rhs: a.rhs.map_params(f),
            }),
            Formula::Not(g) => Formula::Not(Arc::new(g.map_params(f))),
            Formula::And(a, b) => Formula::And(Arc::new(a.map_params(f)), Arc::new(b.map_params(f))),
            Formula::Or(a, b) => Formula::Or(Arc::new(a.map_params(f)), Arc::new(b.map_params(f))),
            Formula::Implies(a, b) => Formula::Implies(Arc::new(a.map_params(f)), Arc::new(b.map_params(f))),
            Formula::ForAll(v, b) => Formula::ForAll(v.clone(), Arc::new(b.map_params(f))),
            Formula::Exists(v, b) => Formula::Exists(v.clone(), Arc::new(b.map_params(f))),
            Formula::BoundedForAll(v, t, b) => Formula::BoundedForAll(v.clone(), t.map_params(f), Arc::new(b.map_params(f))),
            Formula::BoundedExists(v, t, b) => Formula::BoundedExists(v.clone(), t.map_params(f), Arc::new(b.map_params(f))),
        }
    }

    /// Alpha-canonical form: bound variables renamed by binding depth.
    /// Two formulas are alpha-equivalent iff their canonical forms are equal.
    pub fn alpha_canonical(&self) -> Formula {
        self.canon(&mut Vec::new())
    }

    fn canon(&self, scope: &mut Vec<(Symbol, Symbol)>) -> Formula {
        fn canon_term(t: &Term, scope: &[(Symbol, Symbol)]) -> Term {
            match t {
                Term::Var(v) => match scope.iter().rev().find(|(from, _)| from == v) {
                    Some((_, to)) => Term::Var(to.clone()),
                    None => t.clone(),
                },
                Term::App(f, args) => Term::App(*f, args.iter().map(|a| canon_term(a, scope)).collect()),
                _ => t.clone(),
            }
        }
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                lhs: canon_term(&a.lhs, scope),
                rel: a.rel,
                rhs: canon_term(&a.rhs, scope),
            }),
            Formula::Not(f) => Formula::Not(Arc::new(f.canon(scope))),
            Formula::And(a, b) => Formula::And(Arc::new(a.canon(scope)), Arc::new(b.canon(scope))),
            Formula::Or(a, b) => Formula::Or(Arc::new(a.canon(scope)), Arc::new(b.canon(scope))),
            Formula::Implies(a, b) => Formula::Implies(Arc::new(a.canon(scope)), Arc::new(b.canon(scope))),
            _ => {
                let (q, v, bound, body) = self.as_quantifier().expect("quantifier");
                let bound = bound.map(|t| canon_term(t, scope));
                let fresh = Symbol::from(alloc::format!("'{}", scope.len()).as_str());
                scope.push((v.clone(), fresh.clone()));
                let body = Arc::new(body.canon(scope));
                scope.pop();
                Formula::quantified(q, fresh, bound, body)
            }
        }
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self == other || self.alpha_canonical() == other.alpha_canonical()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::print::write_term(f, self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::print::write_formula(f, self)
    }
}
