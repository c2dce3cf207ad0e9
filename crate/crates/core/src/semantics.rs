//! Standard-model evaluation over the naturals and the decision procedure
//! for sentences whose quantifiers are all bounded.

use alloc::collections::BTreeMap;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::lang::{Formula, Func, Rel, Symbol, Term};

pub type BigNat = BigUint;

/// Default cap on bounded-quantifier assignments per decision.
pub const DEFAULT_CEILING: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Name {
    Var(Symbol),
    Param(Symbol),
}

/// Values of variables and parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    values: BTreeMap<Name, BigNat>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_var(mut self, name: &str, value: impl Into<BigNat>) -> Self {
        self.values.insert(Name::Var(Symbol::from(name)), value.into());
        self
    }

    pub fn with_param(mut self, name: &str, value: impl Into<BigNat>) -> Self {
        self.values.insert(Name::Param(Symbol::from(name)), value.into());
        self
    }

    pub fn set(&mut self, name: Name, value: BigNat) -> Option<BigNat> {
        self.values.insert(name, value)
    }

    pub fn get(&self, name: &Name) -> Option<&BigNat> {
        self.values.get(name)
    }

    fn restore(&mut self, name: Name, old: Option<BigNat>) {
        match old {
            Some(v) => {
                self.values.insert(name, v);
            }
            None => {
                self.values.remove(&name);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Unassigned(Name),
    NotDelta0,
    NotClosed,
    CeilingExceeded { ceiling: u64 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Unassigned(Name::Var(v)) => write!(f, "variable {v} is unassigned"),
            EvalError::Unassigned(Name::Param(p)) => write!(f, "parameter #{p} is unassigned"),
            EvalError::NotDelta0 => f.write_str("formula has an unbounded quantifier"),
            EvalError::NotClosed => f.write_str("formula has free variables"),
            EvalError::CeilingExceeded { ceiling } => {
                write!(f, "more than {ceiling} bounded-quantifier assignments")
            }
        }
    }
}

impl core::error::Error for EvalError {}

/// Applies a U-Grounding function to evaluated arguments.
pub fn apply(func: Func, args: &[BigNat]) -> BigNat {
    let x = &args[0];
    match func {
        Func::Sub => {
            let y = &args[1];
            if x < y {
                BigNat::zero()
            } else {
                x - y
            }
        }
        Func::Div => {
            let y = &args[1];
            if y.is_zero() {
                x.clone()
            } else {
                x / y
            }
        }
        Func::Pred => {
            if x.is_zero() {
                BigNat::zero()
            } else {
                x - 1u32
            }
        }
        Func::Max => core::cmp::max(x, &args[1]).clone(),
        Func::Log => BigNat::from(x.bits()),
        Func::Root => root(x, &args[1]),
        Func::Count => count(x, &args[1]),
        Func::Bit => bit(x, &args[1]),
        Func::Add => x + &args[1],
        Func::Double => x << 1u32,
    }
}

/// `floor(x^(1/y))`, with `root(x, 0) = x`. Integer binary search.
fn root(x: &BigNat, y: &BigNat) -> BigNat {
    if y.is_zero() || x.is_zero() || y.is_one() {
        return x.clone();
    }
    let bits = x.bits();
    let y = match y.to_u64() {
        Some(y) if y < bits => y,
        // 2^y > x >= 1
        _ => return BigNat::one(),
    };
    let exp = y as u32;
    let mut lo = BigNat::one();
    let mut hi = BigNat::one() << (bits / y + 1);
    // lo^y <= x < hi^y
    while &hi - &lo > BigNat::one() {
        let mid = (&lo + &hi) >> 1u32;
        if mid.pow(exp) <= *x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn count(x: &BigNat, j: &BigNat) -> BigNat {
    let bits = x.bits();
    match j.to_u64() {
        Some(j) if j < bits => {
            let mask = (BigNat::one() << j) - 1u32;
            BigNat::from((x & mask).count_ones())
        }
        _ => BigNat::from(x.count_ones()),
    }
}

/// Bits are numbered from 1 at the right; `bit(x, 0) = 0`.
fn bit(x: &BigNat, i: &BigNat) -> BigNat {
    match i.to_u64() {
        Some(0) | None => BigNat::zero(),
        Some(i) => BigNat::from(x.bit(i - 1) as u32),
    }
}

pub fn eval_term(t: &Term, env: &Environment) -> Result<BigNat, EvalError> {
    match t {
        Term::Const(c) => Ok(BigNat::from(c.value())),
        Term::Var(v) => {
            let name = Name::Var(v.clone());
            env.get(&name).cloned().ok_or(EvalError::Unassigned(name))
        }
        Term::Param(p) => {
            let name = Name::Param(p.clone());
            env.get(&name).cloned().ok_or(EvalError::Unassigned(name))
        }
        Term::App(f, args) => {
            let vals = args.iter().map(|a| eval_term(a, env)).collect::<Result<alloc::vec::Vec<_>, _>>()?;
            Ok(apply(*f, &vals))
        }
    }
}

/// Structural-recursion evaluator with an assignment ceiling.
pub struct Evaluator {
    ceiling: u64,
    assignments: u64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::new(DEFAULT_CEILING)
    }
}

impl Evaluator {
    pub fn new(ceiling: u64) -> Self {
        Evaluator { ceiling, assignments: 0 }
    }

    /// Assignments consumed so far.
    pub fn assignments(&self) -> u64 {
        self.assignments
    }

    pub fn holds(&mut self, f: &Formula, env: &mut Environment) -> Result<bool, EvalError> {
        if !f.is_delta0() {
            return Err(EvalError::NotDelta0);
        }
        self.eval(f, env)
    }

    fn eval(&mut self, f: &Formula, env: &mut Environment) -> Result<bool, EvalError> {
        match f {
            Formula::Atom(a) => {
                let l = eval_term(&a.lhs, env)?;
                let r = eval_term(&a.rhs, env)?;
                Ok(match a.rel {
                    Rel::Eq => l == r,
                    Rel::Le => l <= r,
                })
            }
            Formula::Not(g) => Ok(!self.eval(g, env)?),
            Formula::And(a, b) => Ok(self.eval(a, env)? && self.eval(b, env)?),
            Formula::Or(a, b) => Ok(self.eval(a, env)? || self.eval(b, env)?),
            Formula::Implies(a, b) => Ok(!self.eval(a, env)? || self.eval(b, env)?),
            Formula::BoundedForAll(v, t, body) => self.range(v, t, body, env, true),
            Formula::BoundedExists(v, t, body) => self.range(v, t, body, env, false),
            Formula::ForAll(..) | Formula::Exists(..) => Err(EvalError::NotDelta0),
        }
    }

    /// Enumerates `v = 0..=bound`; stops at the first value whose truth
    /// differs from `universal`.
    fn range(
        &mut self,
        v: &Symbol,
        bound: &Term,
        body: &Formula,
        env: &mut Environment,
        universal: bool,
    ) -> Result<bool, EvalError> {
        let bound = eval_term(bound, env)?;
        let name = Name::Var(v.clone());
        let mut value = BigNat::zero();
        let old = env.values.get(&name).cloned();
        let result = loop {
            if value > bound {
                break Ok(universal);
            }
            self.assignments += 1;
            if self.assignments > self.ceiling {
                break Err(EvalError::CeilingExceeded { ceiling: self.ceiling });
            }
            env.set(name.clone(), value.clone());
            match self.eval(body, env) {
                Ok(b) if b != universal => break Ok(!universal),
                Ok(_) => {}
                Err(e) => break Err(e),
            }
            value += 1u32;
        };
        env.restore(name, old);
        result
    }
}

/// Truth of a bounded formula under `env`, with the default ceiling.
pub fn holds(f: &Formula, env: &Environment) -> Result<bool, EvalError> {
    Evaluator::default().holds(f, &mut env.clone())
}

/// Decides a closed bounded sentence in the standard model.
pub fn decide_delta0(s: &Formula) -> Result<bool, EvalError> {
    decide_delta0_with(s, DEFAULT_CEILING)
}

pub fn decide_delta0_with(s: &Formula, ceiling: u64) -> Result<bool, EvalError> {
    if !s.is_closed() {
        return Err(EvalError::NotClosed);
    }
    Evaluator::new(ceiling).holds(s, &mut Environment::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{add_rel, encode_u64, mult_rel, parse_formula, parse_term, Constant};

    fn ev(text: &str) -> BigNat {
        eval_term(&parse_term(text).unwrap(), &Environment::new()).unwrap()
    }

    fn n(v: u64) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn grounding_function_edge_cases() {
        assert_eq!(apply(Func::Sub, &[n(3), n(5)]), n(0));
        assert_eq!(apply(Func::Div, &[n(7), n(0)]), n(7));
        assert_eq!(apply(Func::Root, &[n(5), n(0)]), n(5));
        assert_eq!(apply(Func::Log, &[n(0)]), n(0));
        assert_eq!(apply(Func::Pred, &[n(0)]), n(0));
        assert_eq!(apply(Func::Bit, &[n(5), n(0)]), n(0));
        assert_eq!(apply(Func::Count, &[n(0b1011), n(0)]), n(0));
    }

    #[test]
    fn root_agrees_with_linear_scan() {
        fn scan(x: u64, y: u32) -> u64 {
            (0..=x).take_while(|r| r.checked_pow(y).is_some_and(|p| p <= x)).last().unwrap()
        }
        assert_eq!(apply(Func::Root, &[n(26), n(3)]), n(2));
        for x in 0..300u64 {
            for y in 1..10u32 {
                assert_eq!(apply(Func::Root, &[n(x), n(y as u64)]), n(scan(x, y)), "root({x},{y})");
            }
        }
    }

    #[test]
    fn log_is_ceiling_log2_of_successor() {
        for x in 0..2000u64 {
            let want = (0..64).find(|k| (1u64 << k) > x).unwrap();
            assert_eq!(apply(Func::Log, &[n(x)]), n(want));
        }
    }

    #[test]
    fn numerals_evaluate() {
        assert_eq!(ev("C1 + double(C1 + double(double(C1)))"), n(11));
        assert_eq!(ev("double(add(C1,double(double(C1))))"), n(10));
        assert_eq!(eval_term(&encode_u64(6), &Environment::new()).unwrap(), n(6));
    }

    #[test]
    fn unassigned_variable() {
        let e = eval_term(&Term::var("q"), &Environment::new()).unwrap_err();
        assert_eq!(e, EvalError::Unassigned(Name::Var("q".into())));
    }

    #[test]
    fn relational_formulas() {
        let t = |v: u64| encode_u64(v);
        let env = Environment::new();
        assert!(holds(&add_rel(t(2), t(3), t(5)), &env).unwrap());
        assert!(!holds(&mult_rel(t(2), t(3), t(7)), &env).unwrap());
        assert!(holds(&mult_rel(t(0), t(5), t(0)), &env).unwrap());
        let open = add_rel(Term::var("x"), Term::var("y"), Term::var("z"));
        let env = Environment::new().with_var("x", 4u32).with_var("y", 9u32).with_var("z", 13u32);
        assert!(holds(&open, &env).unwrap());
    }

    #[test]
    fn decide_examples() {
        let s = Formula::bounded_forall(
            "x",
            encode_u64(4),
            Formula::le(Term::var("x"), Term::double(Term::var("x"))),
        );
        assert!(decide_delta0(&s).unwrap());
        let unbounded = parse_formula("A x. x = x").unwrap();
        assert_eq!(decide_delta0(&unbounded), Err(EvalError::NotDelta0));
        let open = parse_formula("x = C0").unwrap();
        assert_eq!(decide_delta0(&open), Err(EvalError::NotClosed));
    }

    #[test]
    fn ceiling_guards_runaway_bounds() {
        let s = Formula::bounded_forall("x", encode_u64(1 << 40), Formula::le(Term::var("x"), Term::var("x")));
        assert_eq!(decide_delta0_with(&s, 1000), Err(EvalError::CeilingExceeded { ceiling: 1000 }));
        let small = Formula::bounded_exists("x", Term::Const(Constant::C2), Formula::eq(Term::var("x"), Constant::C2.into()));
        assert!(decide_delta0_with(&small, 3).unwrap());
    }
}
