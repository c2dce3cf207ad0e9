use alloc::sync::Arc;

use crate::lang::{Formula, Term};

use super::Rule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left = 0,
    Right = 1,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn from_name(s: &str) -> Option<Side> {
        match s {
            "left" => Some(Side::Left),
            "right" => Some(Side::Right),
            _ => None,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Rule 2: the result of pushing the outer negation of `f` one level in, if
/// `f` has one of the negated shapes the rule covers.
pub fn negation_rule(f: &Formula) -> Option<Formula> {
    let Formula::Not(g) = f else { return None };
    let neg = |x: &Arc<Formula>| Formula::Not(x.clone());
    Some(match &**g {
        Formula::Not(x) => (**x).clone(),
        Formula::Or(a, b) => Formula::and(neg(a), neg(b)),
        Formula::Implies(a, b) => Formula::And(a.clone(), Arc::new(neg(b))),
        Formula::And(a, b) => Formula::or(neg(a), neg(b)),
        Formula::Exists(v, b) => Formula::ForAll(v.clone(), Arc::new(neg(b))),
        Formula::ForAll(v, b) => Formula::Exists(v.clone(), Arc::new(neg(b))),
        Formula::BoundedExists(v, t, b) => Formula::BoundedForAll(v.clone(), t.clone(), Arc::new(neg(b))),
        Formula::BoundedForAll(v, t, b) => Formula::BoundedExists(v.clone(), t.clone(), Arc::new(neg(b))),
        Formula::Atom(_) => return None,
    })
}

/// The sentence `rule` produces from `ancestor`, or `None` if the rule does
/// not apply to it.
pub(crate) fn derive(rule: &Rule, ancestor: &Formula) -> Option<Formula> {
    match (rule, ancestor) {
        (Rule::Conjunction(side), Formula::And(a, b)) => Some(pick(*side, a, b).clone()),
        (Rule::Negation, f) => negation_rule(f),
        (Rule::Disjunction(side), Formula::Or(a, b)) => Some(pick(*side, a, b).clone()),
        (Rule::Implication(Side::Left), Formula::Implies(a, _)) => Some(Formula::Not(a.clone())),
        (Rule::Implication(Side::Right), Formula::Implies(_, b)) => Some((**b).clone()),
        (Rule::Witness(p), Formula::Exists(v, body)) => Some(body.subst(v, &Term::Param(p.clone()))),
        (Rule::BoundedWitness(p), Formula::BoundedExists(v, s, body)) => {
            let u = Term::Param(p.clone());
            Some(Formula::and(Formula::le(u.clone(), s.clone()), body.subst(v, &u)))
        }
        (Rule::Instance(t), Formula::ForAll(v, body)) => Some(body.subst(v, t)),
        (Rule::BoundedInstance(t), Formula::BoundedForAll(v, s, body)) => {
            Some(Formula::implies(Formula::le(t.clone(), s.clone()), body.subst(v, t)))
        }
        _ => None,
    }
}

fn pick<'a>(side: Side, a: &'a Arc<Formula>, b: &'a Arc<Formula>) -> &'a Formula {
    match side {
        Side::Left => a,
        Side::Right => b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_formula, parse_formula_with_params};

    fn f(s: &str) -> Formula {
        parse_formula_with_params(s).unwrap()
    }

    #[test]
    fn negation_variants() {
        let cases = [
            ("~~C0 = C1", "C0 = C1"),
            ("~(C0 = C1 | C1 = C1)", "~(C0 = C1) & ~(C1 = C1)"),
            ("~(C0 = C1 -> C1 = C1)", "C0 = C1 & ~(C1 = C1)"),
            ("~(C0 = C1 & C1 = C1)", "~(C0 = C1) | ~(C1 = C1)"),
            ("~E x. x = C1", "A x. ~(x = C1)"),
            ("~A x. x = C1", "E x. ~(x = C1)"),
            ("~E x <= C2. x = C1", "A x <= C2. ~(x = C1)"),
            ("~A x <= C2. x = C1", "E x <= C2. ~(x = C1)"),
        ];
        for (src, want) in cases {
            assert_eq!(negation_rule(&f(src)), Some(f(want)), "{src}");
        }
        assert_eq!(negation_rule(&f("~(C0 = C1)")), None);
        assert_eq!(negation_rule(&f("C0 = C1")), None);
    }

    #[test]
    fn quantifier_rules() {
        let ex = parse_formula("E x <= C2. x = C1").unwrap();
        assert_eq!(derive(&Rule::BoundedWitness("u".into()), &ex), Some(f("#u <= C2 & #u = C1")));
        let all = parse_formula("A x <= C2. x = C1").unwrap();
        assert_eq!(
            derive(&Rule::BoundedInstance(Term::param("u")), &all),
            Some(f("#u <= C2 -> #u = C1"))
        );
        assert_eq!(derive(&Rule::Instance(Term::param("u")), &all), None);
        let imp = parse_formula("C0 = C1 -> C1 = C1").unwrap();
        assert_eq!(derive(&Rule::Implication(Side::Left), &imp), Some(f("~(C0 = C1)")));
    }
}
