//! Relational arithmetic: addition and multiplication as 3-way relations.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::lang::{add_rel, double_iter, encode_nat, mult_rel, Constant, Formula, Term};

use super::AxiomBasis;

fn v(name: &str) -> Term {
    Term::var(name)
}

fn add(x: &str, y: &str, z: &str) -> Formula {
    add_rel(v(x), v(y), v(z))
}

fn mult(x: &str, y: &str, z: &str) -> Formula {
    mult_rel(v(x), v(y), v(z))
}

fn succ(x: &str, z: &str) -> Formula {
    add_rel(v(x), Term::Const(Constant::C1), v(z))
}

/// Universally closed associativity, commutativity, identity and
/// distributivity for `Add` and `Mult`, plus the successor axioms.
pub fn relational_arith_basis() -> AxiomBasis {
    let all = Formula::forall_many;
    let axioms: Vec<Formula> = alloc::vec![
        all(&["x", "y", "z"], Formula::implies(add("x", "y", "z"), add("y", "x", "z"))),
        all(
            &["x", "y", "z", "u", "v", "w"],
            Formula::implies(
                Formula::conj(alloc::vec![add("x", "y", "u"), add("u", "z", "w"), add("y", "z", "v")]),
                add("x", "v", "w"),
            ),
        ),
        all(&["x"], add_rel(v("x"), Term::Const(Constant::C0), v("x"))),
        all(&["x", "y", "z"], Formula::implies(mult("x", "y", "z"), mult("y", "x", "z"))),
        all(
            &["x", "y", "z", "u", "v", "w"],
            Formula::implies(
                Formula::conj(alloc::vec![mult("x", "y", "u"), mult("u", "z", "w"), mult("y", "z", "v")]),
                mult("x", "v", "w"),
            ),
        ),
        all(&["x"], mult_rel(v("x"), Term::Const(Constant::C1), v("x"))),
        all(
            &["x", "y", "z", "s", "p", "q", "r"],
            Formula::implies(
                Formula::conj(alloc::vec![
                    add("y", "z", "s"),
                    mult("x", "y", "p"),
                    mult("x", "z", "q"),
                    mult("x", "s", "r"),
                ]),
                add("p", "q", "r"),
            ),
        ),
        all(
            &["x", "z"],
            Formula::implies(succ("x", "z"), Formula::not(Formula::eq(v("z"), Term::Const(Constant::C0)))),
        ),
        all(
            &["x", "y", "z"],
            Formula::implies(Formula::and(succ("x", "z"), succ("y", "z")), Formula::eq(v("x"), v("y"))),
        ),
        all(
            &["x", "y", "z", "w"],
            Formula::implies(
                Formula::conj(alloc::vec![Formula::eq(v("x"), v("y")), succ("x", "z"), succ("y", "w")]),
                Formula::eq(v("z"), v("w")),
            ),
        ),
    ];
    AxiomBasis::new("relational-arith", axioms).declared_true()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Totality {
    Successor,
    Addition,
    Multiplication,
}

impl Totality {
    pub const ALL: [Totality; 3] = [Totality::Successor, Totality::Addition, Totality::Multiplication];

    pub fn name(self) -> &'static str {
        match self {
            Totality::Successor => "successor",
            Totality::Addition => "addition",
            Totality::Multiplication => "multiplication",
        }
    }
}

/// `∀x ∃z Add(x,1,z)`, `∀x ∀y ∃z Add(x,y,z)` or `∀x ∀y ∃z Mult(x,y,z)`.
pub fn totality_sentence(which: Totality) -> Formula {
    match which {
        Totality::Successor => Formula::forall("x", Formula::exists("z", succ("x", "z"))),
        Totality::Addition => Formula::forall_many(&["x", "y"], Formula::exists("z", add("x", "y", "z"))),
        Totality::Multiplication => Formula::forall_many(&["x", "y"], Formula::exists("z", mult("x", "y", "z"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Localization {
    /// Bounds `Double^k(C2)` for the inputs and `Double^{2k}(C2)` for the product.
    Literal,
    /// Inputs below `2^k`, product at most `2^{2k}`.
    Prose,
}

/// Multiplication totality restricted to small inputs; a Δ₀ sentence.
pub fn localized_mult_totality(k: usize, variant: Localization) -> Formula {
    let (input, output) = match variant {
        Localization::Literal => (double_iter(k), double_iter(2 * k)),
        Localization::Prose => {
            let one = BigUint::from(1u32);
            ((encode_nat(&((&one << k) - &one))), encode_nat(&(one << (2 * k))))
        }
    };
    Formula::bounded_forall(
        "x",
        input.clone(),
        Formula::bounded_forall("y", input, Formula::bounded_exists("z", output, mult("x", "y", "z"))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_formula;
    use crate::prenex::{classify, Shape};
    use crate::semantics::{decide_delta0, eval_term, holds, Environment};

    #[test]
    fn axioms_are_pi1() {
        for a in relational_arith_basis().iter() {
            assert_eq!(classify(a).unwrap().shape, Shape::Pi(1), "{a}");
        }
    }

    #[test]
    fn commutativity_present() {
        let want = parse_formula("A x. A y. A z. sub(z, x) = y & x <= z -> sub(z, y) = x & y <= z").unwrap();
        assert!(relational_arith_basis().contains(&want));
    }

    /// Every matrix instance with small values holds.
    #[test]
    fn axioms_hold_on_samples() {
        for a in relational_arith_basis().iter() {
            let (prefix, matrix) = crate::prenex::split_prefix(a);
            let names: Vec<_> = prefix.iter().map(|(_, v)| (*v).clone()).collect();
            let width = names.len() as u32;
            let side = if width > 4 { 3u64 } else { 6 };
            for code in 0..side.pow(width) {
                let mut env = Environment::new();
                let mut c = code;
                for n in &names {
                    env = env.with_var(n, c % side);
                    c /= side;
                }
                assert!(holds(matrix, &env).unwrap(), "{a} at {code}");
            }
        }
    }

    #[test]
    fn totality_shapes() {
        assert_eq!(
            totality_sentence(Totality::Successor),
            parse_formula("A x. E z. sub(z, x) = C1 & x <= z").unwrap()
        );
        assert_eq!(classify(&totality_sentence(Totality::Multiplication)).unwrap().shape, Shape::Pi(2));
    }

    #[test]
    fn localizations() {
        assert!(!decide_delta0(&localized_mult_totality(0, Localization::Literal)).unwrap());
        assert!(decide_delta0(&localized_mult_totality(3, Localization::Prose)).unwrap());
        let Formula::BoundedForAll(_, bound, body) = localized_mult_totality(2, Localization::Literal) else {
            panic!()
        };
        let env = Environment::new();
        assert_eq!(eval_term(&bound, &env).unwrap(), 8u32.into());
        let Formula::BoundedForAll(_, _, inner) = &*body else { panic!() };
        let Formula::BoundedExists(_, out, _) = &**inner else { panic!() };
        assert_eq!(eval_term(out, &env).unwrap(), 32u32.into());
    }
}
