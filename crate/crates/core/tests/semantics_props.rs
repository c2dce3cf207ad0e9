mod common;

use lstar::lang::{add_rel, add_rel_literal, encode_u64, mult_rel, Formula, Func, Term};
use lstar::semantics::{apply, decide_delta0, holds, Environment, EvalError};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use common::delta0_sentence;

fn big() -> impl Strategy<Value = BigUint> {
    prop::collection::vec(any::<u8>(), 0..=32).prop_map(|b| BigUint::from_bytes_le(&b))
}

fn small() -> impl Strategy<Value = BigUint> {
    (0u32..300).prop_map(BigUint::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn grounding_functions_do_not_grow(a in big(), b in prop_oneof![big(), small()]) {
        for f in Func::GROUNDING {
            let args = if f.arity() == 1 { vec![a.clone()] } else { vec![a.clone(), b.clone()] };
            let m = args.iter().max().unwrap().clone();
            prop_assert!(apply(f, &args) <= m, "{:?}", f);
        }
    }
}

#[test]
fn bit_is_count_difference() {
    for x in 0u32..1 << 16 {
        let x = BigUint::from(x);
        for i in 1u32..=16 {
            let count = |j: u32| apply(Func::Count, &[x.clone(), BigUint::from(j)]);
            let diff = apply(Func::Sub, &[count(i), count(i - 1)]);
            assert_eq!(apply(Func::Bit, &[x.clone(), BigUint::from(i)]), diff);
        }
    }
}

#[test]
fn relational_formulas_match_arithmetic() {
    let v = |s: &str| Term::var(s);
    let (add, lit, mult) = (add_rel(v("x"), v("y"), v("z")), add_rel_literal(v("x"), v("y"), v("z")), mult_rel(v("x"), v("y"), v("z")));
    let mut literal_mismatches = 0;
    for x in 0u32..16 {
        for y in 0u32..16 {
            for z in 0u32..16 {
                let env = Environment::new().with_var("x", x).with_var("y", y).with_var("z", z);
                assert_eq!(holds(&add, &env).unwrap(), x + y == z, "add {x} {y} {z}");
                assert_eq!(holds(&mult, &env).unwrap(), x * y == z, "mult {x} {y} {z}");
                literal_mismatches += (holds(&lit, &env).unwrap() != (x + y == z)) as u32;
            }
        }
    }
    // y = 0, z < x: sixteen-choose-two pairs
    assert_eq!(literal_mismatches, 120);
}

// An evaluator written separately from the library one.
fn naive_term(t: &Term, env: &[(String, BigUint)]) -> BigUint {
    match t {
        Term::Const(c) => BigUint::from(c.value()),
        Term::Var(v) => env.iter().rev().find(|(n, _)| n.as_str() == &**v).expect("bound").1.clone(),
        Term::Param(_) => unreachable!("sentences have no parameters"),
        Term::App(f, args) => {
            let a: Vec<BigUint> = args.iter().map(|x| naive_term(x, env)).collect();
            let x = &a[0];
            let small = |n: &BigUint| n.to_u64().unwrap_or(u64::MAX);
            match f {
                Func::Sub => if x >= &a[1] { x - &a[1] } else { BigUint::zero() },
                Func::Div => if a[1].is_zero() { x.clone() } else { x / &a[1] },
                Func::Pred => if x.is_zero() { x.clone() } else { x - 1u32 },
                Func::Max => x.max(&a[1]).clone(),
                Func::Log => {
                    let mut k = 0u32;
                    while BigUint::one() << k <= *x {
                        k += 1;
                    }
                    BigUint::from(k)
                }
                Func::Root => {
                    if a[1].is_zero() {
                        return x.clone();
                    }
                    let y = small(&a[1]).min(4096) as u32;
                    let mut r = BigUint::zero();
                    while (&r + 1u32).pow(y) <= *x {
                        r += 1u32;
                    }
                    r
                }
                Func::Count => {
                    let j = small(&a[1]);
                    BigUint::from((0..j.min(x.bits())).filter(|&i| x.bit(i)).count())
                }
                Func::Bit => {
                    let i = small(&a[1]);
                    BigUint::from((i >= 1 && x.bit(i - 1)) as u8)
                }
                Func::Add => x + &a[1],
                Func::Double => x + x,
            }
        }
    }
}

fn naive_holds(f: &Formula, env: &mut Vec<(String, BigUint)>) -> bool {
    match f {
        Formula::Atom(a) => {
            let (l, r) = (naive_term(&a.lhs, env), naive_term(&a.rhs, env));
            match a.rel {
                lstar::lang::Rel::Eq => l == r,
                lstar::lang::Rel::Le => l <= r,
            }
        }
        Formula::Not(g) => !naive_holds(g, env),
        Formula::And(a, b) => naive_holds(a, env) && naive_holds(b, env),
        Formula::Or(a, b) => naive_holds(a, env) || naive_holds(b, env),
        Formula::Implies(a, b) => !naive_holds(a, env) || naive_holds(b, env),
        Formula::BoundedForAll(v, t, b) | Formula::BoundedExists(v, t, b) => {
            let all = matches!(f, Formula::BoundedForAll(..));
            let n = naive_term(t, env).to_u64().unwrap();
            for i in 0..=n {
                env.push((v.to_string(), BigUint::from(i)));
                let r = naive_holds(b, env);
                env.pop();
                if r != all {
                    return !all;
                }
            }
            all
        }
        Formula::ForAll(..) | Formula::Exists(..) => unreachable!("Δ₀ only"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn decide_agrees_with_naive(s in delta0_sentence(32, 3)) {
        match decide_delta0(&s) {
            Ok(v) => prop_assert_eq!(v, naive_holds(&s, &mut Vec::new())),
            Err(EvalError::CeilingExceeded { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn numeral_bounds() {
    let s = Formula::bounded_forall("x", encode_u64(4), Formula::le(Term::var("x"), Term::double(Term::var("x"))));
    assert!(decide_delta0(&s).unwrap());
}
