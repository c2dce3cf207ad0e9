//! Seeded random generation of terms, sentences and provable goals.

use lstar::lang::{encode_u64, Constant, Formula, Func, Rel, Term};
use lstar::semantics::decide_delta0;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed;

const VARS: [&str; 3] = ["x", "y", "z"];

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform natural below `2^bits`.
    pub fn big(&mut self, bits: u64) -> BigUint {
        let bits = self.rng.gen_range(0..=bits);
        let bytes: Vec<u8> = (0..bits.div_ceil(8)).map(|_| self.rng.gen()).collect();
        BigUint::from_bytes_le(&bytes) >> ((8 - bits % 8) % 8)
    }

    fn constant(&mut self) -> Term {
        Term::Const([Constant::C0, Constant::C1, Constant::C2][self.rng.gen_range(0..3)])
    }

    pub fn term(&mut self, vars: &[&str], depth: u32) -> Term {
        if depth == 0 || self.rng.gen_bool(0.4) {
            return if vars.is_empty() || self.rng.gen_bool(0.5) {
                self.constant()
            } else {
                Term::var(vars[self.rng.gen_range(0..vars.len())])
            };
        }
        let f = Func::ALL[self.rng.gen_range(0..Func::ALL.len())];
        let args = (0..f.arity()).map(|_| self.term(vars, depth - 1)).collect();
        Term::app(f, args)
    }

    fn atom(&mut self, vars: &[&str]) -> Formula {
        let rel = if self.rng.gen_bool(0.5) { Rel::Eq } else { Rel::Le };
        Formula::atom(self.term(vars, 2), rel, self.term(vars, 2))
    }

    /// A formula over `scope`; quantifier bounds are constants, numerals up
    /// to `max_bound` or variables in scope.
    pub fn formula(&mut self, scope: &mut Vec<&'static str>, depth: u32, unbounded: bool, max_bound: u64) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.atom(scope);
        }
        let arms = if unbounded { 6 } else { 5 };
        match self.rng.gen_range(0..arms) {
            0 => Formula::not(self.formula(scope, depth - 1, unbounded, max_bound)),
            k @ 1..=3 => {
                let a = self.formula(scope, depth - 1, unbounded, max_bound);
                let b = self.formula(scope, depth - 1, unbounded, max_bound);
                match k {
                    1 => Formula::and(a, b),
                    2 => Formula::or(a, b),
                    _ => Formula::implies(a, b),
                }
            }
            k => {
                let v = VARS[self.rng.gen_range(0..VARS.len())];
                let bound = match self.rng.gen_range(0..3) {
                    0 if !scope.is_empty() => Term::var(scope[self.rng.gen_range(0..scope.len())]),
                    1 if max_bound > 2 => encode_u64(self.rng.gen_range(0..=max_bound)),
                    _ => self.constant(),
                };
                let bound = if bound.contains_var(v) { Term::Const(Constant::C2) } else { bound };
                scope.push(v);
                let body = self.formula(scope, depth - 1, unbounded, max_bound);
                scope.pop();
                let all = self.rng.gen_bool(0.5);
                match (k, all) {
                    (4, true) => Formula::bounded_forall(v, bound, body),
                    (4, false) => Formula::bounded_exists(v, bound, body),
                    (_, true) => Formula::forall(v, body),
                    (_, false) => Formula::exists(v, body),
                }
            }
        }
    }

    pub fn delta0_sentence(&mut self, depth: u32, max_bound: u64) -> Formula {
        self.formula(&mut Vec::new(), depth, false, max_bound)
    }

    pub fn sentence(&mut self, depth: u32) -> Formula {
        self.formula(&mut Vec::new(), depth, true, 2)
    }

    /// A Δ₀ goal and a basis of true Δ₀ axioms, shaped so that a short
    /// tableau usually exists.
    pub fn provable_goal(&mut self) -> (Formula, Vec<Formula>) {
        let a = self.delta0_sentence(2, 3);
        let b = self.delta0_sentence(2, 3);
        let truth = |f: &Formula| decide_delta0(f).unwrap_or(false);
        let mut axioms: Vec<Formula> = [&a, &b].into_iter().filter(|f| truth(f)).cloned().collect();
        let c2 = Term::Const(Constant::C2);
        let goal = match self.rng.gen_range(0..7) {
            0 => Formula::or(a.clone(), Formula::not(a)),
            1 => Formula::implies(Formula::and(a.clone(), b.clone()), Formula::and(b, a)),
            2 => Formula::implies(Formula::not(Formula::not(a.clone())), a),
            3 if truth(&a) => Formula::or(b, a),
            4 if truth(&a) => Formula::implies(b, a),
            5 => {
                let one = Term::Const(Constant::C1);
                axioms.push(Formula::le(one.clone(), c2.clone()));
                let body = self.formula(&mut vec!["x"], 1, false, 2);
                Formula::implies(Formula::bounded_forall("x", c2, body.clone()), body.subst("x", &one))
            }
            _ => {
                let phi = self.formula(&mut vec!["x"], 1, false, 2);
                let psi = self.formula(&mut vec!["x"], 1, false, 2);
                Formula::implies(
                    Formula::bounded_exists("x", c2.clone(), Formula::and(phi.clone(), psi)),
                    Formula::bounded_exists("x", c2, phi),
                )
            }
        };
        (goal, axioms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let (mut a, mut b) = (Gen::new(7), Gen::new(7));
        for _ in 0..20 {
            assert_eq!(a.sentence(3), b.sentence(3));
        }
    }

    #[test]
    fn generated_sentences_are_closed() {
        let mut g = Gen::new(DEFAULT_SEED);
        for _ in 0..200 {
            assert!(g.sentence(4).is_closed());
            let d = g.delta0_sentence(3, 8);
            assert!(d.is_closed() && d.is_delta0());
        }
    }

    #[test]
    fn big_respects_width() {
        let mut g = Gen::new(1);
        assert!((0..500).all(|_| g.big(256).bits() <= 256));
    }
}
