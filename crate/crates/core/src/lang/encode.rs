//! Binary-like numerals and the relational arithmetic formulas.

use super::syntax::{Constant, Formula, Term};
use num_bigint::BigUint;
use num_traits::Zero;

/// Numeral for `n` built from `C1`, `add` and `double` (or `C0` for zero),
/// following the binary expansion: `11 = C1 + double(C1 + double(double(C1)))`.
///
/// Uses at most `2 * floor(log2(n))` function symbols.
pub fn encode_nat(n: &BigUint) -> Term {
    if n.is_zero() {
        return Term::Const(Constant::C0);
    }
    let bits = n.bits();
    let mut acc = Term::Const(Constant::C1);
    for i in (0..bits - 1).rev() {
        acc = Term::double(acc);
        if n.bit(i) {
            acc = Term::add(Term::Const(Constant::C1), acc);
        }
    }
    acc
}

pub fn encode_u64(n: u64) -> Term {
    encode_nat(&BigUint::from(n))
}

/// `Add(x, y, z)`: the subtraction-only rendering `z - x = y & x <= z`.
///
/// Subtraction truncates at zero, so the guard must compare `x` with `z`.
/// See [`add_rel_literal`] for the variant guarded by `y <= z`.
pub fn add_rel(x: Term, y: Term, z: Term) -> Formula {
    Formula::and(Formula::eq(Term::sub(z.clone(), x.clone()), y), Formula::le(x, z))
}

/// `z - x = y & y <= z`. Also satisfied when `y = 0` and `z < x`, so it is
/// not equivalent to `x + y = z`.
pub fn add_rel_literal(x: Term, y: Term, z: Term) -> Formula {
    Formula::and(Formula::eq(Term::sub(z.clone(), x), y.clone()), Formula::le(y, z))
}

/// `Mult(x, y, z)` written with subtraction and division only:
/// `((x = 0 | y = 0) -> z = 0) & ((x != 0 & y != 0) -> (z / x = y & (z - 1) / x < y))`.
pub fn mult_rel(x: Term, y: Term, z: Term) -> Formula {
    let zero = || Term::Const(Constant::C0);
    let x_zero = Formula::eq(x.clone(), zero());
    let y_zero = Formula::eq(y.clone(), zero());
    let zero_case = Formula::implies(Formula::or(x_zero.clone(), y_zero.clone()), Formula::eq(z.clone(), zero()));
    let quotient = Formula::eq(Term::div(z.clone(), x.clone()), y.clone());
    let below = Formula::not(Formula::le(
        y,
        Term::div(Term::sub(z, Term::Const(Constant::C1)), x),
    ));
    let nonzero_case = Formula::implies(
        Formula::and(Formula::not(x_zero), Formula::not(y_zero)),
        Formula::and(quotient, below),
    );
    Formula::and(zero_case, nonzero_case)
}

/// `Double^k(C2)`.
pub fn double_iter(k: usize) -> Term {
    (0..k).fold(Term::Const(Constant::C2), |t, _| Term::double(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::print::print_term;

    #[test]
    fn eleven_matches_binary_like_shape() {
        let want = Term::add(
            Term::Const(Constant::C1),
            Term::double(Term::add(
                Term::Const(Constant::C1),
                Term::double(Term::double(Term::Const(Constant::C1))),
            )),
        );
        assert_eq!(encode_u64(11), want);
        assert_eq!(print_term(&want), "C1 + double(C1 + double(double(C1)))");
    }

    #[test]
    fn zero_and_six() {
        assert_eq!(encode_u64(0), Term::Const(Constant::C0));
        assert_eq!(
            encode_u64(6),
            Term::double(Term::add(Term::Const(Constant::C1), Term::double(Term::Const(Constant::C1))))
        );
    }

    #[test]
    fn function_count_bound() {
        for n in 0u64..5000 {
            let bound = 2 * (63 - n.max(1).leading_zeros() as usize) + 2;
            assert!(encode_u64(n).function_count() <= bound, "n = {n}");
        }
    }
}
