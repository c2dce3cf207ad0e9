mod common;

use lstar::lang::{encode_u64, Formula, Quantifier};
use lstar::prenex::{classify, is_prenex, split_prefix, to_prenex, truncate, Shape};
use lstar::semantics::decide_delta0;
use proptest::prelude::*;

use common::sentence;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn prenexing_preserves_truncated_truth(f in sentence(4), b in prop_oneof![Just(4u64), Just(8u64)]) {
        let g = to_prenex(&f);
        prop_assert!(is_prenex(&g));
        prop_assert!(classify(&g).is_ok());
        let bound = encode_u64(b);
        prop_assert_eq!(decide_delta0(&truncate(&f, &bound)), decide_delta0(&truncate(&g, &bound)));
    }

    #[test]
    fn pi_rank_peels_one_block(f in sentence(4)) {
        let g = to_prenex(&f);
        let class = classify(&g).unwrap();
        if let Shape::Pi(i) = class.shape {
            let (prefix, matrix) = split_prefix(&g);
            let rest = prefix.iter().skip_while(|(q, _)| *q == Quantifier::All).count();
            let inner = prefix[prefix.len() - rest..]
                .iter()
                .rev()
                .fold(matrix.clone(), |acc, (q, v)| match q {
                    Quantifier::All => Formula::forall(v, acc),
                    Quantifier::Ex => Formula::exists(v, acc),
                });
            let peeled = lstar::prenex::classify_shape(&inner).unwrap();
            if i == 1 {
                prop_assert_eq!(peeled.shape, Shape::Delta0);
            } else {
                prop_assert_eq!(peeled.shape, Shape::Sigma(i - 1));
            }
        }
    }
}
