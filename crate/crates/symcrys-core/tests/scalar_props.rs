//! Property tests for the scalar layer.

use proptest::prelude::*;

use symcrys_core::scalars::{quantum_integer, LaurentPoly, Rat, RatFunc};

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-4i64..=4, -6i64..=6), 1..4).prop_map(|terms| {
        LaurentPoly::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e, Rat::from_integer(c.into()))),
        )
    })
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_laurent(), arb_laurent()).prop_filter_map("nonzero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(RatFunc::new(n, d).unwrap())
        }
    })
}

fn arb_nonzero_ratfunc() -> impl Strategy<Value = RatFunc> {
    arb_ratfunc().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Canonical-form uniqueness: a*b/b recovers a exactly.
    #[test]
    fn mul_div_round_trip(a in arb_ratfunc(), b in arb_nonzero_ratfunc()) {
        let round = a.mul(&b).div(&b).unwrap();
        prop_assert_eq!(round, a);
    }

    /// bar is an involutive field automorphism.
    #[test]
    fn bar_involutive_automorphism(a in arb_ratfunc(), b in arb_ratfunc()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
    }

    /// Valuations add under multiplication.
    #[test]
    fn order_at_zero_is_additive(a in arb_nonzero_ratfunc(), b in arb_nonzero_ratfunc()) {
        let lhs = a.mul(&b).order_at_zero().unwrap();
        prop_assert_eq!(lhs, a.order_at_zero().unwrap() + b.order_at_zero().unwrap());
    }

    /// Addition is associative on canonical forms (exactness smoke test).
    #[test]
    fn add_associative(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }
}

#[test]
fn quantum_integers_bar_invariant_to_eight() {
    for d in 1..=3 {
        for k in 0..=8 {
            let p = quantum_integer(k, d).unwrap();
            assert_eq!(p.bar(), p);
        }
    }
}
