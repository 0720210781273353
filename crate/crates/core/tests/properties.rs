//! Randomized algebraic properties of the scalar rings and the
//! combinatorial correspondences.

use proptest::prelude::*;

use hecke_core::symgroup::Permutation;
use hecke_core::tableaux::{pair_order, rsk, rsk_inverse, uv_of};
use hecke_core::{LaurentPoly, RationalFn};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -9i64..=9), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, c.into()))))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_one_line(v).unwrap())
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn laurent_bar_is_ring_involution(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a + &b).bar(), a.bar() + b.bar());
        prop_assert_eq!((&a * &b).bar(), a.bar() * b.bar());
    }

    #[test]
    fn rational_field_axioms(a in laurent(), b in laurent(), c in laurent()) {
        let ra = RationalFn::from_laurent(&a);
        let rb = RationalFn::from_laurent(&b);
        let rc = RationalFn::from_laurent(&c);
        prop_assert_eq!(&ra + &rb, &rb + &ra);
        prop_assert_eq!(&ra * &(&rb + &rc), &(&ra * &rb) + &(&ra * &rc));
        prop_assert_eq!((&ra * &rb).bar(), ra.bar() * rb.bar());
        if !rb.is_zero() {
            let q = ra.div(&rb).unwrap();
            prop_assert_eq!(&q * &rb, ra.clone());
        }
        // embedding is a ring homomorphism with unique canonical forms
        prop_assert_eq!(RationalFn::from_laurent(&(&a + &b)), &ra + &rb);
        prop_assert_eq!(RationalFn::from_laurent(&(&a * &b)), &ra * &rb);
        if !ra.is_zero() {
            prop_assert_eq!(ra.inv().unwrap().inv().unwrap(), ra.clone());
        }
    }

    #[test]
    fn rsk_round_trip(w in (2usize..=8).prop_flat_map(permutation)) {
        let pair = rsk(&w);
        prop_assert_eq!(rsk_inverse(&pair), w.clone());
        // the recording tableau is the insertion tableau of the inverse
        let winv = rsk(&w.inverse());
        prop_assert_eq!(pair.second(), winv.first());
    }

    #[test]
    fn strong_pair_order_implies_weak(x in permutation(5), y in permutation(5)) {
        let a = uv_of(&x);
        let b = uv_of(&y);
        let o = pair_order(&a, &b);
        if o.strong_geq {
            prop_assert!(o.weak_geq);
        }
        if o.equal {
            prop_assert!(o.strong_geq && o.weak_geq);
        }
    }

    #[test]
    fn length_is_subadditive(x in permutation(6), y in permutation(6)) {
        let xy = x.compose(&y);
        prop_assert!(xy.length() <= x.length() + y.length());
        prop_assert_eq!(x.compose(&x.inverse()), Permutation::identity(6));
    }
}
