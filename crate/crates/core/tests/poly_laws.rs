use grassmann_core::{BigInt, IntPoly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(any::<i128>(), 0..6)
        .prop_map(|cs| IntPoly::from_coeffs(cs.into_iter().map(BigInt::from).collect()))
}

proptest! {
    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&(&p + &q) - &q, p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), k in any::<i64>()) {
        let k = BigInt::from(k);
        prop_assert_eq!((&p * &q).eval(&k), p.eval(&k) * q.eval(&k));
        prop_assert_eq!((&p + &q).eval(&k), p.eval(&k) + q.eval(&k));
    }

    #[test]
    fn canonical_form(p in poly()) {
        if let Some(d) = p.degree() {
            prop_assert!(p.coeffs()[d] != BigInt::from(0));
        }
    }
}
