use grassmann_core::centralizer::{centralizer_of, is_maximal_commutative, span, subalgebra_closure};
use grassmann_core::families::{family_to_subalgebra, odd_masks};
use grassmann_core::{
    AlgebraContext, CentralizerError, Element, Field, Maximality, Monomial, OddFamily,
    PrimeField, Rationals,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element<F: Field, R: Rng>(ctx: &AlgebraContext<F>, rng: &mut R) -> Element<F> {
    let terms = rng.gen_range(1..4);
    ctx.element((0..terms).map(|_| {
        let m = Monomial::from_mask(rng.gen_range(0..1u32 << ctx.n()));
        (m, ctx.field().from_i64(rng.gen_range(-3..=3)))
    }))
    .unwrap()
}

/// Verdict reduced to comparable form: Some(maximal?) or the error kind.
fn verdict<F: Field>(r: Result<Maximality<F>, CentralizerError>) -> Result<bool, &'static str> {
    match r {
        Ok(m) => Ok(m.is_maximal()),
        Err(CentralizerError::NotClosed { .. }) => Err("not closed"),
        Err(CentralizerError::NotCommutative { .. }) => Err("not commutative"),
        Err(_) => Err("other"),
    }
}

#[test]
fn centralizer_contains_commutative_subalgebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.gen_range(2..=5);
        let ctx = AlgebraContext::new(n, Rationals).unwrap();
        // a single generator always closes to a commutative subalgebra
        let g = random_element(&ctx, &mut rng);
        let a = subalgebra_closure(&[g], &ctx, true).unwrap();
        assert!(a.noncommuting_pair().is_none());
        let c = centralizer_of(&a).unwrap();
        assert!(a.is_subspace_of(&c).unwrap());
        let cc = centralizer_of(&c).unwrap();
        assert!(cc.is_subspace_of(&c).unwrap());
        assert!(a.is_subspace_of(&cc).unwrap());
    }
}

#[test]
fn centralizer_of_arbitrary_sets_matches_elementwise_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let ctx = AlgebraContext::new(4, Rationals).unwrap();
        let gens: Vec<_> = (0..2).map(|_| random_element(&ctx, &mut rng)).collect();
        let s = span(&gens, &ctx).unwrap();
        let c = centralizer_of(&s).unwrap();
        for v in c.basis() {
            for g in &gens {
                assert!(ctx.commutator(v, g).unwrap().is_zero());
            }
        }
        // every monomial outside the centralizer fails for some generator
        for m in ctx.basis() {
            let x = ctx.monomial(m);
            let commutes = gens.iter().all(|g| ctx.commutator(&x, g).unwrap().is_zero());
            assert_eq!(commutes, c.contains(&x).unwrap());
        }
    }
}

#[test]
fn verdicts_agree_over_rationals_and_gf3_for_monomial_spans() {
    // all subsets of monomials at n <= 3
    for n in 1..=3u32 {
        let q = AlgebraContext::new(n, Rationals).unwrap();
        let g = AlgebraContext::new(n, PrimeField::gf3()).unwrap();
        let dim = 1u32 << n;
        for sel in 0u32..1 << dim {
            let masks: Vec<u32> = (0..dim).filter(|i| sel >> i & 1 == 1).collect();
            let sq = span(&masks.iter().map(|&m| q.monomial(Monomial::from_mask(m))).collect::<Vec<_>>(), &q).unwrap();
            let sg = span(&masks.iter().map(|&m| g.monomial(Monomial::from_mask(m))).collect::<Vec<_>>(), &g).unwrap();
            assert_eq!(
                verdict(is_maximal_commutative(&sq)),
                verdict(is_maximal_commutative(&sg)),
                "n={n} masks={masks:?}"
            );
        }
    }
    // every odd family at n = 4
    let q = AlgebraContext::new(4, Rationals).unwrap();
    let g = AlgebraContext::new(4, PrimeField::gf3()).unwrap();
    let odd: Vec<u32> = odd_masks(4).collect();
    for sel in 0u32..1 << odd.len() {
        let f = OddFamily::new(4, (0..odd.len()).filter(|&i| sel >> i & 1 == 1).map(|i| odd[i])).unwrap();
        assert_eq!(
            verdict(is_maximal_commutative(&family_to_subalgebra(&f, &q).unwrap())),
            verdict(is_maximal_commutative(&family_to_subalgebra(&f, &g).unwrap())),
        );
    }
}

#[test]
fn witness_is_central_and_outside() {
    let ctx = AlgebraContext::new(5, Rationals).unwrap();
    let f = OddFamily::new(5, [0b00111]).unwrap();
    let a = family_to_subalgebra(&f, &ctx).unwrap();
    match is_maximal_commutative(&a) {
        Err(CentralizerError::NotClosed { .. }) => {}
        other => panic!("expected a non-closed span, got {other:?}"),
    }
    // closure adds x1x2x3x4x5 only
    let closed = subalgebra_closure(a.basis(), &ctx, true).unwrap();
    assert_eq!(closed.dim(), 16 + 2);
    match is_maximal_commutative(&closed).unwrap() {
        Maximality::NotMaximal { witness } => {
            assert!(!closed.contains(&witness).unwrap());
            for b in closed.basis() {
                assert!(ctx.commutator(&witness, b).unwrap().is_zero());
            }
        }
        Maximality::Maximal => panic!("{{1}} can still be added"),
    }
}
