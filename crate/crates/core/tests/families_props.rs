use grassmann_core::families::{
    complete_family, is_intersecting, is_maximal_family_fast, is_maximal_family_naive, odd_masks,
};
use grassmann_core::OddFamily;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_intersecting(n: u32, rng: &mut ChaCha8Rng) -> OddFamily {
    let mut pool: Vec<u32> = odd_masks(n).collect();
    pool.shuffle(rng);
    let target = rng.gen_range(0..12);
    let mut f = OddFamily::empty(n).unwrap();
    for t in pool {
        if f.len() >= target {
            break;
        }
        if f.members().all(|s| s & t != 0) {
            f.insert(t).unwrap();
        }
    }
    f
}

#[test]
fn fast_and_naive_agree_on_every_small_family() {
    for n in 1..=4 {
        let odd: Vec<u32> = odd_masks(n).collect();
        for sel in 0u32..1 << odd.len() {
            let f = OddFamily::new(n, (0..odd.len()).filter(|&i| sel >> i & 1 == 1).map(|i| odd[i]))
                .unwrap();
            assert_eq!(is_maximal_family_fast(&f), is_maximal_family_naive(&f), "{f:?}");
        }
    }
}

#[test]
fn completion_properties_at_n10() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let seed = random_intersecting(10, &mut rng);
        let done = complete_family(&seed).unwrap();
        assert!(seed.is_subfamily_of(&done));
        assert!(is_intersecting(&done).is_yes());
        assert!(is_maximal_family_fast(&done).unwrap().is_yes());
        assert_eq!(is_maximal_family_fast(&done), is_maximal_family_naive(&done));
        assert_eq!(is_maximal_family_fast(&seed), is_maximal_family_naive(&seed));
        assert_eq!(complete_family(&done).unwrap(), done);
    }
}

#[test]
fn maximal_families_are_closed_under_odd_supersets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let f = complete_family(&random_intersecting(8, &mut rng)).unwrap();
        for s in f.members() {
            for t in odd_masks(8).filter(|t| t & s == s) {
                assert!(f.contains(t));
            }
        }
    }
}
