use burnside_core::ledger::{compose, exceptional_sets, factorization, ledger, Invariants, MapSpec, ToricMap};
use burnside_core::random::{random_composable_pair, random_map, rng, WordBounds, ORDER_POOL};
use burnside_core::toric::{parse_word, format_word, ray_data, Embedding, Fan2D, MoveWord};
use proptest::prelude::*;

fn inv(m: &ToricMap) -> Invariants {
    Invariants::of(&MapSpec::Toric(m.clone())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn additive_under_composition(seed in any::<u64>()) {
        let (m1, m2) = random_composable_pair(&mut rng(seed), &ORDER_POOL, WordBounds::default());
        let m = compose(&m1, &m2).unwrap();
        prop_assert_eq!(inv(&m), inv(&m1).sum(&inv(&m2)));
    }

    #[test]
    fn inverse_negates(seed in any::<u64>()) {
        let m = random_map(&mut rng(seed), &ORDER_POOL, WordBounds::default());
        prop_assert_eq!(inv(&m.inverse().unwrap()), inv(&m).negate());
        prop_assert!(inv(&compose(&m, &m.inverse().unwrap()).unwrap()).classical.is_zero());
    }

    #[test]
    fn stabilized_divisors_never_contribute(seed in any::<u64>()) {
        let m = random_map(&mut rng(seed), &ORDER_POOL, WordBounds::default());
        let l = ledger(&MapSpec::Toric(m.clone())).unwrap();
        let counted = l.entries.iter().filter(|e| e.generic_stab_trivial).count();
        let weight: i64 = l.equivariant().iter().map(|(_, c)| c.abs()).sum();
        prop_assert!(weight as usize <= counted);
        for e in l.excluded() {
            prop_assert!(e.equivariant.is_none() && e.orbifold.is_none());
        }
        let sets = exceptional_sets(&m).unwrap();
        let trivial = sets.ex_phi.iter().chain(&sets.ex_phi_inv)
            .filter(|r| ray_data(r, &m.embedding).stab_order == 1).count();
        prop_assert_eq!(trivial, counted);
    }

    #[test]
    fn factorization_holds_for_all_invariants(seed in any::<u64>()) {
        let m = random_map(&mut rng(seed), &ORDER_POOL, WordBounds { max_len: 12, max_rays: 12 });
        let (sigma, tau) = factorization(&m).unwrap();
        prop_assert!(exceptional_sets(&m).unwrap().check().all());
        prop_assert_eq!(inv(&m), inv(&sigma).negate().sum(&inv(&tau)));
    }

    #[test]
    fn words_survive_text_round_trip(seed in any::<u64>()) {
        let m = random_map(&mut rng(seed), &ORDER_POOL, WordBounds::default());
        prop_assert_eq!(parse_word(&format_word(&m.word)).unwrap(), m.word);
    }
}

#[test]
fn redundant_moves_leave_no_trace() {
    let e = Embedding::new(6, 1, 1).unwrap();
    let x = Fan2D::projective_plane();
    let w = parse_word("up 0\ndown 1 1\n").unwrap();
    let m = ToricMap::new(x.clone(), w, e).unwrap();
    assert!(inv(&m).classical.is_zero() && inv(&m).equivariant.is_zero());
    assert_eq!(m.target(), x);
    assert_eq!(inv(&ToricMap::new(x, MoveWord::default(), e).unwrap()), inv(&m));
}
