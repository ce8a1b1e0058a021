mod common;

use common::*;
use hyperorder::patterns::{is_compatible, Composition};
use hyperorder::poly::{couple_of, expand};
use hyperorder::search::transport;
use hyperorder::{Couple, GroupElement, Involutions, ModuliOrder, Provenance, Sign, SignPattern, UVector, Witness};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pattern(max_degree: usize) -> impl Strategy<Value = SignPattern> {
    (1..=max_degree).prop_flat_map(pattern_of_degree)
}

fn order(max_degree: usize) -> impl Strategy<Value = ModuliOrder> {
    (1..=max_degree).prop_flat_map(order_of_degree)
}

fn same_degree(max_degree: usize) -> impl Strategy<Value = (SignPattern, ModuliOrder)> {
    (1..=max_degree).prop_flat_map(|d| (pattern_of_degree(d), order_of_degree(d)))
}

fn pattern_of_degree(d: usize) -> impl Strategy<Value = SignPattern> {
    prop::collection::vec(any::<bool>(), d).prop_map(|bits| {
        let mut signs = vec![Sign::Plus];
        signs.extend(bits.into_iter().map(|b| if b { Sign::Plus } else { Sign::Minus }));
        SignPattern::new(signs).unwrap()
    })
}

fn order_of_degree(d: usize) -> impl Strategy<Value = ModuliOrder> {
    prop::collection::vec(any::<bool>(), d).prop_map(|bits| {
        let s: String = bits.into_iter().map(|b| if b { 'P' } else { 'N' }).collect();
        s.parse().unwrap()
    })
}

fn group_element() -> impl Strategy<Value = GroupElement> {
    prop::sample::select(GroupElement::ALL.to_vec())
}

proptest! {
    #[test]
    fn involutions_commute_and_square_to_identity(p in pattern(12), o in order(12)) {
        prop_assert_eq!(p.im().im(), p.clone());
        prop_assert_eq!(p.ir().ir(), p.clone());
        prop_assert_eq!(p.im().ir(), p.ir().im());
        prop_assert_eq!(o.im().im(), o.clone());
        prop_assert_eq!(o.im().ir(), o.ir().im());
    }

    #[test]
    fn group_action_preserves_compatibility((p, o) in same_degree(10), g in group_element()) {
        let before = is_compatible(&p, &o).unwrap();
        prop_assert_eq!(is_compatible(&p.act(g), &o.act(g)).unwrap(), before);
    }

    #[test]
    fn canonical_order_is_compatible_and_equivariant(p in pattern(12), g in group_element()) {
        prop_assert!(is_compatible(&p, &p.canonical_order()).unwrap());
        prop_assert_eq!(p.act(g).canonical_order(), p.canonical_order().act(g));
        prop_assert_eq!(p.act(g).is_canonical(), p.is_canonical());
    }

    #[test]
    fn signs_cp_composition_round_trip(p in pattern(16)) {
        prop_assert_eq!(SignPattern::from_cp(&p.to_cp()), p.clone());
        prop_assert_eq!(SignPattern::from_composition(&p.composition()).unwrap(), p.clone());
        prop_assert_eq!(p.composition().to_string().parse::<Composition>().unwrap(), p.composition());
        prop_assert_eq!(p.is_canonical(), canonical_by_cp(&p));
    }

    #[test]
    fn order_uvector_round_trip(o in order(16)) {
        let u = o.to_uvector();
        prop_assert_eq!(ModuliOrder::from_uvector(&u), o.clone());
        prop_assert_eq!(u.to_string().parse::<UVector>().unwrap(), u.clone());
        let neighbors: Vec<UVector> = o.neighbors().iter().map(|n| n.to_uvector()).collect();
        prop_assert_eq!(neighbors, u.neighbors());
    }

    #[test]
    fn expansion_matches_subset_sums(seed in any::<u64>(), d in 1usize..=9) {
        let rc = random_roots(&mut ChaCha8Rng::seed_from_u64(seed), d, 10_000);
        let expanded = expand(&rc);
        let oracle = vieta_by_subsets(rc.roots());
        prop_assert_eq!(expanded.descending(), oracle.as_slice());
    }

    #[test]
    fn transport_realizes_the_image_couple(seed in any::<u64>(), d in 1usize..=8, g in group_element()) {
        let rc = random_roots(&mut ChaCha8Rng::seed_from_u64(seed), d, 50);
        let couple = couple_of(&rc);
        prop_assume!(couple.is_ok());
        let w = Witness::new(rc, Provenance::Literature { label: "random".into() }).unwrap();
        let image = transport(&w, g).unwrap();
        image.validate().unwrap();
        prop_assert_eq!(image.couple(), &w.couple().act(g));
        let back = transport(&image, g).unwrap();
        prop_assert_eq!(back.roots(), w.roots());
    }
}

#[test]
fn exhaustive_involution_laws_up_to_degree_eight() {
    involution_laws(8).unwrap();
}

#[test]
fn exhaustive_round_trips_up_to_degree_eight() {
    round_trips(8).unwrap();
}

#[test]
fn expansion_on_a_thousand_configurations() {
    vieta(1000, 11).unwrap();
}

#[test]
fn exactly_four_rigid_orders_each_realize_one_pattern() {
    for d in 2..=9 {
        let rigid: Vec<ModuliOrder> = all_orders(d).into_iter().filter(|o| o.is_rigid()).collect();
        assert_eq!(rigid.len(), 4, "degree {d}");
        for o in rigid {
            let p = o.rigid_sign_pattern().unwrap();
            assert!(is_compatible(&p, &o).unwrap());
            assert_eq!(p.canonical_order(), o);
        }
    }
    assert!("PPNP".parse::<ModuliOrder>().unwrap().rigid_sign_pattern().is_err());
}

#[test]
fn canonical_patterns_only_show_their_canonical_order() {
    for rep in ["4,1,1,1", "1,4,1,1", "1,3,1,2"] {
        let hits = canonical_only(&sp(rep), 100_000, 5).unwrap();
        assert!(hits > 0, "{rep} never sampled");
    }
}

#[test]
fn non_canonical_patterns_show_other_orders() {
    let rep = sp("3,1,2,1");
    let hits = canonical_only(&rep, 100_000, 5);
    assert!(hits.is_err(), "{rep} should appear with a non-canonical order");
}

#[test]
fn monte_carlo_is_deterministic() {
    mc_determinism(17).unwrap();
    mc_determinism(18).unwrap();
}

#[test]
fn orbit_sizes_are_two_or_four() {
    for d in 1..=8 {
        for p in all_patterns(d) {
            let couple = Couple::new(p.clone(), p.canonical_order());
            let size = hyperorder::symmetry::orbit_of(&couple).len();
            assert!(size == 2 || size == 4, "{couple}");
        }
    }
}
