use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiflow::counterexample::{gadget_for, gadget_summands, verify_p1_p2, GadgetOptions};
use semiflow::doubleflow::audit;
use semiflow::flows::{FlowCatalog, FlowFunction, Weighting};
use semiflow::laurent::{intervals_of, weights_from_intervals};
use semiflow::matchings::{enumerate_nested_matchings, matching_multiset, Collection};
use semiflow::network::{build_half_grid, random_planar_network, PlanarNetwork};
use semiflow::relations::families::FamilySpec;
use semiflow::relations::{evaluate_side, evaluate_sides, symbolic_check_all, Convention, Instantiation};
use semiflow::semiring::{ExactInt, PositiveRational, TropicalRational};
use semiflow::Subset;

fn split_catalog(net: PlanarNetwork) -> FlowCatalog {
    FlowCatalog::new(Arc::new(Arc::new(net).vertex_split().unwrap()))
}

#[test]
fn family_relations_hold_for_every_placement() {
    // a relation balanced for X = ∅ must hold for every X and every Y ⊆ [n]
    let specs: Vec<FamilySpec> = FamilySpec::all_parametrized(4)
        .into_iter()
        .chain([FamilySpec::Triple, FamilySpec::Quadruple, FamilySpec::Quintuple])
        .collect();
    for n in 3..=6 {
        let catalog = split_catalog(build_half_grid(n).unwrap());
        for spec in &specs {
            let rel = spec.build().unwrap();
            if rel.p + rel.q > n {
                continue;
            }
            assert_eq!(symbolic_check_all(&catalog, &rel).unwrap(), None, "{spec} on split Γ_{n}");
        }
    }
}

#[test]
fn gadgets_separate_for_small_parameters() {
    for total in 2..=8 {
        for q in 1..=total / 2 {
            let p = total - q;
            for m in enumerate_nested_matchings(total, q) {
                let (_, g) = gadget_for(&m, p, q, GadgetOptions::default()).unwrap();
                assert!(verify_p1_p2(&g.network, &m, p, q), "M = {m:?}, p = {p}, q = {q}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gadget_sum_counts_matchings(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let total = rng.gen_range(2..=6);
        let q = rng.gen_range(1..=total / 2);
        let p = total - q;
        let pool = Subset::k_subsets(total, p);
        let size = rng.gen_range(1..=4);
        let c = Collection::from_members(p, q, (0..size).map(|_| pool[rng.gen_range(0..pool.len())])).unwrap();
        let multiset = matching_multiset(&c);
        for m in enumerate_nested_matchings(total, q) {
            let (aug, g) = gadget_for(&m, p, q, GadgetOptions::default()).unwrap();
            let catalog = FlowCatalog::new(g.network.clone());
            let f = FlowFunction::new(&catalog, Weighting::constant(&g.network, BigUint::from(1u32))).unwrap();
            let side = gadget_summands(&c, &c, &aug).lhs;
            let sum = evaluate_side(&f, &side, Convention::Vanish).unwrap().flatten_zero().0.unwrap();
            prop_assert_eq!(sum, BigUint::from(multiset.get(&m).copied().unwrap_or(0)), "M = {:?}", m);
        }
    }

    #[test]
    fn family_relations_hold_numerically_on_random_networks(seed: u64, pick in 0usize..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let specs = FamilySpec::all_parametrized(5);
        let rel = specs[pick % specs.len()].build().unwrap();
        let n = rng.gen_range(rel.p + rel.q..=6);
        let catalog = split_catalog(random_planar_network(n, &mut rng));
        let f = FlowFunction::new(&catalog, Weighting::<ExactInt>::random(catalog.network(), &mut rng)).unwrap();
        for inst in Instantiation::all(n, rel.p, rel.q) {
            let (l, r) = evaluate_sides(&f, &rel, &inst, Convention::Vanish).unwrap();
            prop_assert_eq!(l, r, "{} at {:?}", rel, inst);
        }
    }

    #[test]
    fn double_flow_laws_on_random_networks(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(2..=4);
        let catalog = split_catalog(random_planar_network(n, &mut rng));
        let total = rng.gen_range(2..=n);
        let q = rng.gen_range(1..=total / 2);
        let p = total - q;
        let insts = Instantiation::all(n, p, q);
        let inst = insts[rng.gen_range(0..insts.len())];
        for a in Subset::k_subsets(total, p) {
            let report = audit(&catalog, inst, a).unwrap();
            prop_assert!(report.ok(), "{:?}", report);
        }
    }

    #[test]
    fn interval_values_determine_weights(seed: u64, n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let grid = build_half_grid(n).unwrap();
        let w = Weighting::<PositiveRational>::random(&grid, &mut rng);
        prop_assert_eq!(weights_from_intervals(&intervals_of(n, &w).unwrap()).unwrap(), w);
        let t = Weighting::<TropicalRational>::random(&grid, &mut rng);
        prop_assert_eq!(weights_from_intervals(&intervals_of(n, &t).unwrap()).unwrap(), t);
    }
}
