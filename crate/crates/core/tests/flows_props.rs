use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semiflow::flows::{
    enumerate_flag_flows, evaluate_fgf, lindstrom_matrix, minor, signed_flow_sum, FlowCatalog, FlowFunction, Weighting,
};
use semiflow::network::{build_half_grid, random_planar_network, PlanarNetwork};
use semiflow::semiring::PolyNat;
use semiflow::Subset;

fn random_network(seed: u64, n: usize) -> PlanarNetwork {
    random_planar_network(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbolic_value_specialises_to_numeric(seed: u64, n in 2usize..=4, weights in prop::collection::vec(0u32..5, 64)) {
        let net = Arc::new(random_network(seed, n));
        let catalog = FlowCatalog::new(net.clone());
        let w = Weighting::from_fn(&net, |s| BigUint::from(weights[s % weights.len()]));
        let by_name: HashMap<String, BigUint> =
            (0..net.num_weight_slots()).map(|s| (format!("w[{}]", net.slot_name(s)), w.values[s].clone())).collect();
        let symbolic = FlowFunction::new(&catalog, Weighting::<PolyNat>::symbolic(&net)).unwrap();
        let numeric = FlowFunction::new(&catalog, w).unwrap();
        for i in Subset::full(n).subsets() {
            let poly = symbolic.eval(i).unwrap();
            let specialised = match poly {
                Some(p) => p.evaluate(|v| by_name[v.name()].clone()).unwrap(),
                None => None,
            };
            // no flows and a zero sum both read as 0 over ℕ
            let numeric = numeric.eval(i).unwrap();
            prop_assert_eq!(specialised.unwrap_or_default(), numeric.unwrap_or_default(), "I = {}", i);
        }
    }

    #[test]
    fn split_preserves_flow_counts(seed: u64, n in 2usize..=5) {
        let net = Arc::new(random_network(seed, n));
        let split = net.vertex_split().unwrap();
        prop_assert!(split.split_violations().is_empty());
        for i in Subset::full(n).subsets() {
            prop_assert_eq!(
                enumerate_flag_flows(&net, i).unwrap().len(),
                enumerate_flag_flows(&split, i).unwrap().len(),
                "I = {}", i
            );
        }
    }

    #[test]
    fn split_moves_weights_to_edges(seed: u64, n in 2usize..=4, weights in prop::collection::vec(1i64..7, 64)) {
        let net = Arc::new(random_network(seed, n));
        let split = net.vertex_split().unwrap();
        prop_assert_eq!(net.num_weight_slots(), split.num_weight_slots());
        let w = Weighting::from_fn(&net, |s| BigInt::from(weights[s % weights.len()]));
        for i in Subset::full(n).subsets() {
            prop_assert_eq!(evaluate_fgf(&net, &w, i).unwrap(), evaluate_fgf(&split, &w, i).unwrap());
        }
    }

    #[test]
    fn lindstrom_on_random_networks(seed: u64, n in 1usize..=4, weights in prop::collection::vec(-4i64..5, 64)) {
        let net = random_network(seed, n);
        let w = Weighting::from_fn(&net, |s| BigInt::from(weights[s % weights.len()]));
        let m = lindstrom_matrix(&net, &w).unwrap();
        for k in 0..=n {
            for i in Subset::k_subsets(n, k) {
                for j in Subset::k_subsets(n, k) {
                    prop_assert_eq!(minor(&m, i, j).unwrap(), signed_flow_sum(&net, &w, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn planar_flag_flows_are_nonintersecting_minors(seed: u64, n in 1usize..=4, weights in prop::collection::vec(0i64..5, 64)) {
        // on planar networks only the identity bijection onto [|I|] survives,
        // so the flag minor equals f(I)
        let net = random_network(seed, n);
        let w = Weighting::from_fn(&net, |s| BigInt::from(weights[s % weights.len()]));
        let m = lindstrom_matrix(&net, &w).unwrap();
        for i in Subset::full(n).subsets() {
            let f = evaluate_fgf(&net, &w, i).unwrap().unwrap_or_default();
            prop_assert_eq!(minor(&m, i, Subset::full(i.len())).unwrap(), f, "I = {}", i);
        }
    }
}

#[test]
fn half_grid_counts_by_hand() {
    // Γ_2 has vertices 1,1 / 2,1 / 2,2; each flag flow is forced
    let g = build_half_grid(2).unwrap();
    let counts: Vec<usize> = ["1", "2", "12"]
        .iter()
        .map(|s| enumerate_flag_flows(&g, Subset::digits(s)).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 1, 1]);
    let one = Weighting::constant(&g, BigUint::from(1u32));
    assert_eq!(evaluate_fgf(&g, &one, Subset::EMPTY).unwrap(), Some(BigUint::from(1u32)));
}

#[test]
fn unit_weights_count_flows() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let grids = (1..=5).map(|n| build_half_grid(n).unwrap());
    let randoms: Vec<PlanarNetwork> = (0..20).map(|k| random_planar_network(2 + k % 4, &mut rng)).collect();
    for net in grids.chain(randoms) {
        let one = Weighting::constant(&net, BigUint::from(1u32));
        for i in Subset::full(net.sources().len()).subsets() {
            let count = enumerate_flag_flows(&net, i).unwrap().len();
            let value = evaluate_fgf(&net, &one, i).unwrap().unwrap_or_default();
            assert_eq!(value, BigUint::from(count), "I = {i}");
        }
    }
}
