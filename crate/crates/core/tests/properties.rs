mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use common::{naive_perfect_matchings, random_bridgeless_cubic, random_cubic, rng};
use snark_forge::covers::{
    excessive_index, find_bf_coloring, verify_bf_coloring, verify_cover, ExcessiveIndex,
};
use snark_forge::cyclecover::{scc_classify, verify_cycle_cover, SccClass};
use snark_forge::graph::{check_cut_parity, cut_boundary, parse_graph6, to_graph6};
use snark_forge::matching::{enumerate_perfect_matchings, ParitySubgraph, PerfectMatching};
use snark_forge::CubicGraph;

fn graph(n_half: usize, seed: u64) -> CubicGraph {
    random_cubic(2 * n_half, &mut rng(seed))
}

fn bridgeless(n_half: usize, seed: u64) -> CubicGraph {
    random_bridgeless_cubic(2 * n_half, &mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph6_roundtrip_keeps_edge_indices(n_half in 2usize..12, seed in any::<u64>()) {
        let g = graph(n_half, seed);
        let canonical = CubicGraph::from_edges_graph6_order(g.n(), g.edges()).unwrap();
        let back = parse_graph6(&to_graph6(&canonical)).unwrap();
        prop_assert_eq!(back.edges(), canonical.edges());
        prop_assert_eq!(back.id(), canonical.id());
    }

    #[test]
    fn matchings_agree_with_naive(n_half in 2usize..8, seed in any::<u64>()) {
        let g = graph(n_half, seed);
        let mut fast: Vec<Vec<usize>> = enumerate_perfect_matchings(&g).unwrap().iter().map(|m| m.to_vec()).collect();
        fast.sort();
        prop_assert_eq!(fast, naive_perfect_matchings(&g));
    }

    #[test]
    fn cut_parity_for_random_sides(n_half in 2usize..10, seed in any::<u64>()) {
        let g = graph(n_half, seed);
        let mut r = rng(seed ^ 0x5eed);
        let mut vs: Vec<usize> = (0..g.n()).collect();
        vs.shuffle(&mut r);
        let side = &vs[..1 + seed as usize % (g.n() - 1)];
        let cut = cut_boundary(&g, side).unwrap();
        for m in enumerate_perfect_matchings(&g).unwrap() {
            prop_assert!(check_cut_parity(&g, m.edges(), &cut).unwrap());
        }
    }

    #[test]
    fn witnesses_verify(n_half in 2usize..8, seed in any::<u64>()) {
        let g = bridgeless(n_half, seed);
        let ExcessiveIndex::Exact { value, witness } = excessive_index(&g, None).unwrap() else {
            return Err(TestCaseError::fail("no value"));
        };
        prop_assert!(verify_cover(&g, &witness).unwrap().is_valid());
        prop_assert!((3..=5).contains(&value));
        if let Some(c) = find_bf_coloring(&g).unwrap() {
            prop_assert!(verify_bf_coloring(&g, &c).unwrap().is_valid());
        }
        let v = scc_classify(&g).unwrap();
        let w = v.witness.clone().unwrap();
        let check = verify_cycle_cover(&g, &w).unwrap();
        prop_assert!(check.valid);
        prop_assert_eq!(Some(check.length), v.length());
        let doubled = w.doubled(&g);
        match v.class {
            SccClass::Exact43m => prop_assert!(PerfectMatching::new(&g, doubled).is_ok()),
            _ => prop_assert!(ParitySubgraph::new(&g, doubled).unwrap().center().is_some()),
        }
    }

    #[test]
    fn verdicts_survive_relabeling(n_half in 2usize..7, seed in any::<u64>()) {
        let g = bridgeless(n_half, seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng(seed.rotate_left(17)));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(scc_classify(&g).unwrap().class, scc_classify(&h).unwrap().class);
        prop_assert_eq!(
            excessive_index(&g, None).unwrap().value(),
            excessive_index(&h, None).unwrap().value()
        );
        prop_assert_eq!(find_bf_coloring(&g).unwrap().is_some(), find_bf_coloring(&h).unwrap().is_some());
    }
}
