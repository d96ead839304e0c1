mod common;

use common::*;
use snark_forge::constructions::{cube, hagglund, k33, k4, petersen, prism, tietze};
use snark_forge::covers::{excessive_index, ExcessiveIndex};
use snark_forge::cyclecover::{
    decompose_circuits, parity_center_witness, scc_classify, verify_cycle_cover, Multiplicity,
    SccClass,
};
use snark_forge::matching::{enumerate_parity_subgraphs, enumerate_perfect_matchings};
use snark_forge::{CubicGraph, EdgeSet};

fn named() -> Vec<(&'static str, CubicGraph)> {
    vec![
        ("k4", k4()),
        ("k33", k33()),
        ("prism", prism()),
        ("cube", cube()),
        ("petersen", petersen()),
        ("tietze", tietze()),
    ]
}

fn excess(class: SccClass) -> u8 {
    match class {
        SccClass::Exact43m => 0,
        SccClass::Exact43mPlus1 => 1,
        SccClass::AtLeast43mPlus2 => 2,
    }
}

#[test]
fn matching_enumeration_agrees() {
    for (_, g) in named() {
        let fast: Vec<Vec<usize>> = enumerate_perfect_matchings(&g)
            .unwrap()
            .iter()
            .map(|m| m.to_vec())
            .collect();
        let mut fast = fast;
        fast.sort();
        assert_eq!(fast, naive_perfect_matchings(&g));
    }
}

#[test]
fn excessive_index_matches_subset_search() {
    let mut graphs: Vec<CubicGraph> = named().into_iter().map(|(_, g)| g).collect();
    graphs.extend(corpus(14, 4, 7));
    for g in &graphs {
        let pms = naive_perfect_matchings(g);
        let naive = naive_min_cover(g, &pms, 5);
        let ExcessiveIndex::Exact { value, witness } = excessive_index(g, None).unwrap() else {
            panic!()
        };
        assert_eq!(witness.len(), value);
        match naive {
            Some(k) => assert_eq!(value, k, "graph {}", g.id()),
            None => assert!(value > 5),
        }
    }
}

/// Every doubled set a cubic graph allows is a spanning subgraph with odd
/// degree at every vertex; all of them are tried.
fn odd_subgraphs(g: &CubicGraph) -> Vec<Vec<usize>> {
    (0u32..1 << g.m())
        .filter(|mask| {
            (0..g.n()).all(|v| {
                g.incident(v)
                    .iter()
                    .filter(|&&e| mask >> e & 1 == 1)
                    .count()
                    % 2
                    == 1
            })
        })
        .map(|mask| (0..g.m()).filter(|&e| mask >> e & 1 == 1).collect())
        .collect()
}

#[test]
fn decomposition_matches_circuit_oracle() {
    let mut graphs: Vec<CubicGraph> = named().into_iter().map(|(_, g)| g).collect();
    graphs.extend(corpus(12, 3, 11));
    for g in graphs.iter().filter(|g| g.m() <= 18) {
        let circuits = all_circuits(g);
        for doubled in odd_subgraphs(g) {
            let set = EdgeSet::from_indices(g, doubled.iter().copied()).unwrap();
            let mult = Multiplicity::from_doubled(g, &set).unwrap();
            let fast = decompose_circuits(g, &mult).unwrap();
            let slow = naive_circuit_multicover(g, &circuits, mult.target());
            assert_eq!(fast.is_some(), slow, "graph {} doubled {doubled:?}", g.id());
            if let Some(c) = fast {
                assert!(verify_cycle_cover(g, &c).unwrap().valid);
                let cov: Vec<u8> = c.coverage(g.m()).iter().map(|&k| k as u8).collect();
                assert_eq!(cov, mult.target());
            }
        }
    }
}

#[test]
fn classification_matches_oracle() {
    let mut graphs: Vec<CubicGraph> = named().into_iter().map(|(_, g)| g).collect();
    graphs.extend(corpus(12, 3, 13));
    for g in graphs.iter().filter(|g| g.m() <= 18) {
        let v = scc_classify(g).unwrap();
        assert_eq!(excess(v.class), naive_scc_excess(g), "graph {}", g.id());
    }
}

#[test]
fn tietze_has_a_cover_of_length_24() {
    let g = tietze();
    assert_eq!(naive_scc_excess(&g), 0);
    assert_eq!(scc_classify(&g).unwrap().length(), Some(24));
}

/// Family-at-once search against trying each doubled set separately.
#[test]
fn joint_search_matches_candidate_scan_on_the_windmill() {
    let (h, _) = hagglund();
    for m in enumerate_perfect_matchings(&h).unwrap() {
        let mult = Multiplicity::from_doubled(&h, m.edges()).unwrap();
        assert!(decompose_circuits(&h, &mult).unwrap().is_none());
    }
    for t in 0..h.n() {
        let scan = enumerate_parity_subgraphs(&h, t).unwrap().iter().any(|p| {
            let mult = Multiplicity::from_doubled(&h, p.edges()).unwrap();
            decompose_circuits(&h, &mult).unwrap().is_some()
        });
        assert_eq!(
            parity_center_witness(&h, t).unwrap().is_some(),
            scan,
            "center {t}"
        );
    }
}

#[test]
fn parity_subgraph_enumeration_agrees() {
    for (_, g) in named() {
        for t in 0..g.n() {
            let mut fast: Vec<Vec<usize>> = enumerate_parity_subgraphs(&g, t)
                .unwrap()
                .iter()
                .map(|p| p.edges().to_vec())
                .collect();
            fast.sort();
            assert_eq!(fast, naive_parity_subgraphs(&g, t));
        }
    }
}
