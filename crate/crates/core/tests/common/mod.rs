//! Slow, independent reference implementations used to check the solvers.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use snark_forge::graph::is_bridgeless;
use snark_forge::CubicGraph;

/// Perfect matchings as sorted edge lists, by trying every edge at the
/// lowest uncovered vertex.
pub fn naive_perfect_matchings(g: &CubicGraph) -> Vec<Vec<usize>> {
    fn rec(
        g: &CubicGraph,
        covered: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            let mut m = cur.clone();
            m.sort_unstable();
            out.push(m);
            return;
        };
        for e in g.incident(v) {
            let w = g.other_end(e, v);
            if !covered[w] {
                covered[v] = true;
                covered[w] = true;
                cur.push(e);
                rec(g, covered, cur, out);
                cur.pop();
                covered[v] = false;
                covered[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(g, &mut vec![false; g.n()], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Spanning subgraphs with degree 3 at `t` and degree 1 elsewhere, found by
/// checking every edge subset of the right size. Small graphs only.
pub fn naive_parity_subgraphs(g: &CubicGraph, t: usize) -> Vec<Vec<usize>> {
    assert!(g.m() <= 24);
    let size = (g.n() + 2) / 2;
    let mut out = Vec::new();
    for mask in 0u32..1 << g.m() {
        if mask.count_ones() as usize != size {
            continue;
        }
        let ok = (0..g.n()).all(|v| {
            let d = g
                .incident(v)
                .iter()
                .filter(|&&e| mask >> e & 1 == 1)
                .count();
            d == if v == t { 3 } else { 1 }
        });
        if ok {
            out.push((0..g.m()).filter(|&e| mask >> e & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

/// Smallest number of the given matchings whose union is every edge, trying
/// all k-subsets for k = 1, 2, ... up to `max_k`.
pub fn naive_min_cover(g: &CubicGraph, pms: &[Vec<usize>], max_k: usize) -> Option<usize> {
    let masks: Vec<u128> = pms
        .iter()
        .map(|m| m.iter().fold(0u128, |a, &e| a | 1 << e))
        .collect();
    let full: u128 = if g.m() == 128 {
        u128::MAX
    } else {
        (1u128 << g.m()) - 1
    };
    fn any_subset(masks: &[u128], from: usize, left: usize, acc: u128, full: u128) -> bool {
        if acc == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        (from..masks.len()).any(|i| any_subset(masks, i + 1, left - 1, acc | masks[i], full))
    }
    (1..=max_k).find(|&k| any_subset(&masks, 0, k, 0, full))
}

/// Every circuit of `g` as a sorted edge list, each found once from its
/// smallest vertex.
pub fn all_circuits(g: &CubicGraph) -> Vec<Vec<usize>> {
    fn extend(
        g: &CubicGraph,
        start: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for e in g.incident(v) {
            if path.last() == Some(&e) {
                continue;
            }
            let w = g.other_end(e, v);
            if w == start && path.len() >= 2 {
                // keep one of the two directions
                if path[0] < e {
                    let mut c = path.clone();
                    c.push(e);
                    c.sort_unstable();
                    out.push(c);
                }
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(e);
                extend(g, start, w, on_path, path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut on_path = vec![false; g.n()];
        on_path[s] = true;
        extend(g, s, s, &mut on_path, &mut Vec::new(), &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Whether some multiset of circuits covers edge `e` exactly `target[e]`
/// times, by always covering the lowest edge still needing coverage.
pub fn naive_circuit_multicover(g: &CubicGraph, circuits: &[Vec<usize>], target: &[u8]) -> bool {
    fn rec(circuits: &[Vec<usize>], by_edge: &[Vec<usize>], left: &mut Vec<u8>) -> bool {
        let Some(e) = left.iter().position(|&k| k > 0) else {
            return true;
        };
        for &c in &by_edge[e] {
            if circuits[c].iter().all(|&f| left[f] > 0) {
                for &f in &circuits[c] {
                    left[f] -= 1;
                }
                let found = rec(circuits, by_edge, left);
                for &f in &circuits[c] {
                    left[f] += 1;
                }
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut by_edge = vec![Vec::new(); g.m()];
    for (i, c) in circuits.iter().enumerate() {
        for &e in c {
            by_edge[e].push(i);
        }
    }
    rec(circuits, &by_edge, &mut target.to_vec())
}

/// Shortest cycle cover class from the naive pieces: 0 for `4m/3`, 1 for
/// `4m/3 + 1`, 2 for at least `4m/3 + 2`.
pub fn naive_scc_excess(g: &CubicGraph) -> u8 {
    let circuits = all_circuits(g);
    let doubled = |set: &[usize]| {
        let mut t = vec![1u8; g.m()];
        for &e in set {
            t[e] = 2;
        }
        t
    };
    if naive_perfect_matchings(g)
        .iter()
        .any(|m| naive_circuit_multicover(g, &circuits, &doubled(m)))
    {
        return 0;
    }
    for t in 0..g.n() {
        if naive_parity_subgraphs(g, t)
            .iter()
            .any(|p| naive_circuit_multicover(g, &circuits, &doubled(p)))
        {
            return 1;
        }
    }
    2
}

/// A uniformly paired random simple connected cubic graph on `n` vertices.
pub fn random_cubic(n: usize, rng: &mut ChaCha8Rng) -> CubicGraph {
    assert!(n >= 4 && n.is_multiple_of(2));
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(rng);
        let edges: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0], p[1])).collect();
        if let Ok(g) = CubicGraph::from_edges(n, &edges) {
            return g;
        }
    }
}

pub fn random_bridgeless_cubic(n: usize, rng: &mut ChaCha8Rng) -> CubicGraph {
    loop {
        let g = random_cubic(n, rng);
        if is_bridgeless(&g) {
            return g;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random bridgeless cubic graphs for the oracle comparisons: a few of each
/// even order from 4 to `max_n`.
pub fn corpus(max_n: usize, per_order: usize, seed: u64) -> Vec<CubicGraph> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for n in (4..=max_n).step_by(2) {
        for _ in 0..per_order {
            out.push(random_bridgeless_cubic(n, &mut r));
        }
    }
    out
}
