use std::collections::VecDeque;

use serde::Serialize;

use super::{CubicGraph, EdgeSet};
use crate::error::{Error, Result};

/// A vertex subset together with its boundary `∂X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cut {
    pub side: Vec<usize>,
    pub boundary: EdgeSet,
}

impl Cut {
    pub fn size(&self) -> usize {
        self.boundary.count()
    }
}

/// Length of a shortest cycle, by breadth-first search from every vertex.
pub fn girth(g: &CubicGraph) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent_edge[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if 2 * dist[v] + 1 >= best {
                break;
            }
            for e in g.incident(v) {
                if e == parent_edge[v] {
                    continue;
                }
                let w = g.other_end(e, v);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent_edge[w] = e;
                    queue.push_back(w);
                } else {
                    best = best.min(dist[v] + dist[w] + 1);
                }
            }
        }
    }
    best
}

/// The cut edges of `g` (iterative low-link search).
pub fn bridges(g: &CubicGraph) -> EdgeSet {
    let n = g.n();
    let mut out = EdgeSet::empty(g);
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    // (vertex, edge used to reach it, next incidence slot)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, via, ref mut slot)) = stack.last_mut() {
            if *slot < 3 {
                let e = g.incident(v)[*slot];
                *slot += 1;
                if e == via {
                    continue;
                }
                let w = g.other_end(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.insert(via);
                    }
                }
            }
        }
    }
    out
}

pub fn is_bridgeless(g: &CubicGraph) -> bool {
    bridges(g).is_empty()
}

/// The edges with exactly one endpoint in `side`.
pub fn cut_boundary(g: &CubicGraph, side: &[usize]) -> Result<Cut> {
    let mut inside = vec![false; g.n()];
    for &v in side {
        if v >= g.n() {
            return Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: g.n(),
            });
        }
        inside[v] = true;
    }
    let count = inside.iter().filter(|&&b| b).count();
    if count == 0 || count == g.n() {
        return Err(Error::EmptySide);
    }
    let mut boundary = EdgeSet::empty(g);
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if inside[a] != inside[b] {
            boundary.insert(e);
        }
    }
    let side = (0..g.n()).filter(|&v| inside[v]).collect();
    Ok(Cut { side, boundary })
}

/// Outcome of a cyclic edge-connectivity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicConnectivity {
    pub holds: bool,
    /// A cyclic cut of size below `k` when `holds` is false.
    pub witness: Option<Cut>,
}

/// Decides whether every edge cut separating two cycles has at least `k`
/// edges, by trying all edge subsets of size below `k` in order of size and
/// then lexicographically.
pub fn cyclically_edge_connected_at_least(g: &CubicGraph, k: usize) -> Result<CyclicConnectivity> {
    let limit = girth(g) + 1;
    if k > limit {
        return Err(Error::KTooLarge { k, limit });
    }
    let m = g.m();
    let mut removed = vec![false; m];
    let mut dsu = Dsu::new(g.n());
    for size in 1..k.min(m + 1) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            for &e in &combo {
                removed[e] = true;
            }
            let found = cyclic_component(g, &removed, &mut dsu);
            for &e in &combo {
                removed[e] = false;
            }
            if let Some(side) = found {
                let cut = cut_boundary(g, &side)?;
                return Ok(CyclicConnectivity {
                    holds: false,
                    witness: Some(cut),
                });
            }
            if !next_combination(&mut combo, m) {
                break;
            }
        }
    }
    Ok(CyclicConnectivity {
        holds: true,
        witness: None,
    })
}

/// If removing the marked edges leaves at least two components that contain
/// a cycle, returns the vertex set of the first such component.
fn cyclic_component(g: &CubicGraph, removed: &[bool], dsu: &mut Dsu) -> Option<Vec<usize>> {
    dsu.reset();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !removed[e] {
            dsu.union(a, b);
        }
    }
    let n = g.n();
    let mut verts = vec![0usize; n];
    let mut edges = vec![0usize; n];
    for v in 0..n {
        verts[dsu.find(v)] += 1;
    }
    for (e, &(a, _)) in g.edges().iter().enumerate() {
        if !removed[e] {
            edges[dsu.find(a)] += 1;
        }
    }
    let cyclic: Vec<usize> = (0..n)
        .filter(|&r| verts[r] > 0 && edges[r] >= verts[r])
        .collect();
    if cyclic.len() < 2 {
        return None;
    }
    let root = (0..n).map(|v| dsu.find(v)).find(|r| cyclic.contains(r))?;
    Some((0..n).filter(|&v| dsu.find(v) == root).collect())
}

pub(crate) fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Checks that `|X|`, `|∂X|` and `|M ∩ ∂X|` have the same parity for a
/// perfect matching `M`.
pub fn check_cut_parity(g: &CubicGraph, matching: &EdgeSet, cut: &Cut) -> Result<bool> {
    g.check_host(matching.host())?;
    g.check_host(cut.boundary.host())?;
    for v in 0..g.n() {
        let count = matching.degree_in(g, v);
        if count != 1 {
            return Err(Error::NotPerfectMatching { vertex: v, count });
        }
    }
    let x = cut.side.len() % 2;
    let k = cut.boundary.count() % 2;
    let y = (g.n() - cut.side.len()) % 2;
    let mk = matching.intersection(&cut.boundary).count() % 2;
    Ok(x == k && k == mk && mk == y)
}
