//! Perfect matchings, 1-parity subgraphs and 3-edge-colorings by backtracking.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet};

pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A set of edges meeting every vertex exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    base: EdgeSet,
}

impl PerfectMatching {
    pub fn new(g: &CubicGraph, base: EdgeSet) -> Result<PerfectMatching> {
        g.check_host(base.host())?;
        for v in 0..g.n() {
            let count = base.degree_in(g, v);
            if count != 1 {
                return Err(Error::NotPerfectMatching { vertex: v, count });
            }
        }
        Ok(PerfectMatching { base })
    }

    pub fn from_indices(g: &CubicGraph, edges: &[usize]) -> Result<PerfectMatching> {
        PerfectMatching::new(g, EdgeSet::from_indices(g, edges.iter().copied())?)
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.base
    }

    pub fn contains(&self, e: usize) -> bool {
        self.base.contains(e)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.base.to_vec()
    }

    pub fn into_edges(self) -> EdgeSet {
        self.base
    }
}

/// A spanning subgraph in which the `centers` have degree 3 and every other
/// vertex has degree 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParitySubgraph {
    base: EdgeSet,
    centers: Vec<usize>,
}

impl ParitySubgraph {
    pub fn new(g: &CubicGraph, base: EdgeSet) -> Result<ParitySubgraph> {
        g.check_host(base.host())?;
        let mut centers = Vec::new();
        for v in 0..g.n() {
            match base.degree_in(g, v) {
                1 => {}
                3 => centers.push(v),
                count => return Err(Error::NotPerfectMatching { vertex: v, count }),
            }
        }
        Ok(ParitySubgraph { base, centers })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.base
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    /// The unique center of a 1-parity subgraph.
    pub fn center(&self) -> Option<usize> {
        match self.centers.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }
}

/// Three disjoint perfect matchings whose union is the edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeColoring {
    classes: [PerfectMatching; 3],
}

impl ThreeColoring {
    pub fn new(g: &CubicGraph, classes: [PerfectMatching; 3]) -> Result<ThreeColoring> {
        for c in &classes {
            g.check_host(c.edges().host())?;
        }
        for e in 0..g.m() {
            let hits = classes.iter().filter(|c| c.contains(e)).count();
            if hits != 1 {
                return Err(Error::InvalidColoring(format!(
                    "edge {e} lies in {hits} classes"
                )));
            }
        }
        Ok(ThreeColoring { classes })
    }

    /// Builds a coloring from per-edge colors in `0..3`.
    pub fn from_colors(g: &CubicGraph, colors: &[u8]) -> Result<ThreeColoring> {
        if colors.len() != g.m() {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} edges",
                colors.len(),
                g.m()
            )));
        }
        let mut sets = [EdgeSet::empty(g), EdgeSet::empty(g), EdgeSet::empty(g)];
        for (e, &c) in colors.iter().enumerate() {
            let slot = sets
                .get_mut(usize::from(c))
                .ok_or_else(|| Error::InvalidColoring(format!("edge {e} has color {c}")))?;
            slot.insert(e);
        }
        let [a, b, c] = sets;
        let wrap = |s: EdgeSet| {
            PerfectMatching::new(g, s).map_err(|e| Error::InvalidColoring(e.to_string()))
        };
        ThreeColoring::new(g, [wrap(a)?, wrap(b)?, wrap(c)?])
    }

    pub fn classes(&self) -> &[PerfectMatching; 3] {
        &self.classes
    }

    pub fn color_of(&self, e: usize) -> u8 {
        self.classes
            .iter()
            .position(|c| c.contains(e))
            .expect("classes partition the edges") as u8
    }
}

/// Calls `visit` with the sorted edge indices of every perfect matching of
/// `g` minus the `blocked` vertices, in depth-first order: branch on the
/// lowest-indexed uncovered vertex and try its edges in index order.
pub fn for_each_matching_avoiding<F>(g: &CubicGraph, blocked: &[usize], mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut covered = vec![false; g.n()];
    for &v in blocked {
        covered[v] = true;
    }
    let remaining = covered.iter().filter(|c| !**c).count();
    if remaining % 2 == 1 {
        return;
    }
    let mut chosen = Vec::with_capacity(remaining / 2);
    let mut sorted = Vec::with_capacity(remaining / 2);
    let _ = backtrack(g, &mut covered, 0, &mut chosen, &mut sorted, &mut visit);
}

fn backtrack<F>(
    g: &CubicGraph,
    covered: &mut [bool],
    from: usize,
    chosen: &mut Vec<usize>,
    sorted: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let Some(v) = (from..g.n()).find(|&v| !covered[v]) else {
        sorted.clear();
        sorted.extend_from_slice(chosen);
        sorted.sort_unstable();
        return visit(sorted);
    };
    covered[v] = true;
    for e in g.incident(v) {
        let w = g.other_end(e, v);
        if covered[w] {
            continue;
        }
        covered[w] = true;
        if !stranded(g, covered, v) && !stranded(g, covered, w) {
            chosen.push(e);
            let flow = backtrack(g, covered, v + 1, chosen, sorted, visit);
            chosen.pop();
            if flow.is_break() {
                covered[w] = false;
                covered[v] = false;
                return flow;
            }
        }
        covered[w] = false;
    }
    covered[v] = false;
    ControlFlow::Continue(())
}

/// Whether some uncovered neighbor of `v` has no uncovered neighbor left.
fn stranded(g: &CubicGraph, covered: &[bool], v: usize) -> bool {
    g.neighbors(v)
        .iter()
        .any(|&x| !covered[x] && g.neighbors(x).iter().all(|&y| covered[y]))
}

pub fn for_each_perfect_matching<F>(g: &CubicGraph, visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    for_each_matching_avoiding(g, &[], visit)
}

pub fn count_perfect_matchings(g: &CubicGraph) -> u64 {
    let mut count = 0u64;
    for_each_perfect_matching(g, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// All perfect matchings, sorted lexicographically by edge-index set.
pub fn enumerate_perfect_matchings(g: &CubicGraph) -> Result<Vec<PerfectMatching>> {
    enumerate_perfect_matchings_capped(g, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_perfect_matchings_capped(
    g: &CubicGraph,
    cap: usize,
) -> Result<Vec<PerfectMatching>> {
    collect_capped(g, &[], &[], cap).map(|sets| {
        sets.into_iter()
            .map(|base| PerfectMatching { base })
            .collect()
    })
}

fn collect_capped(
    g: &CubicGraph,
    blocked: &[usize],
    extra: &[usize],
    cap: usize,
) -> Result<Vec<EdgeSet>> {
    let mut out = Vec::new();
    let mut overflow = false;
    for_each_matching_avoiding(g, blocked, |edges| {
        if out.len() == cap {
            overflow = true;
            return ControlFlow::Break(());
        }
        let mut s = EdgeSet::empty(g);
        for &e in edges.iter().chain(extra) {
            s.insert(e);
        }
        out.push(s);
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::EnumerationCapExceeded { cap });
    }
    out.sort();
    Ok(out)
}

/// All 1-parity subgraphs centered at `t`: the three edges at `t` together
/// with a perfect matching of `g - N[t]`.
pub fn enumerate_parity_subgraphs(g: &CubicGraph, t: usize) -> Result<Vec<ParitySubgraph>> {
    enumerate_parity_subgraphs_capped(g, t, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_parity_subgraphs_capped(
    g: &CubicGraph,
    t: usize,
    cap: usize,
) -> Result<Vec<ParitySubgraph>> {
    if t >= g.n() {
        return Err(Error::InvalidVertex {
            vertex: t,
            vertex_count: g.n(),
        });
    }
    let blocked = closed_neighborhood(g, t);
    let sets = collect_capped(g, &blocked, &g.incident(t), cap)?;
    Ok(sets
        .into_iter()
        .map(|base| ParitySubgraph {
            base,
            centers: vec![t],
        })
        .collect())
}

pub(crate) fn closed_neighborhood(g: &CubicGraph, t: usize) -> Vec<usize> {
    let mut v = vec![t];
    v.extend(g.neighbors(t));
    v
}

/// Finds a proper 3-edge-coloring by constraint backtracking on edges,
/// choosing the edge with the fewest remaining colors first (ties broken by
/// lowest index). The edges at vertex 0 are fixed to colors 0, 1, 2.
pub fn three_edge_color(g: &CubicGraph) -> Option<ThreeColoring> {
    let mut solver = EdgeColoring::new(g);
    let first = g.incident(0);
    for (c, e) in first.into_iter().enumerate() {
        if !solver.assign(e, c as u8) {
            return None;
        }
    }
    if solver.solve() {
        let colors: Vec<u8> = solver.color.iter().map(|c| c.expect("complete")).collect();
        Some(ThreeColoring::from_colors(g, &colors).expect("solver output is proper"))
    } else {
        None
    }
}

struct EdgeColoring<'a> {
    g: &'a CubicGraph,
    domain: Vec<u8>,
    color: Vec<Option<u8>>,
    // (edge, previous domain, previous color)
    trail: Vec<(usize, u8, Option<u8>)>,
    adjacent: Vec<[usize; 4]>,
}

impl<'a> EdgeColoring<'a> {
    fn new(g: &'a CubicGraph) -> EdgeColoring<'a> {
        let adjacent = (0..g.m())
            .map(|e| {
                let (a, b) = g.endpoints(e);
                let mut out = [0; 4];
                let mut k = 0;
                for v in [a, b] {
                    for f in g.incident(v) {
                        if f != e {
                            out[k] = f;
                            k += 1;
                        }
                    }
                }
                out
            })
            .collect();
        EdgeColoring {
            g,
            domain: vec![0b111; g.m()],
            color: vec![None; g.m()],
            trail: Vec::new(),
            adjacent,
        }
    }

    /// Assigns a color and prunes it from adjacent edges; false on wipe-out.
    fn assign(&mut self, e: usize, c: u8) -> bool {
        if self.domain[e] & (1 << c) == 0 {
            return false;
        }
        self.trail.push((e, self.domain[e], self.color[e]));
        self.domain[e] = 1 << c;
        self.color[e] = Some(c);
        for i in 0..4 {
            let f = self.adjacent[e][i];
            if self.domain[f] & (1 << c) != 0 {
                if self.color[f].is_some() {
                    return false;
                }
                self.trail.push((f, self.domain[f], self.color[f]));
                self.domain[f] &= !(1 << c);
                if self.domain[f] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, d, c) = self.trail.pop().unwrap();
            self.domain[e] = d;
            self.color[e] = c;
        }
    }

    fn solve(&mut self) -> bool {
        let mut best: Option<(u32, usize)> = None;
        for e in 0..self.g.m() {
            if self.color[e].is_none() {
                let size = self.domain[e].count_ones();
                if best.is_none_or(|(s, _)| size < s) {
                    best = Some((size, e));
                    if size == 1 {
                        break;
                    }
                }
            }
        }
        let Some((_, e)) = best else {
            return true;
        };
        let dom = self.domain[e];
        for c in 0..3u8 {
            if dom & (1 << c) == 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(e, c) && self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}
