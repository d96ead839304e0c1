//! Perfect matching covers, the excessive index, and Berge-Fulkerson covers.

use crate::constructions::{tietze, tietze_triangle};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet, GraphId};
use crate::matching::{enumerate_perfect_matchings, PerfectMatching};

/// A list of edge sets, meant to be perfect matchings whose union is the
/// whole edge set. Members may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCover {
    host: GraphId,
    members: Vec<EdgeSet>,
}

impl MatchingCover {
    pub fn new(host: GraphId, members: Vec<EdgeSet>) -> MatchingCover {
        MatchingCover { host, members }
    }

    pub fn from_matchings(g: &CubicGraph, members: &[PerfectMatching]) -> MatchingCover {
        MatchingCover::new(g.id(), members.iter().map(|m| m.edges().clone()).collect())
    }

    pub fn host(&self) -> GraphId {
        self.host
    }

    pub fn members(&self) -> &[EdgeSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverCheck {
    Valid,
    /// Member `index` covers `vertex` a number of times other than one.
    InvalidMember {
        index: usize,
        vertex: usize,
    },
    Uncovered {
        edge: usize,
    },
}

impl CoverCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CoverCheck::Valid)
    }
}

pub fn verify_cover(g: &CubicGraph, cover: &MatchingCover) -> Result<CoverCheck> {
    g.check_host(cover.host)?;
    for (index, m) in cover.members.iter().enumerate() {
        g.check_host(m.host())?;
        if let Some(vertex) = (0..g.n()).find(|&v| m.degree_in(g, v) != 1) {
            return Ok(CoverCheck::InvalidMember { index, vertex });
        }
    }
    let mut covered = EdgeSet::empty(g);
    for m in &cover.members {
        covered = covered.union(m);
    }
    match (0..g.m()).find(|&e| !covered.contains(e)) {
        Some(edge) => Ok(CoverCheck::Uncovered { edge }),
        None => Ok(CoverCheck::Valid),
    }
}

/// Limits for the cover search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Stop with [`Error::SearchBudgetExceeded`] after this many nodes.
    pub node_limit: Option<u64>,
    pub enumeration_cap: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_limit: None,
            enumeration_cap: crate::matching::DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// The result of an excessive index computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExcessiveIndex {
    Exact {
        value: usize,
        witness: MatchingCover,
    },
    /// Exhaustive search proved there is no cover with at most `budget` members.
    ExceedsBudget { budget: usize },
}

impl ExcessiveIndex {
    pub fn value(&self) -> Option<usize> {
        match self {
            ExcessiveIndex::Exact { value, .. } => Some(*value),
            ExcessiveIndex::ExceedsBudget { .. } => None,
        }
    }
}

pub fn excessive_index(g: &CubicGraph, budget: Option<usize>) -> Result<ExcessiveIndex> {
    excessive_index_with(g, budget, SearchLimits::default())
}

/// Tries k = 3, 4, ... until a cover of size k exists. Three is a lower bound
/// for any cubic graph since a perfect matching has m/3 edges.
pub fn excessive_index_with(
    g: &CubicGraph,
    budget: Option<usize>,
    limits: SearchLimits,
) -> Result<ExcessiveIndex> {
    let pms = crate::matching::enumerate_perfect_matchings_capped(g, limits.enumeration_cap)?;
    let mut solver = CoverSolver::new(g, &pms, limits.node_limit);
    if let Some(edge) = solver.uncoverable_edge() {
        return Err(Error::NoPerfectMatchingCover { edge });
    }
    for k in 3.. {
        if budget.is_some_and(|b| k > b) {
            return Ok(ExcessiveIndex::ExceedsBudget {
                budget: budget.unwrap(),
            });
        }
        if let Some(chosen) = solver.find(k)? {
            let witness = solver.to_cover(&chosen, k);
            return Ok(ExcessiveIndex::Exact { value: k, witness });
        }
    }
    unreachable!("the full matching list is a cover")
}

/// A cover with exactly `k` members (repeating one if fewer suffice).
pub fn has_cover_of_size(g: &CubicGraph, k: usize) -> Result<Option<MatchingCover>> {
    has_cover_of_size_with(g, k, SearchLimits::default())
}

pub fn has_cover_of_size_with(
    g: &CubicGraph,
    k: usize,
    limits: SearchLimits,
) -> Result<Option<MatchingCover>> {
    let pms = crate::matching::enumerate_perfect_matchings_capped(g, limits.enumeration_cap)?;
    let mut solver = CoverSolver::new(g, &pms, limits.node_limit);
    if solver.uncoverable_edge().is_some() || k == 0 {
        return Ok(None);
    }
    Ok(solver.find(k)?.map(|chosen| solver.to_cover(&chosen, k)))
}

/// Branch and bound over the perfect matching list. Branches on an uncovered
/// edge lying in the fewest still-allowed matchings; after a matching has
/// been tried for that edge it is excluded from the sibling branches.
struct CoverSolver<'a> {
    g: &'a CubicGraph,
    pms: &'a [PerfectMatching],
    words: usize,
    masks: Vec<Vec<u64>>,
    by_edge: Vec<Vec<usize>>,
    forbidden: Vec<bool>,
    node_limit: Option<u64>,
    nodes: u64,
}

impl<'a> CoverSolver<'a> {
    fn new(g: &'a CubicGraph, pms: &'a [PerfectMatching], node_limit: Option<u64>) -> Self {
        let words = g.m().div_ceil(64);
        let masks: Vec<Vec<u64>> = pms.iter().map(|p| p.edges().words().to_vec()).collect();
        let mut by_edge = vec![Vec::new(); g.m()];
        for (i, p) in pms.iter().enumerate() {
            for e in p.edges().iter() {
                by_edge[e].push(i);
            }
        }
        CoverSolver {
            g,
            pms,
            words,
            masks,
            by_edge,
            forbidden: vec![false; pms.len()],
            node_limit,
            nodes: 0,
        }
    }

    fn uncoverable_edge(&self) -> Option<usize> {
        self.by_edge.iter().position(|l| l.is_empty())
    }

    fn find(&mut self, k: usize) -> Result<Option<Vec<usize>>> {
        self.nodes = 0;
        self.forbidden.iter_mut().for_each(|f| *f = false);
        let mut covered = vec![0u64; self.words];
        let mut chosen = Vec::with_capacity(k);
        if self.search(&mut covered, &mut chosen, k)? {
            Ok(Some(chosen))
        } else {
            Ok(None)
        }
    }

    fn to_cover(&self, chosen: &[usize], k: usize) -> MatchingCover {
        let mut members: Vec<EdgeSet> = chosen
            .iter()
            .map(|&i| self.pms[i].edges().clone())
            .collect();
        while members.len() < k {
            members.push(members[0].clone());
        }
        MatchingCover::new(self.g.id(), members)
    }

    fn is_covered(covered: &[u64], e: usize) -> bool {
        covered[e / 64] >> (e % 64) & 1 == 1
    }

    fn search(
        &mut self,
        covered: &mut Vec<u64>,
        chosen: &mut Vec<usize>,
        left: usize,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(Error::SearchBudgetExceeded {
                nodes: self.nodes - 1,
            });
        }
        let g = self.g;
        let uncovered = (0..g.m())
            .filter(|&e| !Self::is_covered(covered, e))
            .count();
        if uncovered == 0 {
            return Ok(true);
        }
        if left == 0 || uncovered > left * (g.n() / 2) {
            return Ok(false);
        }
        // each matching covers one edge per vertex
        for v in 0..g.n() {
            let open = g
                .incident(v)
                .iter()
                .filter(|&&e| !Self::is_covered(covered, e))
                .count();
            if open > left {
                return Ok(false);
            }
        }
        let mut best: Option<(usize, usize)> = None;
        for e in 0..g.m() {
            if Self::is_covered(covered, e) {
                continue;
            }
            let allowed = self.by_edge[e]
                .iter()
                .filter(|&&p| !self.forbidden[p])
                .count();
            if best.is_none_or(|(c, _)| allowed < c) {
                best = Some((allowed, e));
            }
        }
        let (allowed, edge) = best.expect("some edge is uncovered");
        if allowed == 0 {
            return Ok(false);
        }
        let candidates: Vec<usize> = self.by_edge[edge]
            .iter()
            .copied()
            .filter(|&p| !self.forbidden[p])
            .collect();
        let mut excluded = Vec::with_capacity(candidates.len());
        let mut found = false;
        for p in candidates {
            let saved = covered.clone();
            for (w, m) in covered.iter_mut().zip(&self.masks[p]) {
                *w |= m;
            }
            chosen.push(p);
            let result = self.search(covered, chosen, left - 1);
            *covered = saved;
            match result {
                Ok(true) => {
                    found = true;
                    break;
                }
                Ok(false) => {
                    chosen.pop();
                    self.forbidden[p] = true;
                    excluded.push(p);
                }
                Err(e) => {
                    for p in excluded {
                        self.forbidden[p] = false;
                    }
                    return Err(e);
                }
            }
        }
        for p in excluded {
            self.forbidden[p] = false;
        }
        Ok(found)
    }
}

pub const BF_COLORS: u8 = 6;

/// Edge coloring by 2-subsets of {1, ..., 6}. A set is stored as a bit mask
/// with bit `i - 1` standing for color `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfColoring {
    host: GraphId,
    masks: Vec<u8>,
}

impl BfColoring {
    pub fn new(host: GraphId, masks: Vec<u8>) -> BfColoring {
        BfColoring { host, masks }
    }

    pub fn from_pairs(host: GraphId, pairs: &[(u8, u8)]) -> Result<BfColoring> {
        let masks = pairs
            .iter()
            .map(|&(a, b)| {
                if !(1..=BF_COLORS).contains(&a) || !(1..=BF_COLORS).contains(&b) || a == b {
                    Err(Error::InvalidCertificate(format!(
                        "bad color pair ({a}, {b})"
                    )))
                } else {
                    Ok(1 << (a - 1) | 1 << (b - 1))
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BfColoring { host, masks })
    }

    pub fn host(&self) -> GraphId {
        self.host
    }

    pub fn masks(&self) -> &[u8] {
        &self.masks
    }

    pub fn mask(&self, e: usize) -> u8 {
        self.masks[e]
    }

    /// The colors of edge `e` in increasing order.
    pub fn pair(&self, e: usize) -> (u8, u8) {
        let m = self.masks[e];
        let lo = m.trailing_zeros() as u8 + 1;
        let hi = 8 - m.leading_zeros() as u8;
        (lo, hi)
    }

    pub fn pairs(&self) -> Vec<(u8, u8)> {
        (0..self.masks.len()).map(|e| self.pair(e)).collect()
    }

    /// Applies a color permutation, `perm[c - 1]` being the new name of `c`.
    pub fn permuted(&self, perm: &[u8; 6]) -> BfColoring {
        let masks = self.masks.iter().map(|&m| permute_mask(m, perm)).collect();
        BfColoring {
            host: self.host,
            masks,
        }
    }

    /// The six color classes `{e : i ∈ C(e)}`.
    pub fn classes(&self, g: &CubicGraph) -> Vec<EdgeSet> {
        (0..BF_COLORS)
            .map(|i| {
                let mut s = EdgeSet::empty(g);
                for (e, &m) in self.masks.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        s.insert(e);
                    }
                }
                s
            })
            .collect()
    }
}

pub(crate) fn permute_mask(m: u8, perm: &[u8; 6]) -> u8 {
    (0..6)
        .filter(|i| m >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << (perm[i] - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfCheck {
    Valid,
    WrongLength {
        expected: usize,
        found: usize,
    },
    NotAPair {
        edge: usize,
    },
    /// Two edges at `vertex` share a color.
    Clash {
        vertex: usize,
    },
}

impl BfCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, BfCheck::Valid)
    }
}

pub fn verify_bf_coloring(g: &CubicGraph, c: &BfColoring) -> Result<BfCheck> {
    g.check_host(c.host)?;
    if c.masks.len() != g.m() {
        return Ok(BfCheck::WrongLength {
            expected: g.m(),
            found: c.masks.len(),
        });
    }
    if let Some(edge) = c
        .masks
        .iter()
        .position(|&m| m.count_ones() != 2 || m >> BF_COLORS != 0)
    {
        return Ok(BfCheck::NotAPair { edge });
    }
    for v in 0..g.n() {
        let [a, b, d] = g.incident(v).map(|e| c.masks[e]);
        if a & b != 0 || a & d != 0 || b & d != 0 {
            return Ok(BfCheck::Clash { vertex: v });
        }
    }
    Ok(BfCheck::Valid)
}

pub fn find_bf_coloring(g: &CubicGraph) -> Result<Option<BfColoring>> {
    find_bf_coloring_with(g, None)
}

/// Backtracking over the 15 color pairs per edge with forward checking,
/// most constrained edge first. The edges at vertex 0 are fixed to
/// {1,2}, {3,4}, {5,6}.
pub fn find_bf_coloring_with(
    g: &CubicGraph,
    node_limit: Option<u64>,
) -> Result<Option<BfColoring>> {
    let pairs: Vec<u8> = (0u8..64).filter(|m| m.count_ones() == 2).collect();
    let conflict: Vec<u16> = pairs
        .iter()
        .map(|&p| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &q)| p & q != 0)
                .fold(0u16, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let mut search = PairSearch {
        g,
        pairs: &pairs,
        conflict: &conflict,
        domain: vec![(1u16 << pairs.len()) - 1; g.m()],
        value: vec![None; g.m()],
        trail: Vec::new(),
        nodes: 0,
        node_limit,
    };
    for (e, mask) in g
        .incident(0)
        .into_iter()
        .zip([0b000011u8, 0b001100, 0b110000])
    {
        let idx = pairs.iter().position(|&p| p == mask).unwrap();
        if !search.assign(e, idx) {
            return Ok(None);
        }
    }
    if search.solve()? {
        let masks = search
            .value
            .iter()
            .map(|v| pairs[v.expect("complete")])
            .collect();
        Ok(Some(BfColoring::new(g.id(), masks)))
    } else {
        Ok(None)
    }
}

struct PairSearch<'a> {
    g: &'a CubicGraph,
    pairs: &'a [u8],
    conflict: &'a [u16],
    domain: Vec<u16>,
    value: Vec<Option<usize>>,
    trail: Vec<(usize, u16, Option<usize>)>,
    nodes: u64,
    node_limit: Option<u64>,
}

impl PairSearch<'_> {
    fn assign(&mut self, e: usize, p: usize) -> bool {
        if self.domain[e] >> p & 1 == 0 {
            return false;
        }
        self.trail.push((e, self.domain[e], self.value[e]));
        self.domain[e] = 1 << p;
        self.value[e] = Some(p);
        let (a, b) = self.g.endpoints(e);
        for v in [a, b] {
            for f in self.g.incident(v) {
                if f == e {
                    continue;
                }
                let d = self.domain[f] & !self.conflict[p];
                if d != self.domain[f] {
                    if self.value[f].is_some() {
                        return false;
                    }
                    self.trail.push((f, self.domain[f], self.value[f]));
                    self.domain[f] = d;
                    if d == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (e, d, v) = self.trail.pop().unwrap();
            self.domain[e] = d;
            self.value[e] = v;
        }
    }

    fn solve(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(Error::SearchBudgetExceeded {
                nodes: self.nodes - 1,
            });
        }
        let mut best: Option<(u32, usize)> = None;
        for e in 0..self.g.m() {
            if self.value[e].is_none() {
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
            return Ok(true);
        };
        let dom = self.domain[e];
        for p in 0..self.pairs.len() {
            if dom >> p & 1 == 0 {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(e, p) && self.solve()? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }
}

/// Counts over every 4-member cover of the Tietze graph (members drawn from
/// its perfect matchings, repetitions allowed).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleReport {
    pub covers: usize,
    /// Covers in which some triangle edge is not in exactly one member.
    pub violations: usize,
    /// Covers with a member containing all three edges leaving the triangle.
    pub with_spanning_member: usize,
}

pub fn tietze_triangle_report() -> TriangleReport {
    let t = tietze();
    let pms = enumerate_perfect_matchings(&t).expect("small graph");
    let triangle = tietze_triangle(&t);
    let leaving = triangle_boundary(&t);
    let full = EdgeSet::full(&t);
    let mut report = TriangleReport {
        covers: 0,
        violations: 0,
        with_spanning_member: 0,
    };
    let p = pms.len();
    for a in 0..p {
        for b in a..p {
            for c in b..p {
                for d in c..p {
                    let members = [a, b, c, d].map(|i| pms[i].edges());
                    let union = members
                        .iter()
                        .fold(EdgeSet::empty(&t), |acc, m| acc.union(m));
                    if union != full {
                        continue;
                    }
                    report.covers += 1;
                    let exact = triangle
                        .iter()
                        .all(|&e| members.iter().filter(|m| m.contains(e)).count() == 1);
                    if !exact {
                        report.violations += 1;
                    }
                    if members
                        .iter()
                        .any(|m| leaving.iter().all(|&e| m.contains(e)))
                    {
                        report.with_spanning_member += 1;
                    }
                }
            }
        }
    }
    report
}

/// True iff every 4-member cover of the Tietze graph uses each triangle edge
/// exactly once.
pub fn tietze_triangle_property() -> bool {
    let r = tietze_triangle_report();
    r.covers > 0 && r.violations == 0
}

fn triangle_boundary(t: &CubicGraph) -> Vec<usize> {
    let tri = tietze_triangle(t);
    let mut verts: Vec<usize> = tri
        .iter()
        .flat_map(|&e| {
            let (a, b) = t.endpoints(e);
            [a, b]
        })
        .collect();
    verts.sort_unstable();
    verts.dedup();
    crate::graph::cut_boundary(t, &verts)
        .expect("proper subset")
        .boundary
        .to_vec()
}
