use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CycleCover, Multiplicity};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet};

/// Default node budget for one decomposition search.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Splits the multigraph with `mult[e]` copies of each edge into circuits of
/// `g`, none using an edge twice. Returns `None` when no split exists.
pub fn decompose_circuits(g: &CubicGraph, mult: &Multiplicity) -> Result<Option<CycleCover>> {
    decompose_circuits_with(g, mult, Some(DEFAULT_NODE_BUDGET))
}

pub fn decompose_circuits_with(
    g: &CubicGraph,
    mult: &Multiplicity,
    node_limit: Option<u64>,
) -> Result<Option<CycleCover>> {
    let (outcome, nodes) = search(g, mult.target(), node_limit.unwrap_or(u64::MAX));
    match outcome {
        Outcome::Found(c) => Ok(Some(c)),
        Outcome::Absent => Ok(None),
        Outcome::Budget => Err(Error::SearchBudgetExceeded { nodes }),
    }
}

pub(crate) enum Outcome {
    Found(CycleCover),
    Absent,
    Budget,
}

/// Runs the search for a fixed multiplicity and reports the nodes visited.
pub(crate) fn search(g: &CubicGraph, target: &[u8], limit: u64) -> (Outcome, u64) {
    run_search(Search::new(g, Doubling::Fixed(target), limit))
}

/// Searches jointly over the doubled edge set and its decomposition. The
/// doubled set must meet vertex `v` in exactly `need[v]` edges (1 or 3).
pub(crate) fn search_doubling(g: &CubicGraph, need: &[u8], limit: u64) -> (Outcome, u64) {
    run_search(Search::new(g, Doubling::Need(need), limit))
}

fn run_search(mut s: Search<'_>) -> (Outcome, u64) {
    let outcome = match s.run(0) {
        Step::Found => Outcome::Found(s.extract()),
        Step::Exhausted => Outcome::Absent,
        Step::Budget => Outcome::Budget,
    };
    (outcome, s.nodes)
}

#[derive(Clone, Copy)]
enum Doubling<'a> {
    Fixed(&'a [u8]),
    Need(&'a [u8]),
}

#[derive(PartialEq, Eq)]
enum Step {
    Found,
    Exhausted,
    Budget,
}

/// Copy `k` of edge `e` is the unit `2e + k`, with end `2u` at the first
/// endpoint of `e` and `2u + 1` at the second. A vertex is decided by
/// choosing which of its edges are doubled and then pairing up the ends
/// meeting there; the pairing is the route circuits take through it. Ends
/// not yet paired are the two ends of a partial trail, whose edge set is
/// kept so that no trail repeats an edge.
struct Search<'a> {
    g: &'a CubicGraph,
    doubling: Doubling<'a>,
    order: Vec<usize>,
    rank: Vec<usize>,
    /// Pairings at each vertex for each doubling pattern of its three
    /// incident edges (bit `k` set when the k-th edge is doubled).
    tables: Vec<[Pairings; 8]>,
    /// 0 while undecided.
    mult: Vec<u8>,
    other: Vec<usize>,
    words: usize,
    bits: Vec<u64>,
    pair: Vec<usize>,
    undo_links: Vec<(usize, usize)>,
    undo_words: Vec<u64>,
    /// Edges with exactly one endpoint among the first `d` vertices of the
    /// order, for each `d`, with the side of the later endpoint.
    frontier: Vec<Vec<(usize, usize)>>,
    /// States at a depth already known to have no completion.
    failed: HashSet<Vec<u8>>,
    slot: Vec<u8>,
    nodes: u64,
    limit: u64,
}

/// Ways to pair up the trail ends at one vertex.
type Pairings = Vec<Vec<(usize, usize)>>;

/// Failed states kept at most; the search stays correct without them.
const MEMO_CAP: usize = 1 << 22;

impl<'a> Search<'a> {
    fn new(g: &'a CubicGraph, doubling: Doubling<'a>, limit: u64) -> Search<'a> {
        let ends = 4 * g.m();
        let words = g.m().div_ceil(64);
        let order = narrow_order(g);
        let mut rank = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        let tables = (0..g.n()).map(|v| pairing_tables(g, v, &rank)).collect();
        let frontier = (0..=g.n())
            .map(|d| {
                (0..g.m())
                    .filter_map(|e| {
                        let (a, b) = g.endpoints(e);
                        match (rank[a] < d, rank[b] < d) {
                            (true, false) => Some((e, 1)),
                            (false, true) => Some((e, 0)),
                            _ => None,
                        }
                    })
                    .collect()
            })
            .collect();
        Search {
            g,
            doubling,
            order,
            rank,
            tables,
            mult: vec![0; g.m()],
            other: vec![usize::MAX; ends],
            words,
            bits: vec![0; ends * words],
            pair: vec![usize::MAX; ends],
            undo_links: Vec::new(),
            undo_words: Vec::new(),
            frontier,
            failed: HashSet::new(),
            slot: vec![u8::MAX; ends],
            nodes: 0,
            limit,
        }
    }

    /// Doubling patterns allowed at `v` given the edges already decided.
    fn patterns(&self, v: usize) -> Vec<usize> {
        let inc = self.g.incident(v);
        match self.doubling {
            Doubling::Fixed(target) => {
                vec![(0..3)
                    .filter(|&k| target[inc[k]] == 2)
                    .fold(0, |acc, k| acc | 1 << k)]
            }
            Doubling::Need(need) => (0..8usize)
                .filter(|&p| p.count_ones() == u32::from(need[v]))
                .filter(|&p| {
                    (0..3).all(|k| match self.mult[inc[k]] {
                        0 => true,
                        m => (m == 2) == (p >> k & 1 == 1),
                    })
                })
                .collect(),
        }
    }

    /// Whether every later neighbor of `v` can still meet its requirement.
    fn neighbors_feasible(&self, v: usize) -> bool {
        let Doubling::Need(need) = self.doubling else {
            return true;
        };
        self.g
            .neighbors(v)
            .into_iter()
            .filter(|&w| self.rank[w] > self.rank[v])
            .all(|w| {
                let inc = self.g.incident(w);
                let doubled = inc.iter().filter(|&&e| self.mult[e] == 2).count() as u8;
                let single = inc.iter().filter(|&&e| self.mult[e] == 1).count() as u8;
                doubled <= need[w] && 3 - single >= need[w]
            })
    }

    fn decide(&mut self, e: usize, m: u8) {
        self.mult[e] = m;
        let w = self.words;
        for k in 0..usize::from(m) {
            let u = 2 * e + k;
            self.other[2 * u] = 2 * u + 1;
            self.other[2 * u + 1] = 2 * u;
            for end in [2 * u, 2 * u + 1] {
                self.bits[end * w..(end + 1) * w].fill(0);
                self.bits[end * w + e / 64] |= 1 << (e % 64);
            }
        }
    }

    /// Everything the rest of the search depends on at `depth`: the
    /// multiplicity of each frontier edge, how the open trails join the
    /// frontier ends, and which pairs of trails share an edge and so can
    /// never merge.
    /// `None` when the frontier is too wide for the encoding.
    fn state_key(&mut self, depth: usize) -> Option<Vec<u8>> {
        let w = self.words;
        let width: usize = self.frontier[depth]
            .iter()
            .map(|&(e, _)| usize::from(self.mult[e]))
            .sum();
        if width >= usize::from(u8::MAX) {
            return None;
        }
        let mut key = vec![depth as u8, (depth >> 8) as u8];
        let mut ends = Vec::new();
        for &(e, side) in &self.frontier[depth] {
            key.push(self.mult[e]);
            for k in 0..usize::from(self.mult[e]) {
                let end = 2 * (2 * e + k) + side;
                self.slot[end] = ends.len() as u8;
                ends.push(end);
            }
        }
        let mut reps = Vec::new();
        for (i, &end) in ends.iter().enumerate() {
            let j = self.slot[self.other[end]];
            key.push(j);
            if i < usize::from(j) {
                reps.push(end);
            }
        }
        let mut acc = 0u8;
        let mut filled = 0;
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                let shared = (0..w).any(|k| self.bits[a * w + k] & self.bits[b * w + k] != 0);
                acc = acc << 1 | u8::from(shared);
                filled += 1;
                if filled == 8 {
                    key.push(acc);
                    (acc, filled) = (0, 0);
                }
            }
        }
        key.push(acc);
        for end in ends {
            self.slot[end] = u8::MAX;
        }
        Some(key)
    }

    fn run(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let key = self.state_key(depth);
        if key.as_ref().is_some_and(|k| self.failed.contains(k)) {
            return Step::Exhausted;
        }
        let step = self.expand(depth);
        if let Some(key) = key {
            if step == Step::Exhausted && self.failed.len() < MEMO_CAP {
                self.failed.insert(key);
            }
        }
        step
    }

    fn expand(&mut self, depth: usize) -> Step {
        let v = self.order[depth];
        let inc = self.g.incident(v);
        for pattern in self.patterns(v) {
            let fresh: Vec<usize> = (0..3).filter(|&k| self.mult[inc[k]] == 0).collect();
            for &k in &fresh {
                self.decide(inc[k], 1 + (pattern >> k & 1) as u8);
            }
            if self.neighbors_feasible(v) {
                for c in 0..self.tables[v][pattern].len() {
                    if self.nodes >= self.limit {
                        return Step::Budget;
                    }
                    self.nodes += 1;
                    let mark = (self.undo_links.len(), self.undo_words.len());
                    let mut ok = true;
                    for k in 0..self.tables[v][pattern][c].len() {
                        let (p, q) = self.tables[v][pattern][c][k];
                        if !self.join(p, q) {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        match self.run(depth + 1) {
                            Step::Exhausted => {}
                            done => return done,
                        }
                    }
                    self.rollback(mark);
                    for &(p, q) in &self.tables[v][pattern][c] {
                        self.pair[p] = usize::MAX;
                        self.pair[q] = usize::MAX;
                    }
                }
            }
            for &k in &fresh {
                self.mult[inc[k]] = 0;
            }
        }
        Step::Exhausted
    }

    /// Routes the trail ending at `p` into the one ending at `q`.
    fn join(&mut self, p: usize, q: usize) -> bool {
        self.pair[p] = q;
        self.pair[q] = p;
        let (pa, qb) = (self.other[p], self.other[q]);
        if pa == q {
            // the trail closes into a circuit
            return true;
        }
        let w = self.words;
        if (0..w).any(|k| self.bits[p * w + k] & self.bits[q * w + k] != 0) {
            return false;
        }
        for end in [pa, qb] {
            self.undo_links.push((end, self.other[end]));
            self.undo_words
                .extend_from_slice(&self.bits[end * w..(end + 1) * w]);
        }
        for k in 0..w {
            let merged = self.bits[p * w + k] | self.bits[q * w + k];
            self.bits[pa * w + k] = merged;
            self.bits[qb * w + k] = merged;
        }
        self.other[pa] = qb;
        self.other[qb] = pa;
        true
    }

    fn rollback(&mut self, (links, words): (usize, usize)) {
        let w = self.words;
        while self.undo_links.len() > links {
            let (end, other) = self.undo_links.pop().unwrap();
            let at = self.undo_words.len() - w;
            self.bits[end * w..(end + 1) * w].copy_from_slice(&self.undo_words[at..]);
            self.undo_words.truncate(at);
            self.other[end] = other;
        }
        debug_assert_eq!(self.undo_words.len(), words);
    }

    fn extract(&self) -> CycleCover {
        let g = self.g;
        let units: Vec<usize> = (0..g.m())
            .flat_map(|e| (0..usize::from(self.mult[e])).map(move |k| 2 * e + k))
            .collect();
        let mut seen = vec![false; 2 * g.m()];
        let mut circuits = Vec::new();
        for &start in &units {
            if seen[start] {
                continue;
            }
            let mut set = EdgeSet::empty(g);
            let mut u = start;
            let mut leave = 2 * start + 1;
            loop {
                seen[u] = true;
                set.insert(u / 2);
                let enter = self.pair[leave];
                u = enter / 2;
                if u == start {
                    break;
                }
                leave = enter ^ 1;
            }
            circuits.push(set);
        }
        CycleCover::new(g.id(), circuits).canonical()
    }
}

/// Pairings of the edge ends at `v` for each doubling pattern. Pairs never
/// join two copies of one edge. Copies are interchangeable, so at the
/// earlier endpoint of a doubled edge its first copy takes the smaller
/// partner.
fn pairing_tables(g: &CubicGraph, v: usize, rank: &[usize]) -> [Pairings; 8] {
    let inc = g.incident(v);
    std::array::from_fn(|pattern| {
        if pattern.count_ones() % 2 == 0 {
            return Vec::new();
        }
        let mut local: Vec<(usize, usize)> = Vec::new();
        let mut first_at_v = Vec::new();
        for (k, &e) in inc.iter().enumerate() {
            let side = usize::from(g.endpoints(e).0 != v);
            let copies = 1 + (pattern >> k & 1);
            for c in 0..copies {
                local.push((2 * (2 * e + c) + side, e));
            }
            if copies == 2 && rank[g.other_end(e, v)] > rank[v] {
                first_at_v.push((2 * (2 * e) + side, 2 * (2 * e + 1) + side));
            }
        }
        let mut out = Vec::new();
        for p in pairings(local.len()) {
            if p.iter().any(|&(i, j)| local[i].1 == local[j].1) {
                continue;
            }
            let pairs: Vec<(usize, usize)> =
                p.iter().map(|&(i, j)| (local[i].0, local[j].0)).collect();
            let partner = |end: usize| {
                pairs.iter().find_map(|&(a, b)| {
                    if a == end {
                        Some(b)
                    } else if b == end {
                        Some(a)
                    } else {
                        None
                    }
                })
            };
            if first_at_v.iter().all(|&(c0, c1)| partner(c0) < partner(c1)) {
                out.push(pairs);
            }
        }
        out
    })
}

/// Vertex order keeping the set of edges leaving the processed part small.
/// Each greedy run takes the vertex with the most processed neighbors,
/// breaking ties by when it was first reached; the best run over all start
/// vertices and both tie rules wins.
fn narrow_order(g: &CubicGraph) -> Vec<usize> {
    let mut best: Option<((usize, u64), Vec<usize>)> = None;
    for start in 0..g.n() {
        for latest in [false, true] {
            let order = greedy_order(g, start, latest);
            let score = width_score(g, &order);
            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((score, order));
            }
        }
    }
    let (mut score, mut order) = best.unwrap_or_default();
    // local search by moving single vertices and reversing stretches
    let n = order.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..if n < 2 { 0 } else { 2000 * n } {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (i, j) = (i.min(j), i.max(j));
        let mut next = order.clone();
        if rng.gen_bool(0.5) {
            let v = next.remove(i);
            next.insert(j, v);
        } else {
            next[i..=j].reverse();
        }
        let s = width_score(g, &next);
        if s <= score {
            (score, order) = (s, next);
        }
    }
    order
}

fn greedy_order(g: &CubicGraph, start: usize, latest: bool) -> Vec<usize> {
    let mut done = vec![false; g.n()];
    let mut touched = vec![0u8; g.n()];
    let mut reached: Vec<Option<usize>> = vec![None; g.n()];
    let mut order = Vec::with_capacity(g.n());
    reached[start] = Some(0);
    while order.len() < g.n() {
        let v = (0..g.n())
            .filter(|&v| !done[v])
            .filter_map(|v| reached[v].map(|r| (v, r)))
            .min_by_key(|&(v, r)| {
                let when = if latest { usize::MAX - r } else { r };
                (std::cmp::Reverse(touched[v]), when, v)
            })
            .map(|(v, _)| v)
            .unwrap_or_else(|| (0..g.n()).find(|&v| !done[v]).unwrap());
        done[v] = true;
        for w in g.neighbors(v) {
            touched[w] += 1;
            reached[w].get_or_insert(order.len() + 1);
        }
        order.push(v);
    }
    order
}

/// Largest frontier size along `order`, then the sum of `4^width`, which
/// tracks the number of search states better than the plain sum.
fn width_score(g: &CubicGraph, order: &[usize]) -> (usize, u64) {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut delta = vec![0i64; g.n() + 1];
    for e in 0..g.m() {
        let (a, b) = g.endpoints(e);
        let (lo, hi) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        delta[lo + 1] += 1;
        delta[hi + 1] -= 1;
    }
    let (mut width, mut max, mut total) = (0i64, 0usize, 0u64);
    for d in delta {
        width += d;
        max = max.max(width as usize);
        total = total.saturating_add(4u64.saturating_pow(width as u32));
    }
    (max, total)
}

/// All perfect pairings of `0..k` for even `k`.
fn pairings(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rest: &mut Vec<usize>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = rest.remove(0);
        for i in 0..rest.len() {
            let b = rest.remove(i);
            cur.push((a, b));
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, b);
        }
        rest.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..k).collect(), &mut Vec::new(), &mut out);
    out
}
