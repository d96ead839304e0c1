//! Immutable simple cubic graphs, edge subsets and edge cuts.

mod edgeset;
mod format;
mod invariants;

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use edgeset::EdgeSet;
pub use format::{
    parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6, GraphFormat,
};
pub use invariants::{
    bridges, check_cut_parity, cut_boundary, cyclically_edge_connected_at_least, girth,
    is_bridgeless, Cut, CyclicConnectivity,
};

/// SHA-256 of the canonical edge list of a graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId([u8; 32]);

impl GraphId {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Option<GraphId> {
        let bytes = hex::decode(s.trim()).ok()?;
        let arr: [u8; 32] = bytes.try_into().ok()?;
        Some(GraphId(arr))
    }
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphId({})", &self.to_hex()[..12])
    }
}

impl Serialize for GraphId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for GraphId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GraphId::from_hex(&s).ok_or_else(|| serde::de::Error::custom("expected 64 hex digits"))
    }
}

/// Serializes as its graph6 string.
impl Serialize for CubicGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_graph6(self))
    }
}

/// A simple connected cubic graph.
///
/// Edge indices are the positions in the edge list given at construction and
/// never change. Each edge is stored with its smaller endpoint first.
#[derive(Clone, PartialEq, Eq)]
pub struct CubicGraph {
    edges: Vec<(usize, usize)>,
    incidence: Vec<[usize; 3]>,
    id: GraphId,
}

impl CubicGraph {
    /// Builds and validates a cubic graph on `n` vertices from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<CubicGraph> {
        let mut normalized = Vec::with_capacity(edges.len());
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (idx, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::InvalidVertex {
                        vertex: v,
                        vertex_count: n,
                    });
                }
            }
            let e = (a.min(b), a.max(b));
            if a == b || !seen.insert(e) {
                return Err(Error::NotSimple {
                    edge: idx,
                    u: a,
                    v: b,
                });
            }
            normalized.push(e);
        }

        let mut inc: Vec<Vec<usize>> = vec![Vec::with_capacity(3); n];
        for (idx, &(a, b)) in normalized.iter().enumerate() {
            inc[a].push(idx);
            inc[b].push(idx);
        }
        for (v, list) in inc.iter().enumerate() {
            if list.len() != 3 {
                return Err(Error::NotCubic {
                    vertex: v,
                    degree: list.len(),
                });
            }
        }
        if n == 0 {
            return Err(Error::Parse {
                line: 0,
                message: "graph has no vertices".into(),
            });
        }
        let incidence: Vec<[usize; 3]> = inc.into_iter().map(|l| [l[0], l[1], l[2]]).collect();

        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &incidence[v] {
                let (a, b) = normalized[e];
                let w = if a == v { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::NotConnected { vertex: v });
        }

        let id = content_hash(n, &normalized);
        Ok(CubicGraph {
            edges: normalized,
            incidence,
            id,
        })
    }

    /// Like [`CubicGraph::from_edges`] but first sorts the edges into graph6
    /// bit order, so that a graph6 round trip preserves edge indices.
    pub fn from_edges_graph6_order(n: usize, edges: &[(usize, usize)]) -> Result<CubicGraph> {
        let mut sorted: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        sorted.sort_by_key(|&(a, b)| (b, a));
        CubicGraph::from_edges(n, &sorted)
    }

    pub fn n(&self) -> usize {
        self.incidence.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The three edges at `v`, in increasing index order.
    pub fn incident(&self, v: usize) -> [usize; 3] {
        self.incidence[v]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        debug_assert!(a == v || b == v);
        if a == v {
            b
        } else {
            a
        }
    }

    /// Neighbors of `v`, ordered like [`CubicGraph::incident`].
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.incidence[v].map(|e| self.other_end(e, v))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n() {
            return None;
        }
        self.incidence[u]
            .iter()
            .copied()
            .find(|&e| self.other_end(e, u) == v)
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Whether the edge lists are identical in the given order, i.e. whether
    /// the graph has the given content hash.
    pub fn check_host(&self, host: GraphId) -> Result<()> {
        if host == self.id {
            Ok(())
        } else {
            Err(Error::HostMismatch {
                expected: self.id.to_hex(),
                found: host.to_hex(),
            })
        }
    }

    /// Applies a vertex permutation (`perm[old] = new`) and keeps the edge order.
    pub fn relabel(&self, perm: &[usize]) -> Result<CubicGraph> {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        CubicGraph::from_edges(self.n(), &edges)
    }

    /// Graph with the same vertices but edges permuted (`order[new] = old`).
    pub fn reorder_edges(&self, order: &[usize]) -> Result<CubicGraph> {
        let edges: Vec<(usize, usize)> = order.iter().map(|&e| self.edges[e]).collect();
        CubicGraph::from_edges(self.n(), &edges)
    }
}

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubicGraph")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("id", &self.id)
            .finish()
    }
}

/// The canonical text is `"{n}\n"` followed by `"{u} {v}\n"` for every edge
/// in index order, with `u < v`.
fn content_hash(n: usize, edges: &[(usize, usize)]) -> GraphId {
    let mut hasher = Sha256::new();
    hasher.update(format!("{n}\n").as_bytes());
    for &(a, b) in edges {
        hasher.update(format!("{a} {b}\n").as_bytes());
    }
    let digest = hasher.finalize();
    let mut out = [0u8; 32];
    out.copy_from_slice(&digest);
    GraphId(out)
}
