use std::fmt;

use super::{CubicGraph, GraphId};
use crate::error::{Error, Result};

/// A subset of the edges of one particular graph, stored as a bit mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    host: GraphId,
    len: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(g: &CubicGraph) -> EdgeSet {
        EdgeSet {
            host: g.id(),
            len: g.m(),
            words: vec![0; g.m().div_ceil(64)],
        }
    }

    pub fn full(g: &CubicGraph) -> EdgeSet {
        let mut s = EdgeSet::empty(g);
        for e in 0..g.m() {
            s.insert(e);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(
        g: &CubicGraph,
        edges: I,
    ) -> Result<EdgeSet> {
        let mut s = EdgeSet::empty(g);
        for e in edges {
            if e >= g.m() {
                return Err(Error::InvalidEdgeIndex {
                    edge: e,
                    edge_count: g.m(),
                });
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn host(&self) -> GraphId {
        self.host
    }

    /// Number of edges of the host graph.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.len && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.len, "edge {e} out of range");
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        if e < self.len {
            self.words[e / 64] &= !(1 << (e % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &EdgeSet, f: impl Fn(u64, u64) -> u64) -> EdgeSet {
        assert_eq!(self.host, other.host, "edge sets of different graphs");
        EdgeSet {
            host: self.host,
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Number of members incident to `v`.
    pub fn degree_in(&self, g: &CubicGraph, v: usize) -> usize {
        g.incident(v).iter().filter(|&&e| self.contains(e)).count()
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order of the sorted member lists.
impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serializes as the sorted list of member indices.
impl serde::Serialize for EdgeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
