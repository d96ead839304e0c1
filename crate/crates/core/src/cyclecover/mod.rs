//! Cycle covers of cubic graphs and the classification of the shortest
//! cover length into `4m/3`, `4m/3 + 1` and at least `4m/3 + 2`.
//!
//! A cover of length `4m/3` doubles exactly a perfect matching, and one of
//! length `4m/3 + 1` doubles exactly a parity subgraph with one vertex of
//! degree 3. Either way the doubled multigraph must split into circuits of
//! the simple graph, which is what [`decompose_circuits`] decides.

mod classify;
mod decompose;
mod types;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet, GraphId};

pub use classify::{
    scc_classify, scc_classify_with, Exhausted, ScanState, SccClass, SccOptions, SccRun,
    SccVerdict, SCAN_STATE_VERSION,
};
pub use decompose::{decompose_circuits, decompose_circuits_with, DEFAULT_NODE_BUDGET};
pub use types::{forbidden_center_check, h_type, parity_center_witness, HType};

/// A list of circuits of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCover {
    host: GraphId,
    circuits: Vec<EdgeSet>,
}

impl CycleCover {
    pub fn new(host: GraphId, circuits: Vec<EdgeSet>) -> CycleCover {
        CycleCover { host, circuits }
    }

    pub fn host(&self) -> GraphId {
        self.host
    }

    pub fn circuits(&self) -> &[EdgeSet] {
        &self.circuits
    }

    /// Total number of edges over all circuits.
    pub fn length(&self) -> usize {
        self.circuits.iter().map(EdgeSet::count).sum()
    }

    /// How many circuits contain each edge.
    pub fn coverage(&self, m: usize) -> Vec<usize> {
        let mut cov = vec![0; m];
        for c in &self.circuits {
            for e in c.iter() {
                if e < m {
                    cov[e] += 1;
                }
            }
        }
        cov
    }

    /// Edges lying in at least two circuits.
    pub fn doubled(&self, g: &CubicGraph) -> EdgeSet {
        let cov = self.coverage(g.m());
        let mut s = EdgeSet::empty(g);
        for (e, &k) in cov.iter().enumerate() {
            if k >= 2 {
                s.insert(e);
            }
        }
        s
    }

    /// Same circuits in increasing order.
    pub fn canonical(mut self) -> CycleCover {
        self.circuits.sort();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleCoverCheck {
    pub valid: bool,
    pub length: usize,
}

/// Checks that every member is a circuit of `g` and every edge is covered.
pub fn verify_cycle_cover(g: &CubicGraph, c: &CycleCover) -> Result<CycleCoverCheck> {
    g.check_host(c.host)?;
    let length = c.length();
    let valid = c
        .circuits
        .iter()
        .all(|s| s.universe() == g.m() && is_circuit(g, s))
        && c.coverage(g.m()).iter().all(|&k| k >= 1);
    if valid {
        assert!(3 * length >= 4 * g.m(), "a cycle cover shorter than 4m/3");
    }
    Ok(CycleCoverCheck { valid, length })
}

/// Whether `s` is the edge set of a single cycle.
pub fn is_circuit(g: &CubicGraph, s: &EdgeSet) -> bool {
    let Some(first) = s.iter().next() else {
        return false;
    };
    let mut touched = 0usize;
    for v in 0..g.n() {
        match s.degree_in(g, v) {
            0 => {}
            2 => touched += 1,
            _ => return false,
        }
    }
    // walk the cycle through `first` and check it uses every edge
    let (start, mut v) = g.endpoints(first);
    let mut prev = first;
    let mut steps = 1;
    while v != start {
        let next = g
            .incident(v)
            .into_iter()
            .find(|&e| e != prev && s.contains(e))
            .unwrap();
        v = g.other_end(next, v);
        prev = next;
        steps += 1;
    }
    steps == s.count() && steps == touched
}

/// Target number of circuits through each edge, 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplicity {
    target: Vec<u8>,
}

impl Multiplicity {
    pub fn new(g: &CubicGraph, target: Vec<u8>) -> Result<Multiplicity> {
        if target.len() != g.m() {
            return Err(Error::InvalidMultiplicity(format!(
                "{} entries for {} edges",
                target.len(),
                g.m()
            )));
        }
        if let Some(e) = target.iter().position(|&t| !(1..=2).contains(&t)) {
            return Err(Error::InvalidMultiplicity(format!(
                "edge {e} has target {}",
                target[e]
            )));
        }
        for v in 0..g.n() {
            let sum: u32 = g.incident(v).iter().map(|&e| u32::from(target[e])).sum();
            if sum % 2 == 1 {
                return Err(Error::InvalidMultiplicity(format!(
                    "odd sum {sum} at vertex {v}"
                )));
            }
        }
        Ok(Multiplicity { target })
    }

    /// Target 2 on `doubled` and 1 elsewhere.
    pub fn from_doubled(g: &CubicGraph, doubled: &EdgeSet) -> Result<Multiplicity> {
        g.check_host(doubled.host())?;
        Multiplicity::new(
            g,
            (0..g.m())
                .map(|e| 1 + u8::from(doubled.contains(e)))
                .collect(),
        )
    }

    pub fn target(&self) -> &[u8] {
        &self.target
    }

    pub fn total(&self) -> usize {
        self.target.iter().map(|&t| usize::from(t)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k4, petersen};
    use crate::matching::three_edge_color;

    #[test]
    fn k4_cover_from_coloring() {
        let g = k4();
        let c = three_edge_color(&g).unwrap();
        let [m0, m1, m2] = c.classes().clone().map(|m| m.into_edges());
        let cover = CycleCover::new(g.id(), vec![m0.union(&m1), m0.union(&m2)]);
        let check = verify_cycle_cover(&g, &cover).unwrap();
        assert_eq!(
            check,
            CycleCoverCheck {
                valid: true,
                length: 8
            }
        );
        assert_eq!(cover.doubled(&g), m0);
    }

    #[test]
    fn missing_edge_or_non_circuit_invalid() {
        let g = k4();
        let c = three_edge_color(&g).unwrap();
        let [m0, m1, m2] = c.classes().clone().map(|m| m.into_edges());
        let one = CycleCover::new(g.id(), vec![m0.union(&m1)]);
        assert!(!verify_cycle_cover(&g, &one).unwrap().valid);
        let not_circuit = CycleCover::new(g.id(), vec![m0.union(&m1), m2.clone()]);
        assert!(!verify_cycle_cover(&g, &not_circuit).unwrap().valid);
        // the outer 5-cycle is a circuit, the whole graph is not
        let p = petersen();
        let five = EdgeSet::from_indices(
            &p,
            (0..p.m()).filter(|&e| {
                let (a, b) = p.endpoints(e);
                a < 5 && b < 5
            }),
        )
        .unwrap();
        assert!(is_circuit(&p, &five));
        let all = EdgeSet::full(&p);
        assert!(!is_circuit(&p, &all));
    }

    #[test]
    fn multiplicity_validation() {
        let g = k4();
        assert!(Multiplicity::new(&g, vec![1; 6]).is_err());
        assert!(Multiplicity::new(&g, vec![2; 6]).is_ok());
        assert!(Multiplicity::new(&g, vec![3, 1, 1, 1, 1, 3]).is_err());
        assert!(Multiplicity::new(&g, vec![1; 5]).is_err());
    }
}
