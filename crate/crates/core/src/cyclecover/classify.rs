use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decompose::{search_doubling, Outcome, DEFAULT_NODE_BUDGET};
use super::CycleCover;
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, GraphId};

pub const SCAN_STATE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SccClass {
    #[serde(rename = "EXACT_43M")]
    Exact43m,
    #[serde(rename = "EXACT_43M_PLUS_1")]
    Exact43mPlus1,
    #[serde(rename = "AT_LEAST_43M_PLUS_2")]
    AtLeast43mPlus2,
}

impl SccClass {
    /// The shortest cover length, or its lower bound for the last class.
    pub fn length(self, m: usize) -> usize {
        let base = 4 * m / 3;
        match self {
            SccClass::Exact43m => base,
            SccClass::Exact43mPlus1 => base + 1,
            SccClass::AtLeast43mPlus2 => base + 2,
        }
    }
}

/// Candidate families ruled out so far: all perfect matchings, and the
/// parity subgraphs whose degree-3 vertex is each listed center.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhausted {
    pub pms: bool,
    pub parity: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccVerdict {
    pub class: SccClass,
    pub witness: Option<CycleCover>,
    pub exhausted: Exhausted,
    pub nodes: u64,
}

impl SccVerdict {
    /// Shortest cover length for the exact classes.
    pub fn length(&self) -> Option<usize> {
        self.witness.as_ref().map(CycleCover::length)
    }
}

/// Where an interrupted classification stopped, bound to its graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanState {
    pub version: u32,
    pub graph_sha256: GraphId,
    pub exhausted: Exhausted,
    pub nodes: u64,
}

impl ScanState {
    pub fn fresh(g: &CubicGraph) -> ScanState {
        ScanState {
            version: SCAN_STATE_VERSION,
            graph_sha256: g.id(),
            exhausted: Exhausted::default(),
            nodes: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SccOptions {
    /// Total node budget for this call, checked between batches of families.
    pub node_limit: Option<u64>,
    /// Node budget for one family; exceeding it is an error.
    pub family_limit: u64,
    /// Centers searched in parallel per batch.
    pub batch: usize,
    pub resume: Option<ScanState>,
}

impl Default for SccOptions {
    fn default() -> Self {
        SccOptions {
            node_limit: None,
            family_limit: DEFAULT_NODE_BUDGET,
            batch: 8,
            resume: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SccRun {
    Done(SccVerdict),
    /// The total budget ran out; continue with this state.
    Suspended(ScanState),
}

pub fn scc_classify(g: &CubicGraph) -> Result<SccVerdict> {
    match scc_classify_with(g, &SccOptions::default())? {
        SccRun::Done(v) => Ok(v),
        SccRun::Suspended(s) => Err(Error::SearchBudgetExceeded { nodes: s.nodes }),
    }
}

/// Looks for a cover doubling a perfect matching, then for one doubling a
/// parity subgraph with its degree-3 vertex at `t = 0, 1, ...`. Each family
/// is searched as a whole, choosing the doubled edges together with the
/// circuits. Centers run in parallel batches; the verdict and witness are
/// those of the first feasible family in this order, whatever the schedule.
pub fn scc_classify_with(g: &CubicGraph, opts: &SccOptions) -> Result<SccRun> {
    let mut state = match &opts.resume {
        Some(s) => {
            if s.version != SCAN_STATE_VERSION {
                return Err(Error::InvalidCertificate(format!(
                    "resume state version {}",
                    s.version
                )));
            }
            if s.graph_sha256 != g.id() {
                return Err(Error::HostMismatch {
                    expected: g.id().to_hex(),
                    found: s.graph_sha256.to_hex(),
                });
            }
            s.clone()
        }
        None => ScanState::fresh(g),
    };
    let start = state.nodes;
    let over_budget = |state: &ScanState| opts.node_limit.is_some_and(|l| state.nodes - start >= l);
    let verdict = |state: ScanState, class, witness| {
        SccRun::Done(SccVerdict {
            class,
            witness,
            exhausted: state.exhausted,
            nodes: state.nodes,
        })
    };

    if !state.exhausted.pms {
        let (outcome, nodes) = search_doubling(g, &vec![1; g.n()], opts.family_limit);
        state.nodes += nodes;
        match outcome {
            Outcome::Found(c) => return Ok(verdict(state, SccClass::Exact43m, Some(c))),
            Outcome::Budget => return Err(Error::SearchBudgetExceeded { nodes }),
            Outcome::Absent => state.exhausted.pms = true,
        }
        if over_budget(&state) {
            return Ok(SccRun::Suspended(state));
        }
    }
    while state.exhausted.parity.len() < g.n() {
        let first = state.exhausted.parity.len();
        let centers: Vec<usize> = (first..g.n()).take(opts.batch.max(1)).collect();
        let outcomes: Vec<(Outcome, u64)> = centers
            .par_iter()
            .map(|&t| {
                let mut need = vec![1; g.n()];
                need[t] = 3;
                search_doubling(g, &need, opts.family_limit)
            })
            .collect();
        for (&t, (outcome, nodes)) in centers.iter().zip(outcomes) {
            state.nodes += nodes;
            match outcome {
                Outcome::Found(c) => return Ok(verdict(state, SccClass::Exact43mPlus1, Some(c))),
                Outcome::Budget => return Err(Error::SearchBudgetExceeded { nodes }),
                Outcome::Absent => state.exhausted.parity.push(t),
            }
        }
        if state.exhausted.parity.len() < g.n() && over_budget(&state) {
            return Ok(SccRun::Suspended(state));
        }
    }
    Ok(verdict(state, SccClass::AtLeast43mPlus2, None))
}
