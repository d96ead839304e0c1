//! JSON certificates for cover and cycle cover verdicts.
//!
//! Edges are referred to by index into the graph's edge list, and every
//! certificate carries the hash of the graph it was issued for.

use serde::{Deserialize, Serialize};

use crate::covers::{verify_bf_coloring, verify_cover, BfColoring, MatchingCover};
use crate::cyclecover::{verify_cycle_cover, CycleCover, Exhausted, SccClass, SccVerdict};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet, GraphId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Perfect matchings covering every edge. `assignment[e]` lists the
    /// members containing edge `e`.
    MatchingCover {
        graph_sha256: GraphId,
        matchings: Vec<Vec<usize>>,
        assignment: Vec<Vec<usize>>,
    },
    /// Six perfect matchings covering every edge twice, `assignment[e]`
    /// naming the two that contain `e`.
    BfColoring {
        graph_sha256: GraphId,
        matchings: Vec<Vec<usize>>,
        assignment: Vec<[usize; 2]>,
    },
    /// A shortest cycle cover class. The witness is empty when the class is
    /// only a lower bound.
    Scc {
        graph_sha256: GraphId,
        class: SccClass,
        witness_circuits: Vec<Vec<usize>>,
        exhausted: Exhausted,
    },
}

/// Outcome of checking a certificate against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub valid: bool,
    pub reason: Option<String>,
}

impl Verification {
    fn ok() -> Verification {
        Verification {
            valid: true,
            reason: None,
        }
    }

    fn fail(reason: impl Into<String>) -> Verification {
        Verification {
            valid: false,
            reason: Some(reason.into()),
        }
    }
}

impl Certificate {
    pub fn from_matching_cover(g: &CubicGraph, cover: &MatchingCover) -> Certificate {
        let matchings: Vec<Vec<usize>> = cover.members().iter().map(EdgeSet::to_vec).collect();
        let assignment = (0..g.m())
            .map(|e| {
                (0..matchings.len())
                    .filter(|&i| cover.members()[i].contains(e))
                    .collect()
            })
            .collect();
        Certificate::MatchingCover {
            graph_sha256: cover.host(),
            matchings,
            assignment,
        }
    }

    pub fn from_bf_coloring(g: &CubicGraph, c: &BfColoring) -> Certificate {
        let matchings = c.classes(g).iter().map(EdgeSet::to_vec).collect();
        let assignment = c
            .pairs()
            .iter()
            .map(|&(a, b)| [usize::from(a) - 1, usize::from(b) - 1])
            .collect();
        Certificate::BfColoring {
            graph_sha256: c.host(),
            matchings,
            assignment,
        }
    }

    pub fn from_scc(g: &CubicGraph, v: &SccVerdict) -> Certificate {
        let witness_circuits = v
            .witness
            .iter()
            .flat_map(|w| w.circuits().iter().map(EdgeSet::to_vec))
            .collect();
        Certificate::Scc {
            graph_sha256: g.id(),
            class: v.class,
            witness_circuits,
            exhausted: v.exhausted.clone(),
        }
    }

    pub fn graph_sha256(&self) -> GraphId {
        match self {
            Certificate::MatchingCover { graph_sha256, .. }
            | Certificate::BfColoring { graph_sha256, .. }
            | Certificate::Scc { graph_sha256, .. } => *graph_sha256,
        }
    }

    /// Re-checks the certificate. For the cover kinds this is complete. For
    /// `scc` the witness is checked in full, while the infeasibility record
    /// is only checked to cover the families the class relies on; rerunning
    /// those searches is up to the caller.
    pub fn verify(&self, g: &CubicGraph) -> Result<Verification> {
        g.check_host(self.graph_sha256())?;
        match self.check(g) {
            Err(Error::InvalidEdgeIndex { edge, .. }) => {
                Ok(Verification::fail(format!("edge {edge} out of range")))
            }
            Err(Error::InvalidCertificate(reason)) => Ok(Verification::fail(reason)),
            other => other,
        }
    }

    fn check(&self, g: &CubicGraph) -> Result<Verification> {
        match self {
            Certificate::MatchingCover {
                matchings,
                assignment,
                ..
            } => {
                let members = edge_sets(g, matchings)?;
                if let Some(bad) =
                    check_assignment(g, &members, assignment.iter().map(Vec::as_slice))
                {
                    return Ok(bad);
                }
                let check = verify_cover(g, &MatchingCover::new(g.id(), members))?;
                Ok(if check.is_valid() {
                    Verification::ok()
                } else {
                    Verification::fail(format!("{check:?}"))
                })
            }
            Certificate::BfColoring {
                matchings,
                assignment,
                ..
            } => {
                if matchings.len() != 6 {
                    return Ok(Verification::fail(format!(
                        "{} matchings, expected 6",
                        matchings.len()
                    )));
                }
                let members = edge_sets(g, matchings)?;
                if let Some(bad) =
                    check_assignment(g, &members, assignment.iter().map(|p| p.as_slice()))
                {
                    return Ok(bad);
                }
                let pairs: Vec<(u8, u8)> = assignment
                    .iter()
                    .map(|&[a, b]| (a.min(6) as u8 + 1, b.min(6) as u8 + 1))
                    .collect();
                let coloring = BfColoring::from_pairs(g.id(), &pairs)?;
                let check = verify_bf_coloring(g, &coloring)?;
                Ok(if check.is_valid() {
                    Verification::ok()
                } else {
                    Verification::fail(format!("{check:?}"))
                })
            }
            Certificate::Scc {
                class,
                witness_circuits,
                exhausted,
                ..
            } => verify_scc(g, *class, witness_circuits, exhausted),
        }
    }
}

fn edge_sets(g: &CubicGraph, lists: &[Vec<usize>]) -> Result<Vec<EdgeSet>> {
    lists
        .iter()
        .map(|l| EdgeSet::from_indices(g, l.iter().copied()))
        .collect()
}

/// `assignment[e]` must list exactly the members containing `e`.
fn check_assignment<'a>(
    g: &CubicGraph,
    members: &[EdgeSet],
    assignment: impl ExactSizeIterator<Item = &'a [usize]>,
) -> Option<Verification> {
    if assignment.len() != g.m() {
        return Some(Verification::fail(format!(
            "assignment has {} entries for {} edges",
            assignment.len(),
            g.m()
        )));
    }
    for (e, listed) in assignment.enumerate() {
        let mut listed = listed.to_vec();
        listed.sort_unstable();
        let actual: Vec<usize> = (0..members.len())
            .filter(|&i| members[i].contains(e))
            .collect();
        if listed != actual {
            return Some(Verification::fail(format!(
                "assignment of edge {e} disagrees with the matchings"
            )));
        }
    }
    None
}

fn verify_scc(
    g: &CubicGraph,
    class: SccClass,
    circuits: &[Vec<usize>],
    exhausted: &Exhausted,
) -> Result<Verification> {
    if class == SccClass::Exact43m && (exhausted.pms || !exhausted.parity.is_empty()) {
        return Ok(Verification::fail(
            "an exact 4m/3 class cannot rule out any family",
        ));
    }
    if class != SccClass::Exact43m && !exhausted.pms {
        return Ok(Verification::fail("perfect matching family not ruled out"));
    }
    if class == SccClass::AtLeast43mPlus2 {
        if !circuits.is_empty() {
            return Ok(Verification::fail("lower-bound class with a witness"));
        }
        let all: Vec<usize> = (0..g.n()).collect();
        if exhausted.parity != all {
            return Ok(Verification::fail("not every parity center ruled out"));
        }
        return Ok(Verification::ok());
    }
    if class == SccClass::Exact43mPlus1 && exhausted.parity.iter().enumerate().any(|(i, &t)| i != t)
    {
        return Ok(Verification::fail(
            "parity centers must be ruled out in order",
        ));
    }
    let cover = CycleCover::new(g.id(), edge_sets(g, circuits)?);
    let check = verify_cycle_cover(g, &cover)?;
    if !check.valid {
        return Ok(Verification::fail("witness is not a cycle cover"));
    }
    if check.length != class.length(g.m()) {
        return Ok(Verification::fail(format!(
            "witness has length {}, class needs {}",
            check.length,
            class.length(g.m())
        )));
    }
    Ok(Verification::ok())
}
