use serde::Serialize;

use super::decompose::{search_doubling, Outcome, DEFAULT_NODE_BUDGET};
use super::CycleCover;
use crate::constructions::WindmillLabels;
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet};

/// How an edge set meets the four boundary edges of a windmill block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HType {
    /// No boundary edge.
    T0,
    /// One edge toward each neighboring junction.
    T1,
    /// Two edges toward the same junction.
    T2,
    /// All four.
    T4,
}

pub fn h_type(s: &EdgeSet, labels: &WindmillLabels, i: usize) -> Result<HType> {
    let count = s.intersection(&labels.boundary[i]).count();
    let prev = s.intersection(&labels.toward_prev[i]).count();
    match count {
        0 => Ok(HType::T0),
        2 if prev == 1 => Ok(HType::T1),
        2 => Ok(HType::T2),
        4 => Ok(HType::T4),
        _ => Err(Error::OddBoundaryIntersection { block: i, count }),
    }
}

/// A cover of length `4m/3 + 1` whose doubled edges form a parity
/// subgraph with its degree-3 vertex at `t`, if one exists.
pub fn parity_center_witness(g: &CubicGraph, t: usize) -> Result<Option<CycleCover>> {
    if t >= g.n() {
        return Err(Error::InvalidVertex {
            vertex: t,
            vertex_count: g.n(),
        });
    }
    let mut need = vec![1; g.n()];
    need[t] = 3;
    match search_doubling(g, &need, DEFAULT_NODE_BUDGET) {
        (Outcome::Found(c), _) => Ok(Some(c)),
        (Outcome::Absent, _) => Ok(None),
        (Outcome::Budget, nodes) => Err(Error::SearchBudgetExceeded { nodes }),
    }
}

/// True when no shortest-type cover of the windmill graph `g` can have its
/// degree-3 vertex at any `c_i`.
pub fn forbidden_center_check(g: &CubicGraph, labels: &WindmillLabels) -> Result<bool> {
    for &c in &labels.c {
        if parity_center_witness(g, c)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::hagglund;
    use crate::matching::enumerate_perfect_matchings;

    #[test]
    fn matchings_of_the_petersen_windmill() {
        let (g, l) = hagglund();
        let pms = enumerate_perfect_matchings(&g).unwrap();
        assert!(!pms.is_empty());
        let mut saw_two_one_zero = false;
        for m in &pms {
            let t: Vec<HType> = (0..3).map(|i| h_type(m.edges(), &l, i).unwrap()).collect();
            assert!(!t.contains(&HType::T4));
            assert_eq!(t.iter().filter(|&&x| x == HType::T0).count(), 1);
            assert!(t.iter().filter(|&&x| x == HType::T2).count() <= 1);
            assert!(t.contains(&HType::T1));
            saw_two_one_zero |= t == [HType::T2, HType::T1, HType::T0];
        }
        assert!(saw_two_one_zero);
    }

    #[test]
    fn odd_intersection_rejected() {
        let (g, l) = hagglund();
        let one = EdgeSet::from_indices(&g, [l.boundary[0].iter().next().unwrap()]).unwrap();
        assert_eq!(
            h_type(&one, &l, 0),
            Err(Error::OddBoundaryIntersection { block: 0, count: 1 })
        );
    }
}
