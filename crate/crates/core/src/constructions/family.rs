use serde::{Deserialize, Serialize};

use super::{petersen, windmill_with, WindmillLabels};
use crate::error::{Error, Result};
use crate::graph::CubicGraph;

/// Removed edges `(x_i, y_i)` used when the three-Petersen windmill is each
/// input of a windmill without an explicit selector. This is the junction
/// edge `c_0 b_0` of each copy, entered from `c_0` in copies 0 and 2 and
/// from `b_0` in copy 1, the general rule of [`default_edge`].
pub const DEFAULT_HAGGLUND_EDGES: [(usize, usize); 3] = [(26, 25), (25, 26), (26, 25)];

/// Default removed edge of windmill child `i`: its edge `c_0 b_0`, with
/// `x_i = c_0` for even `i` and `y_i = c_0` for odd `i`, so that the copies
/// do not all meet the new junctions from the same side.
pub fn default_edge(labels: &WindmillLabels, i: usize) -> (usize, usize) {
    let (c, b) = (labels.c[0], labels.b[0]);
    if i.is_multiple_of(2) {
        (c, b)
    } else {
        (b, c)
    }
}

/// A member of the family generated from the Petersen graph by repeated
/// windmill constructions.
///
/// ```json
/// {"windmill": {"children": ["petersen", "petersen", "petersen"],
///               "edges": [[0, 1], [0, 1], [0, 1]]}}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyRecipe {
    Petersen,
    Windmill {
        children: Box<[FamilyRecipe; 3]>,
        /// Removed edge `x_i y_i` of each child. Leaves default to their
        /// first edge, windmill children to [`default_edge`].
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<[(usize, usize); 3]>,
        /// Neighbor-order swaps, see [`super::windmill_with`].
        #[serde(default, skip_serializing_if = "Option::is_none")]
        swaps: Option<[(bool, bool); 3]>,
    },
}

impl FamilyRecipe {
    /// Three Petersen leaves under one windmill.
    pub fn depth_one() -> FamilyRecipe {
        FamilyRecipe::uniform(FamilyRecipe::Petersen)
    }

    pub fn uniform(child: FamilyRecipe) -> FamilyRecipe {
        FamilyRecipe::Windmill {
            children: Box::new([child.clone(), child.clone(), child]),
            edges: None,
            swaps: None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            FamilyRecipe::Petersen => 0,
            FamilyRecipe::Windmill { children, .. } => {
                1 + children.iter().map(FamilyRecipe::depth).max().unwrap()
            }
        }
    }
}

/// A built family member with the labels of every windmill step.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyNode {
    #[serde(skip)]
    pub graph: CubicGraph,
    /// `None` for a Petersen leaf.
    pub labels: Option<WindmillLabels>,
    pub edges: Option<[(usize, usize); 3]>,
    pub children: Vec<FamilyNode>,
}

pub fn build_family(recipe: &FamilyRecipe) -> Result<FamilyNode> {
    match recipe {
        FamilyRecipe::Petersen => Ok(FamilyNode {
            graph: petersen(),
            labels: None,
            edges: None,
            children: Vec::new(),
        }),
        FamilyRecipe::Windmill {
            children,
            edges,
            swaps,
        } => {
            let built = children
                .iter()
                .map(build_family)
                .collect::<Result<Vec<_>>>()?;
            let chosen: [(usize, usize); 3] = match edges {
                Some(e) => *e,
                None => std::array::from_fn(|i| match &built[i].labels {
                    None => built[i].graph.endpoints(0),
                    Some(l) => default_edge(l, i),
                }),
            };
            for (child, &(x, y)) in built.iter().zip(&chosen) {
                if x >= child.graph.n() || y >= child.graph.n() || !child.graph.are_adjacent(x, y) {
                    return Err(Error::InvalidRecipe(format!(
                        "({x}, {y}) is not an edge of its child"
                    )));
                }
            }
            let inputs = std::array::from_fn(|i| (&built[i].graph, chosen[i]));
            let (graph, labels) = windmill_with(inputs, swaps.unwrap_or([(false, false); 3]))?;
            Ok(FamilyNode {
                graph,
                labels: Some(labels),
                edges: Some(chosen),
                children: built,
            })
        }
    }
}

/// The 106-vertex windmill of three copies of the three-Petersen windmill,
/// copy `i` losing `edges[i]`.
pub fn hagglund_triple(edges: [(usize, usize); 3]) -> Result<FamilyNode> {
    let recipe = FamilyRecipe::Windmill {
        children: Box::new([
            FamilyRecipe::depth_one(),
            FamilyRecipe::depth_one(),
            FamilyRecipe::depth_one(),
        ]),
        edges: Some(edges),
        swaps: None,
    };
    build_family(&recipe)
}
