//! Named graphs and the graph constructions: gluing, triangle expansion, the
//! reduction from 3-edge-colorability, the windmill construction and the
//! recursive family built from it, and Berge-Fulkerson cover extension.
//!
//! Every graph produced here has its edges in graph6 bit order, so writing it
//! as graph6 and reading it back keeps all edge indices (and the hash).

mod bf_extend;
mod family;
mod glue;
mod reduction;
mod windmill;

pub use bf_extend::{
    extend_bf_cover, junction_pattern_exists, junction_values, normalize_bf_colors,
    normalizing_permutation, JunctionValues,
};
pub use family::{
    build_family, default_edge, hagglund_triple, FamilyNode, FamilyRecipe, DEFAULT_HAGGLUND_EDGES,
};
pub use glue::{glue, GluingSpec};
pub use reduction::{
    build_four_cover, decode_three_coloring, expand_triangles, np_reduction, tietze_four_cover,
    ExpandedGraph, Gadget, ReducedGraph, ReductionProvenance, VertexOrigin,
};
pub use windmill::{windmill, windmill_with, WindmillLabels, WindmillPart};

use crate::graph::CubicGraph;

fn build(n: usize, edges: &[(usize, usize)]) -> CubicGraph {
    CubicGraph::from_edges_graph6_order(n, edges).expect("built-in graph is cubic")
}

pub fn k4() -> CubicGraph {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> CubicGraph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    build(6, &edges)
}

/// The triangular prism K3 x K2.
pub fn prism() -> CubicGraph {
    build(
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
}

/// The 3-cube.
pub fn cube() -> CubicGraph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                edges.push((v, v | bit));
            }
        }
    }
    build(8, &edges)
}

/// Outer 5-cycle 0..4, spokes i-(i+5), inner pentagram on 5..9.
pub fn petersen() -> CubicGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Petersen with vertex 0 replaced by the triangle 9-10-11. Remaining
/// Petersen vertices `v` become `v - 1`; the triangle vertices 9, 10, 11 are
/// attached to the former neighbors 1, 4, 5 of vertex 0.
pub fn tietze() -> CubicGraph {
    let mut edges = Vec::new();
    for (a, b) in petersen().edges().iter().copied() {
        if a != 0 && b != 0 {
            edges.push((a - 1, b - 1));
        }
    }
    edges.extend([(9, 0), (10, 3), (11, 4), (9, 10), (10, 11), (9, 11)]);
    build(12, &edges)
}

/// Edge indices of the unique triangle of [`tietze`], ordered (9,10),
/// (9,11), (10,11).
pub fn tietze_triangle(t: &CubicGraph) -> [usize; 3] {
    [(9, 10), (9, 11), (10, 11)].map(|(a, b)| t.edge_between(a, b).expect("triangle edge"))
}

/// The triangle edge of the Tietze graph used for gluing in the reduction.
pub const TIETZE_GLUE_EDGE: (usize, usize) = (9, 10);

/// The 34-vertex windmill of three Petersen graphs, each with its
/// lexicographically first edge removed.
pub fn hagglund() -> (CubicGraph, WindmillLabels) {
    let p = petersen();
    let e = p.endpoints(0);
    windmill([(&p, e), (&p, e), (&p, e)]).expect("Petersen has girth 5")
}
