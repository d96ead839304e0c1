use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet};

/// Which piece of a windmill graph a vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindmillPart {
    Block(usize),
    Junction(usize),
    Hub,
}

/// Names for every vertex and boundary of a windmill graph.
///
/// Block `i` is `H_i`, the input `G_i` minus the endpoints `x_i, y_i` of the
/// removed edge. Junction `i` is `{a_i, b_i, c_i}`. All indices are mod 3.
#[derive(Debug, Clone, Serialize)]
pub struct WindmillLabels {
    pub parts: Vec<WindmillPart>,
    /// Output vertices of `H_i`, increasing.
    pub blocks: [Vec<usize>; 3],
    /// `preimage[i][k]` is the vertex of `G_i` that became `blocks[i][k]`.
    pub preimage: [Vec<usize>; 3],
    /// Output edge for each edge of `G_i`. The four edges at `x_i, y_i`
    /// map to the boundary edges that replace them; `x_i y_i` maps to `None`.
    pub edge_map: [Vec<Option<usize>>; 3],
    pub a: [usize; 3],
    pub b: [usize; 3],
    pub c: [usize; 3],
    pub hub: usize,
    /// `(x_i, y_i)` in the numbering of `G_i`.
    pub removed: [(usize, usize); 3],
    /// `[x_i^0, x_i^1]` and `[y_i^0, y_i^1]` in the numbering of `G_i`.
    pub x_neighbors: [[usize; 2]; 3],
    pub y_neighbors: [[usize; 2]; 3],
    /// The four edges leaving `H_i`.
    pub boundary: [EdgeSet; 3],
    /// The two edges from `H_i` to `A_{i-1}`: `x_i^0 a_{i-1}`, `x_i^1 b_{i-1}`.
    pub toward_prev: [EdgeSet; 3],
    /// The two edges from `H_i` to `A_{i+1}`: `y_i^0 a_{i+1}`, `y_i^1 b_{i+1}`.
    pub toward_next: [EdgeSet; 3],
}

impl WindmillLabels {
    /// Output vertex of vertex `v` of `G_i`, if it survived.
    pub fn embed(&self, i: usize, v: usize) -> Option<usize> {
        self.preimage[i]
            .binary_search(&v)
            .ok()
            .map(|k| self.blocks[i][k])
    }
}

/// Windmill of three graphs, each given with the edge to remove. Neighbors
/// of `x_i` and of `y_i` are taken in increasing vertex order.
pub fn windmill(
    inputs: [(&CubicGraph, (usize, usize)); 3],
) -> Result<(CubicGraph, WindmillLabels)> {
    windmill_with(inputs, [(false, false); 3])
}

/// Like [`windmill`], but `swaps[i] = (sx, sy)` exchanges `x_i^0` with
/// `x_i^1` when `sx` is set and `y_i^0` with `y_i^1` when `sy` is set.
pub fn windmill_with(
    inputs: [(&CubicGraph, (usize, usize)); 3],
    swaps: [(bool, bool); 3],
) -> Result<(CubicGraph, WindmillLabels)> {
    let mut x_neighbors = [[0; 2]; 3];
    let mut y_neighbors = [[0; 2]; 3];
    for (i, &(g, (x, y))) in inputs.iter().enumerate() {
        if x >= g.n() || y >= g.n() || g.edge_between(x, y).is_none() {
            return Err(Error::NotAnEdge { u: x, v: y });
        }
        let side = |v: usize, w: usize, swap: bool| {
            let mut s: Vec<usize> = g.neighbors(v).into_iter().filter(|&z| z != w).collect();
            s.sort_unstable();
            if swap {
                s.swap(0, 1);
            }
            [s[0], s[1]]
        };
        x_neighbors[i] = side(x, y, swaps[i].0);
        y_neighbors[i] = side(y, x, swaps[i].1);
        if x_neighbors[i].iter().any(|z| y_neighbors[i].contains(z)) {
            return Err(Error::NeighborsNotDistinct { x, y });
        }
    }

    let mut parts = Vec::new();
    let mut blocks: [Vec<usize>; 3] = Default::default();
    let mut preimage: [Vec<usize>; 3] = Default::default();
    let mut embed: [Vec<Option<usize>>; 3] = Default::default();
    for (i, &(g, (x, y))) in inputs.iter().enumerate() {
        embed[i] = vec![None; g.n()];
        for v in (0..g.n()).filter(|&v| v != x && v != y) {
            embed[i][v] = Some(parts.len());
            blocks[i].push(parts.len());
            preimage[i].push(v);
            parts.push(WindmillPart::Block(i));
        }
    }
    let mut a = [0; 3];
    let mut b = [0; 3];
    let mut c = [0; 3];
    for i in 0..3 {
        a[i] = parts.len();
        b[i] = parts.len() + 1;
        c[i] = parts.len() + 2;
        parts.extend([WindmillPart::Junction(i); 3]);
    }
    let hub = parts.len();
    parts.push(WindmillPart::Hub);
    let n = parts.len();

    let prev = |i: usize| (i + 2) % 3;
    let next = |i: usize| (i + 1) % 3;
    let mut edges = Vec::new();
    // replacement endpoints of the edges at x_i, y_i, keyed by G_i neighbor
    let mut stubs: [Vec<(usize, usize)>; 3] = Default::default();
    for (i, &(g, _)) in inputs.iter().enumerate() {
        for &(p, q) in g.edges() {
            if let (Some(p), Some(q)) = (embed[i][p], embed[i][q]) {
                edges.push((p, q));
            }
        }
        let at = |v: usize| embed[i][v].unwrap();
        stubs[i] = vec![
            (x_neighbors[i][0], a[prev(i)]),
            (x_neighbors[i][1], b[prev(i)]),
            (y_neighbors[i][0], a[next(i)]),
            (y_neighbors[i][1], b[next(i)]),
        ];
        for &(v, j) in &stubs[i] {
            edges.push((at(v), j));
        }
    }
    for i in 0..3 {
        edges.extend([(a[i], c[i]), (b[i], c[i]), (c[i], hub)]);
    }
    let graph = CubicGraph::from_edges_graph6_order(n, &edges)?;

    let set = |pairs: &[(usize, usize)]| {
        EdgeSet::from_indices(
            &graph,
            pairs
                .iter()
                .map(|&(p, q)| graph.edge_between(p, q).unwrap()),
        )
        .unwrap()
    };
    let mut boundary: [EdgeSet; 3] = std::array::from_fn(|_| EdgeSet::empty(&graph));
    let mut toward_prev = boundary.clone();
    let mut toward_next = boundary.clone();
    let mut edge_map: [Vec<Option<usize>>; 3] = Default::default();
    let preimage_of = |i: usize, v: usize| preimage[i][blocks[i].binary_search(&v).unwrap()];
    for (i, &(g, (x, _))) in inputs.iter().enumerate() {
        let out: Vec<(usize, usize)> = stubs[i]
            .iter()
            .map(|&(v, j)| (embed[i][v].unwrap(), j))
            .collect();
        boundary[i] = set(&out);
        toward_prev[i] = set(&out[..2]);
        toward_next[i] = set(&out[2..]);
        edge_map[i] = g
            .edges()
            .iter()
            .map(|&(p, q)| match (embed[i][p], embed[i][q]) {
                (Some(p), Some(q)) => graph.edge_between(p, q),
                (Some(v), None) | (None, Some(v)) => {
                    let v = preimage_of(i, v);
                    let k = if p == x || q == x {
                        x_neighbors[i].iter().position(|&z| z == v)
                    } else {
                        y_neighbors[i].iter().position(|&z| z == v).map(|k| k + 2)
                    };
                    k.map(|k| graph.edge_between(out[k].0, out[k].1).unwrap())
                }
                (None, None) => None,
            })
            .collect();
    }

    let removed = [inputs[0].1, inputs[1].1, inputs[2].1];
    let labels = WindmillLabels {
        parts,
        blocks,
        preimage,
        edge_map,
        a,
        b,
        c,
        hub,
        removed,
        x_neighbors,
        y_neighbors,
        boundary,
        toward_prev,
        toward_next,
    };
    Ok((graph, labels))
}
