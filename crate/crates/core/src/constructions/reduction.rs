//! The reduction from 3-edge-colorability to covering by four perfect
//! matchings, with both directions of the correspondence made constructive.

use std::sync::OnceLock;

use serde::Serialize;

use super::{tietze, TIETZE_GLUE_EDGE};
use crate::covers::{has_cover_of_size, verify_cover, MatchingCover};
use crate::error::{Error, Result};
use crate::graph::{CubicGraph, EdgeSet};
use crate::matching::ThreeColoring;

/// A graph with every vertex replaced by a triangle.
#[derive(Debug, Clone, Serialize)]
pub struct ExpandedGraph {
    pub graph: CubicGraph,
    /// `triangle[v][k]` is the vertex attached to the k-th incident edge of `v`.
    pub triangle: Vec<[usize; 3]>,
    /// Expanded edge index for each edge of the source graph.
    pub original: Vec<usize>,
    /// Whether each expanded edge lies inside one of the triangles.
    pub is_new: Vec<bool>,
}

/// Replaces vertex `v` by the triangle `3v, 3v+1, 3v+2`, where `3v + k`
/// inherits the k-th edge at `v`.
pub fn expand_triangles(g: &CubicGraph) -> ExpandedGraph {
    let n = g.n();
    let slot = |v: usize, e: usize| {
        3 * v
            + g.incident(v)
                .iter()
                .position(|&f| f == e)
                .expect("incident edge")
    };
    let mut edges = Vec::with_capacity(g.m() + 3 * n);
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        edges.push((slot(a, e), slot(b, e)));
    }
    for v in 0..n {
        edges.extend([
            (3 * v, 3 * v + 1),
            (3 * v, 3 * v + 2),
            (3 * v + 1, 3 * v + 2),
        ]);
    }
    let graph = CubicGraph::from_edges_graph6_order(3 * n, &edges).expect("expansion is cubic");
    let original: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| graph.edge_between(slot(a, e), slot(b, e)).unwrap())
        .collect();
    let mut is_new = vec![true; graph.m()];
    for &e in &original {
        is_new[e] = false;
    }
    let triangle = (0..n).map(|v| [3 * v, 3 * v + 1, 3 * v + 2]).collect();
    ExpandedGraph {
        graph,
        triangle,
        original,
        is_new,
    }
}

/// Where a vertex of the reduction output comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexOrigin {
    /// Vertex `slot` of the triangle replacing source vertex `vertex`.
    Triangle { vertex: usize, slot: usize },
    /// Vertex `vertex` of the Tietze copy attached to gadget `gadget`.
    Tietze { gadget: usize, vertex: usize },
}

/// One Tietze copy glued onto a triangle edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gadget {
    pub source_vertex: usize,
    /// The triangle edge (in the expanded graph) this copy replaces.
    pub new_edge: usize,
    /// First output vertex of the copy; Tietze vertex `t` is `offset + t`.
    pub offset: usize,
    /// Output edges joining the triangle to the copy: `x u` and `y v`.
    pub links: [usize; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionProvenance {
    pub source: CubicGraph,
    pub expanded: ExpandedGraph,
    pub gadgets: Vec<Gadget>,
    /// Output edge for each source edge.
    pub original_edges: Vec<usize>,
    pub vertex_origin: Vec<VertexOrigin>,
    /// Output vertex of expanded vertex `w` is `triangle_offset + w`.
    pub triangle_offset: usize,
}

#[derive(Debug, Clone)]
pub struct ReducedGraph {
    pub graph: CubicGraph,
    pub provenance: ReductionProvenance,
}

/// Expands every vertex of `g` into a triangle and glues a copy of the
/// Tietze graph, along one of its triangle edges, onto each of the `3n`
/// triangle edges. The output has `39n` vertices: the Tietze copies come
/// first (12 vertices each), then the `3n` triangle vertices.
pub fn np_reduction(g: &CubicGraph) -> ReducedGraph {
    let expanded = expand_triangles(g);
    let t = tietze();
    let (tu, tv) = TIETZE_GLUE_EDGE;
    let t_glue = t.edge_between(tu, tv).unwrap();
    let gp = &expanded.graph;
    let new_edges: Vec<usize> = (0..gp.m()).filter(|&e| expanded.is_new[e]).collect();
    let tri_off = 12 * new_edges.len();
    let total = tri_off + gp.n();

    let mut edges = Vec::new();
    let mut vertex_origin = vec![VertexOrigin::Triangle { vertex: 0, slot: 0 }; total];
    for (j, _) in new_edges.iter().enumerate() {
        let off = 12 * j;
        for (f, &(a, b)) in t.edges().iter().enumerate() {
            if f != t_glue {
                edges.push((off + a, off + b));
            }
        }
        for v in 0..12 {
            vertex_origin[off + v] = VertexOrigin::Tietze {
                gadget: j,
                vertex: v,
            };
        }
    }
    for (e, &(a, b)) in gp.edges().iter().enumerate() {
        if !expanded.is_new[e] {
            edges.push((tri_off + a, tri_off + b));
        }
    }
    let mut link_pairs = Vec::with_capacity(new_edges.len());
    for (j, &e) in new_edges.iter().enumerate() {
        let (x, y) = gp.endpoints(e);
        let off = 12 * j;
        let pair = [(tri_off + x, off + tu), (tri_off + y, off + tv)];
        edges.extend(pair);
        link_pairs.push(pair);
    }
    for w in 0..gp.n() {
        vertex_origin[tri_off + w] = VertexOrigin::Triangle {
            vertex: w / 3,
            slot: w % 3,
        };
    }
    let graph = CubicGraph::from_edges_graph6_order(total, &edges).expect("gluing keeps cubicity");

    let gadgets = new_edges
        .iter()
        .zip(&link_pairs)
        .enumerate()
        .map(|(j, (&e, pair))| Gadget {
            source_vertex: gp.endpoints(e).0 / 3,
            new_edge: e,
            offset: 12 * j,
            links: pair.map(|(a, b)| graph.edge_between(a, b).unwrap()),
        })
        .collect();
    let original_edges = expanded
        .original
        .iter()
        .map(|&e| {
            let (a, b) = gp.endpoints(e);
            graph.edge_between(tri_off + a, tri_off + b).unwrap()
        })
        .collect();
    ReducedGraph {
        graph,
        provenance: ReductionProvenance {
            source: g.clone(),
            expanded,
            gadgets,
            original_edges,
            vertex_origin,
            triangle_offset: tri_off,
        },
    }
}

/// A fixed 4-member cover of the Tietze graph, split into the member that
/// contains the glue edge and the three that avoid it.
pub fn tietze_four_cover() -> &'static (EdgeSet, [EdgeSet; 3]) {
    static COVER: OnceLock<(EdgeSet, [EdgeSet; 3])> = OnceLock::new();
    COVER.get_or_init(|| {
        let t = tietze();
        let (u, v) = TIETZE_GLUE_EDGE;
        let uv = t.edge_between(u, v).unwrap();
        let cover = has_cover_of_size(&t, 4)
            .unwrap()
            .expect("the Tietze graph has a 4-cover");
        let (with, without): (Vec<EdgeSet>, Vec<EdgeSet>) = cover
            .members()
            .iter()
            .cloned()
            .partition(|m| m.contains(uv));
        assert_eq!(with.len(), 1, "the glue edge lies in exactly one member");
        let without: [EdgeSet; 3] = without.try_into().expect("three other members");
        (with.into_iter().next().unwrap(), without)
    })
}

/// From a 3-edge-coloring of the source graph, builds four perfect matchings
/// covering the reduction output.
pub fn build_four_cover(h: &ReducedGraph, coloring: &ThreeColoring) -> Result<MatchingCover> {
    let prov = &h.provenance;
    let g = &prov.source;
    for c in coloring.classes() {
        g.check_host(c.edges().host())?;
    }
    let gp = &prov.expanded.graph;
    let t = tietze();
    let (with_uv, without_uv) = tietze_four_cover();

    // extensions of the color classes to the expanded graph, plus the set of
    // original edges as the fourth
    let mut ext: Vec<EdgeSet> = vec![EdgeSet::empty(gp); 4];
    for (e, &pe) in prov.expanded.original.iter().enumerate() {
        let c = usize::from(coloring.color_of(e));
        ext[c].insert(pe);
        ext[3].insert(pe);
    }
    for v in 0..g.n() {
        let tri = prov.expanded.triangle[v];
        let colors = g.incident(v).map(|e| usize::from(coloring.color_of(e)));
        for (i, m) in ext.iter_mut().take(3).enumerate() {
            let matched = colors
                .iter()
                .position(|&c| c == i)
                .ok_or_else(|| Error::InvalidColoring(format!("vertex {v} misses color {i}")))?;
            let others: Vec<usize> = (0..3).filter(|&k| k != matched).map(|k| tri[k]).collect();
            m.insert(gp.edge_between(others[0], others[1]).unwrap());
        }
    }

    let mut members: Vec<EdgeSet> = vec![EdgeSet::empty(&h.graph); 4];
    for (i, m) in ext.iter().enumerate() {
        for (&e, &pe) in prov.original_edges.iter().zip(&prov.expanded.original) {
            if m.contains(pe) {
                members[i].insert(e);
            }
        }
    }
    for gadget in &prov.gadgets {
        let owner = (0..3)
            .find(|&i| ext[i].contains(gadget.new_edge))
            .ok_or_else(|| Error::InvalidColoring("triangle edge left uncovered".into()))?;
        let mut rest = without_uv.iter();
        for (i, member) in members.iter_mut().enumerate() {
            let part = if i == owner {
                member.insert(gadget.links[0]);
                member.insert(gadget.links[1]);
                with_uv
            } else {
                rest.next().unwrap()
            };
            for f in part.iter() {
                let (a, b) = t.endpoints(f);
                if let Some(he) = h.graph.edge_between(gadget.offset + a, gadget.offset + b) {
                    member.insert(he);
                }
            }
        }
    }
    Ok(MatchingCover::new(h.graph.id(), members))
}

/// Recovers a 3-edge-coloring of the source graph from any 4-member cover of
/// the reduction output. An original edge gets color `i` when it lies in
/// members `{i, 3}` or in the two members other than `i` and 3.
pub fn decode_three_coloring(h: &ReducedGraph, cover: &MatchingCover) -> Result<ThreeColoring> {
    let check = verify_cover(&h.graph, cover)?;
    if !check.is_valid() {
        return Err(Error::InvalidCover(format!("{check:?}")));
    }
    if cover.len() != 4 {
        return Err(Error::InvalidCover(format!(
            "{} members, expected 4",
            cover.len()
        )));
    }
    let prov = &h.provenance;
    for (j, gadget) in prov.gadgets.iter().enumerate() {
        let hits: Vec<usize> = cover
            .members()
            .iter()
            .map(|m| gadget.links.iter().filter(|&&e| m.contains(e)).count())
            .collect();
        if hits.contains(&1) {
            return Err(Error::DecodeContradiction(format!(
                "gadget {j} meets a member once"
            )));
        }
        let owners = hits.iter().filter(|&&c| c == 2).count();
        if owners != 1 {
            return Err(Error::DecodeContradiction(format!(
                "triangle edge of gadget {j} covered {owners} times"
            )));
        }
    }
    let g = &prov.source;
    let mut colors = Vec::with_capacity(g.m());
    for (e, &he) in prov.original_edges.iter().enumerate() {
        let owners: Vec<usize> = (0..4)
            .filter(|&k| cover.members()[k].contains(he))
            .collect();
        let color = match owners.as_slice() {
            [i, 3] => *i,
            [a, b] => (0..3).find(|c| c != a && c != b).unwrap(),
            _ => {
                return Err(Error::DecodeContradiction(format!(
                    "original edge {e} covered {} times",
                    owners.len()
                )))
            }
        };
        colors.push(color as u8);
    }
    ThreeColoring::from_colors(g, &colors).map_err(|e| Error::DecodeContradiction(e.to_string()))
}
