use crate::error::{Error, Result};
use crate::graph::CubicGraph;

/// Two graphs with a chosen edge in each: `gx gy` in `g` and `hu hv` in `h`.
#[derive(Debug, Clone)]
pub struct GluingSpec<'a> {
    pub g: &'a CubicGraph,
    pub gx: usize,
    pub gy: usize,
    pub h: &'a CubicGraph,
    pub hu: usize,
    pub hv: usize,
}

/// Deletes `gx gy` and `hu hv` and adds the edges `gx hu` and `gy hv`.
/// Vertices of `g` keep their numbers; vertex `v` of `h` becomes `g.n() + v`.
pub fn glue(spec: &GluingSpec<'_>) -> Result<CubicGraph> {
    let GluingSpec {
        g,
        gx,
        gy,
        h,
        hu,
        hv,
    } = *spec;
    let ge = g
        .edge_between(gx, gy)
        .ok_or(Error::NotAnEdge { u: gx, v: gy })?;
    let he = h
        .edge_between(hu, hv)
        .ok_or(Error::NotAnEdge { u: hu, v: hv })?;
    let off = g.n();
    let mut edges = Vec::with_capacity(g.m() + h.m());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if e != ge {
            edges.push((a, b));
        }
    }
    for (e, &(a, b)) in h.edges().iter().enumerate() {
        if e != he {
            edges.push((off + a, off + b));
        }
    }
    edges.push((gx, off + hu));
    edges.push((gy, off + hv));
    CubicGraph::from_edges_graph6_order(off + h.n(), &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k4, petersen, tietze, TIETZE_GLUE_EDGE};
    use crate::graph::{cut_boundary, is_bridgeless};

    #[test]
    fn glue_two_k4() {
        let a = k4();
        let g = glue(&GluingSpec {
            g: &a,
            gx: 0,
            gy: 1,
            h: &a,
            hu: 2,
            hv: 3,
        })
        .unwrap();
        assert_eq!((g.n(), g.m()), (8, 12));
        assert!(is_bridgeless(&g));
        assert!(g.are_adjacent(0, 6) && g.are_adjacent(1, 7));
        assert!(!g.are_adjacent(0, 1));
    }

    #[test]
    fn tietze_triangle_glue_has_two_edge_cut() {
        let t = tietze();
        let p = petersen();
        let (u, v) = TIETZE_GLUE_EDGE;
        for e in 0..p.m() {
            let (x, y) = p.endpoints(e);
            let g = glue(&GluingSpec {
                g: &p,
                gx: x,
                gy: y,
                h: &t,
                hu: u,
                hv: v,
            })
            .unwrap();
            assert!(is_bridgeless(&g));
            let side: Vec<usize> = (0..p.n()).collect();
            assert_eq!(cut_boundary(&g, &side).unwrap().size(), 2);
        }
    }

    #[test]
    fn rejects_non_edges() {
        let p = petersen();
        let err = glue(&GluingSpec {
            g: &p,
            gx: 0,
            gy: 2,
            h: &p,
            hu: 0,
            hv: 1,
        })
        .unwrap_err();
        assert_eq!(err, Error::NotAnEdge { u: 0, v: 2 });
    }
}
