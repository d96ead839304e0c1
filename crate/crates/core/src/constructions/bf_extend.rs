//! Extending Berge-Fulkerson colorings of three graphs to their windmill.
//!
//! Each input coloring is first renamed so that, around its removed edge
//! `x y`, the two other edges at `x` contain colors 1 and 2, the two at `y`
//! contain 3 and 4, and `x y` itself is `{5, 6}`. The extension then keeps
//! block 0 as normalized, tries every renaming of blocks 1 and 2, and fills
//! in the ten junction edges, which are forced once the boundary is fixed.

use itertools::Itertools;
use serde::Serialize;

use super::WindmillLabels;
use crate::covers::{permute_mask, verify_bf_coloring, BfColoring};
use crate::error::{Error, Result};
use crate::graph::CubicGraph;

const ALL: u8 = 0b11_1111;

/// Renaming that normalizes `c` around the edge `x y`; `perm[c - 1]` is the
/// new name of color `c`.
pub fn normalizing_permutation(
    g: &CubicGraph,
    c: &BfColoring,
    edge: (usize, usize),
) -> Result<[u8; 6]> {
    let (x, y) = edge;
    let xy = g
        .edge_between(x, y)
        .ok_or(Error::NotAnEdge { u: x, v: y })?;
    if !verify_bf_coloring(g, c)?.is_valid() {
        return Err(Error::InvalidColoring(
            "not a Berge-Fulkerson coloring".into(),
        ));
    }
    let side = |v: usize| {
        let mut s: Vec<usize> = g.incident(v).into_iter().filter(|&e| e != xy).collect();
        s.sort_unstable();
        (c.mask(s[0]), c.mask(s[1]))
    };
    let (e1, e2) = side(x);
    let (e3, e4) = side(y);
    let low = |m: u8| m & m.wrapping_neg();
    let alpha = low(e1);
    let gamma = [low(e2), e2 & !low(e2)]
        .into_iter()
        .find(|&g| alpha | g != e3 && alpha | g != e4)
        .ok_or(Error::NormalizationImpossible { edge: xy })?;
    let (beta, delta) = (e1 & !alpha, e2 & !gamma);
    let (three, four) = if e3 & beta != 0 {
        (beta, delta)
    } else {
        (delta, beta)
    };
    if e3 & three == 0 || e4 & four == 0 {
        return Err(Error::NormalizationImpossible { edge: xy });
    }
    let rest = c.mask(xy);
    let (five, six) = (low(rest), rest & !low(rest));
    let mut perm = [0u8; 6];
    for (new, old) in [alpha, gamma, three, four, five, six]
        .into_iter()
        .enumerate()
    {
        perm[old.trailing_zeros() as usize] = new as u8 + 1;
    }
    Ok(perm)
}

pub fn normalize_bf_colors(
    g: &CubicGraph,
    c: &BfColoring,
    edge: (usize, usize),
) -> Result<BfColoring> {
    Ok(c.permuted(&normalizing_permutation(g, c, edge)?))
}

/// Colors of the junction edges of a windmill coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JunctionValues {
    pub ac: [(u8, u8); 3],
    pub bc: [(u8, u8); 3],
    pub uc: [(u8, u8); 3],
}

pub fn junction_values(w: &CubicGraph, labels: &WindmillLabels, c: &BfColoring) -> JunctionValues {
    let pair = |p: usize, q: usize| c.pair(w.edge_between(p, q).expect("junction edge"));
    JunctionValues {
        ac: std::array::from_fn(|i| pair(labels.a[i], labels.c[i])),
        bc: std::array::from_fn(|i| pair(labels.b[i], labels.c[i])),
        uc: std::array::from_fn(|i| pair(labels.hub, labels.c[i])),
    }
}

/// Berge-Fulkerson coloring of the windmill `w` built from the given
/// colored inputs. Block 0 carries its input coloring normalized around the
/// removed edge; blocks 1 and 2 carry renamed copies of theirs.
pub fn extend_bf_cover(
    w: &CubicGraph,
    labels: &WindmillLabels,
    inputs: [(&CubicGraph, &BfColoring); 3],
) -> Result<BfColoring> {
    let ext = Extension::new(w, labels, inputs)?;
    let mut found = None;
    ext.for_each_extension(|masks| {
        found = Some(masks.to_vec());
        false
    });
    let masks =
        found.ok_or_else(|| Error::ExtensionFailed("no renaming of blocks 1 and 2 fits".into()))?;
    let c = BfColoring::new(w.id(), masks);
    if !verify_bf_coloring(w, &c)?.is_valid() {
        return Err(Error::ExtensionFailed(
            "completed coloring does not verify".into(),
        ));
    }
    Ok(c)
}

/// Whether some extension has junction colors `a_0c_0 = {β1, α4}`,
/// `b_0c_0 = {β2, α3}`, `a_1c_1 = {β4, α6}`, `b_1c_1 = {β3, α5}`,
/// `a_2c_2 = {α2, β5}`, `b_2c_2 = {α1, β6}` for permutations α, β that map
/// each of `{1,2}`, `{3,4}`, `{5,6}` to itself.
pub fn junction_pattern_exists(
    w: &CubicGraph,
    labels: &WindmillLabels,
    inputs: [(&CubicGraph, &BfColoring); 3],
) -> Result<bool> {
    let ext = Extension::new(w, labels, inputs)?;
    let block_perms: Vec<[u8; 6]> = (0..8u8)
        .map(|s| {
            let mut p = [1, 2, 3, 4, 5, 6];
            for k in 0..3 {
                if s >> k & 1 == 1 {
                    p.swap(2 * k, 2 * k + 1);
                }
            }
            p
        })
        .collect();
    let bit = |c: u8| 1u8 << (c - 1);
    let patterns: Vec<[u8; 6]> = block_perms
        .iter()
        .flat_map(|al| block_perms.iter().map(move |be| (al, be)))
        .map(|(al, be)| {
            let a = |i: usize| bit(al[i - 1]);
            let b = |i: usize| bit(be[i - 1]);
            [
                b(1) | a(4),
                b(2) | a(3),
                b(4) | a(6),
                b(3) | a(5),
                a(2) | b(5),
                a(1) | b(6),
            ]
        })
        .collect();
    let mut hit = false;
    ext.for_each_extension(|masks| {
        let m = |p: usize, q: usize| masks[w.edge_between(p, q).unwrap()];
        let got = [0, 1, 2].map(|i| [m(labels.a[i], labels.c[i]), m(labels.b[i], labels.c[i])]);
        let got = [
            got[0][0], got[0][1], got[1][0], got[1][1], got[2][0], got[2][1],
        ];
        hit = patterns.contains(&got);
        !hit
    });
    Ok(hit)
}

struct Extension<'a> {
    w: &'a CubicGraph,
    labels: &'a WindmillLabels,
    normalized: [BfColoring; 3],
}

impl<'a> Extension<'a> {
    fn new(
        w: &'a CubicGraph,
        labels: &'a WindmillLabels,
        inputs: [(&CubicGraph, &BfColoring); 3],
    ) -> Result<Extension<'a>> {
        let mut normalized = Vec::with_capacity(3);
        for (i, (g, c)) in inputs.into_iter().enumerate() {
            g.check_host(c.host())?;
            if labels.edge_map[i].len() != g.m() {
                return Err(Error::ExtensionFailed(format!(
                    "input {i} does not match the labels"
                )));
            }
            normalized.push(normalize_bf_colors(g, c, labels.removed[i])?);
        }
        Ok(Extension {
            w,
            labels,
            normalized: normalized.try_into().unwrap(),
        })
    }

    /// Mask of each of the four boundary edges of block `i` under `perm`,
    /// in the order `x^0, x^1, y^0, y^1`.
    fn stubs(&self, i: usize, perm: &[u8; 6]) -> [u8; 4] {
        let l = self.labels;
        let mut out = [0u8; 4];
        for (e, target) in l.edge_map[i].iter().enumerate() {
            let Some(t) = *target else { continue };
            if !l.boundary[i].contains(t) {
                continue;
            }
            let (p, q) = self.w.endpoints(t);
            let junction = if l.blocks[i].binary_search(&p).is_ok() {
                q
            } else {
                p
            };
            let prev = (i + 2) % 3;
            let k = if junction == l.a[prev] {
                0
            } else if junction == l.b[prev] {
                1
            } else if junction == l.a[(i + 1) % 3] {
                2
            } else {
                3
            };
            out[k] = permute_mask(self.normalized[i].mask(e), perm);
        }
        out
    }

    /// Calls `f` with the edge masks of each valid extension, in a fixed
    /// order, until it returns `false`.
    fn for_each_extension(&self, mut f: impl FnMut(&[u8]) -> bool) {
        let perms = permutations();
        let identity = [1, 2, 3, 4, 5, 6];
        let s0 = self.stubs(0, &identity);
        let stubs1: Vec<[u8; 4]> = perms.iter().map(|p| self.stubs(1, p)).collect();
        let stubs2: Vec<[u8; 4]> = perms.iter().map(|p| self.stubs(2, p)).collect();
        for (p1, s1) in perms.iter().zip(&stubs1) {
            for (p2, s2) in perms.iter().zip(&stubs2) {
                let s = [s0, *s1, *s2];
                let Some(junction) = complete_junctions(&s) else {
                    continue;
                };
                let masks = self.assemble([&identity, p1, p2], &junction);
                if !f(&masks) {
                    return;
                }
            }
        }
    }

    fn assemble(&self, perms: [&[u8; 6]; 3], junction: &[[u8; 3]; 3]) -> Vec<u8> {
        let l = self.labels;
        let w = self.w;
        let mut masks = vec![0u8; w.m()];
        for i in 0..3 {
            for (e, target) in l.edge_map[i].iter().enumerate() {
                if let Some(t) = *target {
                    masks[t] = permute_mask(self.normalized[i].mask(e), perms[i]);
                }
            }
            let [ac, bc, uc] = junction[i];
            masks[w.edge_between(l.a[i], l.c[i]).unwrap()] = ac;
            masks[w.edge_between(l.b[i], l.c[i]).unwrap()] = bc;
            masks[w.edge_between(l.hub, l.c[i]).unwrap()] = uc;
        }
        masks
    }
}

/// Forced colors `[a_i c_i, b_i c_i, u c_i]` given the boundary masks of
/// the three blocks, or `None` if some junction vertex clashes. `a_i` meets
/// `x_{i+1}^0` and `y_{i-1}^0`, `b_i` meets `x_{i+1}^1` and `y_{i-1}^1`.
fn complete_junctions(s: &[[u8; 4]; 3]) -> Option<[[u8; 3]; 3]> {
    let mut out = [[0u8; 3]; 3];
    let mut at_hub = 0u8;
    for (i, slot) in out.iter_mut().enumerate() {
        let (next, prev) = ((i + 1) % 3, (i + 2) % 3);
        let fill = |p: u8, q: u8| (p & q == 0).then_some(ALL & !(p | q));
        let ac = fill(s[next][0], s[prev][2])?;
        let bc = fill(s[next][1], s[prev][3])?;
        let uc = fill(ac, bc)?;
        if at_hub & uc != 0 {
            return None;
        }
        at_hub |= uc;
        *slot = [ac, bc, uc];
    }
    Some(out)
}

/// All 720 permutations of 1..=6 in lexicographic order.
fn permutations() -> Vec<[u8; 6]> {
    (1..=6u8)
        .permutations(6)
        .map(|p| p.try_into().expect("six entries"))
        .collect()
}
