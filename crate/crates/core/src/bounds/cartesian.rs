//! Cartesian products: distance sandwich, Steiner k-diameter cases and the
//! layered witness-tree construction.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    check_connected, check_product_set, drop3_parameter, factor_tree, BoundPair, CaseBounds,
};
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph};
use crate::products::{cartesian_product, project, Axis, ProductVertex};
use crate::sdiam::{Sweep, SweepContext};
use crate::steiner::SteinerResult;

/// Factor quantities entering the Cartesian distance bounds for one `S`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartesianTerms {
    pub k: usize,
    /// `d_G(S_G)`.
    pub d_g: u32,
    /// `d_H(S_H)`.
    pub d_h: u32,
    /// Drop-3 parameter of `S_G`.
    pub r: usize,
    /// Drop-3 parameter of `S_H`.
    pub t: usize,
}

impl CartesianTerms {
    pub fn lower(&self) -> u32 {
        self.d_g + self.d_h
    }

    /// `min{d_G + (r+1) d_H, d_H + (t+1) d_G}`.
    pub fn upper(&self) -> u32 {
        let via_g = self.d_g + (self.r as u32 + 1) * self.d_h;
        let via_h = self.d_h + (self.t as u32 + 1) * self.d_g;
        via_g.min(via_h)
    }

    /// The upper bound with `r = t = k - 3`, i.e. ignoring repeated
    /// coordinates: `d_G + d_H + (k-3) min{d_G, d_H}`.
    pub fn coarse_upper(&self) -> u32 {
        self.d_g + self.d_h + (self.k as u32 - 3) * self.d_g.min(self.d_h)
    }

    pub fn bounds(&self) -> BoundPair {
        BoundPair::new(Distance::Finite(self.lower()), Distance::Finite(self.upper()))
    }
}

pub fn cartesian_terms(g: &Graph, h: &Graph, s: &[ProductVertex]) -> Result<CartesianTerms> {
    check_connected(g, "G")?;
    check_connected(h, "H")?;
    if s.len() < 3 {
        return Err(Error::MultisetTooSmall { needed: 3, got: s.len() });
    }
    check_product_set(s, g.order(), h.order())?;
    let sg = project(s, Axis::G)?;
    let sh = project(s, Axis::H)?;
    let finite = |d: Distance| d.value().expect("connected factor");
    Ok(CartesianTerms {
        k: s.len(),
        d_g: finite(factor_tree(g, sg.elements())?.distance),
        d_h: finite(factor_tree(h, sh.elements())?.distance),
        r: drop3_parameter(&sg)?.value,
        t: drop3_parameter(&sh)?.value,
    })
}

/// `d_G(S_G) + d_H(S_H) ≤ d(S) ≤ min{d_G(S_G)+(r+1)d_H(S_H), d_H(S_H)+(t+1)d_G(S_G)}`.
pub fn cartesian_distance_bounds(g: &Graph, h: &Graph, s: &[ProductVertex]) -> Result<BoundPair> {
    Ok(cartesian_terms(g, h, s)?.bounds())
}

/// Steiner k-diameter bounds for `G □ H`, case numbers 1 to 4. The factors
/// are swapped when `order(G) > order(H)`, which leaves the product
/// unchanged up to isomorphism.
pub fn cartesian_sdiam_bounds(
    g: &Graph,
    h: &Graph,
    k: usize,
    ctx: &SweepContext,
) -> Result<CaseBounds> {
    check_connected(g, "G")?;
    check_connected(h, "H")?;
    let (g, h) = if g.order() <= h.order() { (g, h) } else { (h, g) };
    let (n, m) = (g.order(), h.order());
    if k < 3 || k > n * m {
        return Err(Error::KOutOfRange { k, min: 3, max: n * m });
    }
    let kappa = cartesian_product(g, h).graph.vertex_connectivity();
    if k + kappa > n * m {
        return Ok(CaseBounds {
            case: 4,
            bounds: BoundPair::exact(Distance::from(k - 1)),
        });
    }
    let sdiam = |f: &Graph| -> Result<u32> {
        let d = Sweep::new(f, ctx)?.diameter(k)?.value;
        Ok(d.value().expect("connected factor"))
    };
    let k3 = k as u32 - 3;
    let (case, lo, hi) = if k <= n {
        let (a, b) = (sdiam(g)?, sdiam(h)?);
        (1, a + b, a + b + k3 * a.min(b))
    } else if k <= m {
        let b = sdiam(h)?;
        let a = n as u32 - 1;
        (2, a + b, a + b + k3 * a.min(b))
    } else {
        let (n1, m1) = (n as u32 - 1, m as u32 - 1);
        (3, n1 + m1, m1 + (k as u32 - 2) * n1)
    };
    Ok(CaseBounds {
        case,
        bounds: BoundPair::new(Distance::Finite(lo), Distance::Finite(hi)),
    })
}

/// Builds an `S`-Steiner tree of `G □ H` from factor Steiner trees.
///
/// One factor tree is laid along a single layer (`T_G` inside `G(h)`, or
/// `T_H` inside `H(g)`), and every occupied copy of the other factor gets the
/// part of that factor's tree joining its terminals to the layer. Every
/// layer position on the tree is tried in both orientations and the smallest
/// result kept; the layouts used in the upper-bound argument (full copies,
/// singleton copies on the layer, path or three-leg split of the tree
/// through three singletons) are among the candidates, so the tree never
/// exceeds the upper bound.
pub fn build_cartesian_tree(g: &Graph, h: &Graph, s: &[ProductVertex]) -> Result<SteinerResult> {
    check_connected(g, "G")?;
    check_connected(h, "H")?;
    if s.is_empty() {
        return Err(Error::EmptyTerminalSet);
    }
    check_product_set(s, g.order(), h.order())?;
    let m = h.order();
    let sg: Vec<usize> = s.iter().map(|v| v.g).collect();
    let sh: Vec<usize> = s.iter().map(|v| v.h).collect();
    let tg = factor_tree(g, &sg)?.tree_edges;
    let th = factor_tree(h, &sh)?.tree_edges;
    let id = |a: usize, b: usize| a * m + b;

    // G-layer: copies H(g) keyed by g, pieces of T_H
    let by_g = group(s.iter().map(|v| (v.g, v.h)));
    let a = best_layout(&tg, &th, &by_g, sh[0]);
    // H-layer: copies G(h) keyed by h, pieces of T_G
    let by_h = group(s.iter().map(|v| (v.h, v.g)));
    let b = best_layout(&th, &tg, &by_h, sg[0]);

    let mut edges: Vec<(usize, usize)> = if b.size < a.size {
        let mut e: Vec<_> = th.iter().map(|&(x, y)| (id(b.layer, x), id(b.layer, y))).collect();
        for (&hc, piece) in &b.pieces {
            e.extend(piece.iter().map(|&(x, y)| (id(x, hc), id(y, hc))));
        }
        e
    } else {
        let mut e: Vec<_> = tg.iter().map(|&(x, y)| (id(x, a.layer), id(y, a.layer))).collect();
        for (&gc, piece) in &a.pieces {
            e.extend(piece.iter().map(|&(x, y)| (id(gc, x), id(gc, y))));
        }
        e
    };
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    Ok(SteinerResult {
        distance: Distance::from(edges.len()),
        tree_edges: edges,
    })
}

fn group(pairs: impl Iterator<Item = (usize, usize)>) -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (key, val) in pairs {
        out.entry(key).or_default().push(val);
    }
    out
}

struct Layout {
    size: usize,
    layer: usize,
    pieces: BTreeMap<usize, Vec<(usize, usize)>>,
}

/// `layer_tree` is laid at coordinate `layer` of the copy factor; each group
/// is joined to it by the smallest subtree of `copy_tree` spanning the
/// group's coordinates and `layer`.
fn best_layout(
    layer_tree: &[(usize, usize)],
    copy_tree: &[(usize, usize)],
    groups: &BTreeMap<usize, Vec<usize>>,
    lone: usize,
) -> Layout {
    let mut candidates: Vec<usize> = copy_tree.iter().flat_map(|&(x, y)| [x, y]).collect();
    candidates.sort_unstable();
    candidates.dedup();
    if candidates.is_empty() {
        candidates.push(lone);
    }
    let mut best: Option<Layout> = None;
    for layer in candidates {
        let mut size = layer_tree.len();
        let mut pieces = BTreeMap::new();
        for (&key, coords) in groups {
            let mut keep = coords.clone();
            keep.push(layer);
            let piece = prune(copy_tree, &keep);
            size += piece.len();
            pieces.insert(key, piece);
        }
        if best.as_ref().is_none_or(|b| size < b.size) {
            best = Some(Layout { size, layer, pieces });
        }
    }
    best.expect("at least one candidate layer")
}

/// Smallest subtree of `tree` containing every vertex in `keep`, by
/// repeatedly removing leaves outside `keep`.
fn prune(tree: &[(usize, usize)], keep: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = tree.to_vec();
    loop {
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(x, y) in &edges {
            *degree.entry(x).or_default() += 1;
            *degree.entry(y).or_default() += 1;
        }
        let removable = |v: usize| degree[&v] == 1 && !keep.contains(&v);
        let before = edges.len();
        edges.retain(|&(x, y)| !removable(x) && !removable(y));
        if edges.len() == before {
            return edges;
        }
    }
}
