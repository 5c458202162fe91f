//! Lexicographic products: exact Steiner distance, the three-terminal case
//! table, Steiner k-diameter bounds and the mapped witness tree.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_connected, check_product_set, factor_tree, sum, BoundPair};
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph};
use crate::mask::{self, MaskGraph};
use crate::products::ProductVertex;
use crate::sdiam::{Sweep, SweepContext};
use crate::steiner::SteinerResult;

/// Exact `d_{G∘H}(S)` with the clause that applies: 1 when `S` sits in one
/// copy inducing a connected subgraph, 2 when it sits in one copy but is
/// disconnected there, 3 when it meets `r ≥ 2` copies.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LexClosedForm {
    pub case: u8,
    /// Number of distinct G-coordinates.
    pub r: usize,
    pub value: Distance,
}

fn h_induced_connected(h: &Graph, coords: &[usize]) -> Result<bool> {
    let mg = MaskGraph::new(h)?;
    Ok(mg.is_connected(mask::to_mask(coords)))
}

fn distinct(coords: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = coords.collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn lex_distance_closed_form(g: &Graph, h: &Graph, s: &[ProductVertex]) -> Result<LexClosedForm> {
    check_connected(g, "G")?;
    if g.order() < 2 {
        return Err(Error::Precondition("G must have at least two vertices".into()));
    }
    if s.len() < 2 {
        return Err(Error::MultisetTooSmall { needed: 2, got: s.len() });
    }
    check_product_set(s, g.order(), h.order())?;
    let k = s.len();
    let gs = distinct(s.iter().map(|v| v.g));
    let r = gs.len();
    if r == 1 {
        let hs: Vec<usize> = s.iter().map(|v| v.h).collect();
        let (case, value) = if h_induced_connected(h, &hs)? { (1, k - 1) } else { (2, k) };
        return Ok(LexClosedForm { case, r, value: Distance::from(value) });
    }
    let d_g = factor_tree(g, &gs)?.distance;
    Ok(LexClosedForm {
        case: 3,
        r,
        value: sum(d_g, (k - r) as u64),
    })
}

/// The five clauses for three terminals, in the order they are listed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LexK3Case {
    /// One copy, isolated in `G`: `d_H(S_H)`.
    SameIsolated,
    /// One copy with a neighbour in `G`: `min{d_H(S_H), 3}`.
    SameWithNeighbor,
    /// Two copies in different components: infinite.
    PairSplit,
    /// Two copies at finite distance `ℓ`: `ℓ + 1`.
    PairJoined,
    /// Three copies: `d_G(S_G)`.
    AllDistinct,
}

impl LexK3Case {
    pub fn index(self) -> u8 {
        self as u8 + 1
    }
}

/// Three-terminal Steiner distance in `G ∘ H`. `G` may be disconnected.
pub fn lex_distance_k3(g: &Graph, h: &Graph, s: &[ProductVertex]) -> Result<(LexK3Case, Distance)> {
    if s.len() != 3 {
        return Err(Error::Precondition(format!("expected 3 terminals, got {}", s.len())));
    }
    check_product_set(s, g.order(), h.order())?;
    let (a, b, c) = (s[0], s[1], s[2]);
    if a.g == b.g && b.g == c.g {
        let d_h = factor_tree(h, &[a.h, b.h, c.h])?.distance;
        return Ok(if g.degree(a.g) == 0 {
            (LexK3Case::SameIsolated, d_h)
        } else {
            (LexK3Case::SameWithNeighbor, d_h.min(Distance::Finite(3)))
        });
    }
    // the lone copy and the shared one, if two terminals share a copy
    let pair = if b.g == c.g {
        Some((a.g, b.g))
    } else if a.g == c.g {
        Some((b.g, a.g))
    } else if a.g == b.g {
        Some((c.g, a.g))
    } else {
        None
    };
    Ok(match pair {
        Some((lone, shared)) => match g.distance(lone, shared)? {
            Distance::Infinite => (LexK3Case::PairSplit, Distance::Infinite),
            d => (LexK3Case::PairJoined, sum(d, 1)),
        },
        None => (LexK3Case::AllDistinct, factor_tree(g, &[a.g, b.g, c.g])?.distance),
    })
}

/// Steiner k-diameter bounds for `G ∘ H`.
///
/// `stated` evaluates the clauses as written. Its upper bound
/// `sdiam_k(G) + k - 2` for `k ≤ n` ignores sets inside a single copy, which
/// can reach `k`; this only matters for `k = 2`, where a non-adjacent pair in
/// one copy of a non-complete `H` over a complete `G` has distance 2 while
/// the clause gives 1. `corrected` takes `max{sdiam_k(G) + k - 2, k}` when
/// `k ≤ min(n, m)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LexSdiamBounds {
    pub stated: BoundPair,
    pub corrected: BoundPair,
}

pub fn lex_sdiam_bounds(g: &Graph, h: &Graph, k: usize, ctx: &SweepContext) -> Result<LexSdiamBounds> {
    check_connected(g, "G")?;
    let (n, m) = (g.order(), h.order());
    if k < 2 || k > n * m {
        return Err(Error::KOutOfRange { k, min: 2, max: n * m });
    }
    let sdiam_g = if k <= n {
        Some(Sweep::new(g, ctx)?.diameter(k)?.value.value().expect("connected G"))
    } else {
        None
    };
    let k32 = k as u32;
    let (upper, corrected_upper) = match sdiam_g {
        Some(d) => {
            let u = d + k32 - 2;
            (u, if k <= m { u.max(k32) } else { u })
        }
        None => {
            let u = (n as u32 + k32 - 3).max(k32);
            (u, u)
        }
    };
    let mut lower = 0;
    if m < k && k <= n {
        lower = lower.max(sdiam_g.expect("k <= n"));
    }
    if n.max(m + 1) <= k {
        lower = lower.max(n as u32 - 1);
    }
    if k <= m {
        lower = lower.max(k32 - 1);
    }
    let pair = |u: u32| BoundPair::new(Distance::Finite(lower), Distance::Finite(u));
    Ok(LexSdiamBounds {
        stated: pair(upper),
        corrected: pair(corrected_upper),
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Sdiam3LexCase {
    /// `G` is a path with diameter at least 2.
    Path,
    /// `G` is not a path and has diameter at least 2.
    NotPath,
    /// `G` is complete.
    Complete,
}

/// `sdiam_3(G ∘ H)`.
///
/// `stated` follows the three clauses as written (`None` when the complete
/// clause needs `sdiam_3(H)` but `H` has fewer than three vertices).
/// `corrected` is the value implied by the three-terminal case table:
/// `max{sdiam_3(G), diam(G) + 1}` when `diam(G) ≥ 2`, since two terminals in
/// one copy and a third at distance `diam(G)` already need `diam(G) + 1`
/// edges. The two agree on paths but not in general (`C_4 ∘ K_2` has 3,
/// while `sdiam_3(C_4) = 2`).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sdiam3Lex {
    pub case: Sdiam3LexCase,
    pub stated: Option<Distance>,
    pub corrected: Distance,
}

pub fn sdiam3_lex_closed_form(g: &Graph, h: &Graph, ctx: &SweepContext) -> Result<Sdiam3Lex> {
    check_connected(g, "G")?;
    check_connected(h, "H")?;
    let (n, m) = (g.order(), h.order());
    if n < 2 || m < 2 {
        return Err(Error::Precondition("both factors need at least two vertices".into()));
    }
    let sdiam3 = |f: &Graph| -> Result<Distance> { Ok(Sweep::new(f, ctx)?.diameter(3)?.value) };
    if g.is_complete() {
        let (stated, corrected) = if m >= 3 {
            let v = sdiam3(h)?.min(Distance::Finite(3));
            (Some(v), v)
        } else {
            (None, Distance::Finite(2))
        };
        return Ok(Sdiam3Lex { case: Sdiam3LexCase::Complete, stated, corrected });
    }
    let diam = g.diameter();
    let s3 = sdiam3(g)?;
    let corrected = s3.max(sum(diam, 1));
    Ok(if g.is_path() {
        Sdiam3Lex { case: Sdiam3LexCase::Path, stated: Some(sum(diam, 1)), corrected }
    } else {
        Sdiam3Lex { case: Sdiam3LexCase::NotPath, stated: Some(s3), corrected }
    })
}

/// Builds an `S`-Steiner tree of `G ∘ H`.
///
/// With `r ≥ 2` occupied copies, a Steiner tree `T_G` of the copies is
/// mapped edge by edge into the product: copy `g` is represented by its
/// smallest terminal H-coordinate, or by H-vertex 0 when `g` carries no
/// terminal. Each remaining terminal hangs off the representative of a
/// `T_G`-neighbour of its copy, giving `d_G(S_G) + k - r` edges. With a
/// single copy the tree is a spanning tree of `H[S_H]` when that is
/// connected, otherwise a star through vertex 0 of an adjacent copy.
pub fn build_lexicographic_tree(g: &Graph, h: &Graph, s: &[ProductVertex]) -> Result<SteinerResult> {
    check_connected(g, "G")?;
    if g.order() < 2 {
        return Err(Error::Precondition("G must have at least two vertices".into()));
    }
    if s.is_empty() {
        return Err(Error::EmptyTerminalSet);
    }
    check_product_set(s, g.order(), h.order())?;
    let m = h.order();
    let id = |v: ProductVertex| v.encode(m);
    let mut copies: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in s {
        copies.entry(v.g).or_default().push(v.h);
    }
    for hs in copies.values_mut() {
        hs.sort_unstable();
    }

    let mut edges = Vec::new();
    if copies.len() == 1 {
        let (&gc, hs) = copies.iter().next().expect("one copy");
        let hmask = mask::to_mask(hs);
        let mg = MaskGraph::new(h)?;
        if mg.is_connected(hmask) {
            for (x, y) in mg.spanning_tree(hmask) {
                edges.push((id(ProductVertex::new(gc, x)), id(ProductVertex::new(gc, y))));
            }
        } else {
            let hub = ProductVertex::new(g.neighbors(gc)[0], 0);
            for &x in hs {
                edges.push((id(ProductVertex::new(gc, x)), id(hub)));
            }
        }
    } else {
        let gs: Vec<usize> = copies.keys().copied().collect();
        let tg = factor_tree(g, &gs)?.tree_edges;
        let rep = |x: usize| ProductVertex::new(x, copies.get(&x).map_or(0, |hs| hs[0]));
        for &(x, y) in &tg {
            edges.push((id(rep(x)), id(rep(y))));
        }
        for (&gc, hs) in &copies {
            let anchor = tg
                .iter()
                .filter_map(|&(x, y)| match (x == gc, y == gc) {
                    (true, _) => Some(y),
                    (_, true) => Some(x),
                    _ => None,
                })
                .min()
                .expect("every occupied copy lies on T_G");
            for &x in &hs[1..] {
                edges.push((id(ProductVertex::new(gc, x)), id(rep(anchor))));
            }
        }
    }
    for e in &mut edges {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    Ok(SteinerResult {
        distance: Distance::from(edges.len()),
        tree_edges: edges,
    })
}
