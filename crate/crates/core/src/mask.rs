//! Bitmask views of small graphs (at most 128 vertices) and k-subset
//! enumeration in colex order.
//!
//! For a fixed popcount, colex order of subsets coincides with numeric order
//! of their bitmasks, so "smallest witness bitmask" and "first set in colex
//! order" mean the same thing.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MASK_ORDER_LIMIT: usize = 128;

pub(crate) type Mask = u128;

#[derive(Clone, Debug)]
pub(crate) struct MaskGraph {
    adj: Vec<Mask>,
    /// Vertex mask of the component containing each vertex.
    component: Vec<Mask>,
}

impl MaskGraph {
    pub fn new(g: &Graph) -> Result<MaskGraph> {
        let n = g.order();
        if n > MASK_ORDER_LIMIT {
            return Err(Error::OrderTooLarge {
                order: n,
                limit: MASK_ORDER_LIMIT,
            });
        }
        let adj: Vec<Mask> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
            .collect();
        let labels = g.components();
        let component = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| labels[w] == labels[v])
                    .fold(0, |m, w| m | bit(w))
            })
            .collect();
        Ok(MaskGraph { adj, component })
    }

    pub fn component_of(&self, v: usize) -> Mask {
        self.component[v]
    }

    /// Vertices adjacent to some member of `set`, excluding `set` itself.
    pub fn boundary(&self, set: Mask) -> Mask {
        let mut out = 0;
        for v in bits(set) {
            out |= self.adj[v];
        }
        out & !set
    }

    /// Whether the subgraph induced by `set` is connected (empty sets count
    /// as connected).
    pub fn is_connected(&self, set: Mask) -> bool {
        if set == 0 {
            return true;
        }
        let mut reached = set & set.wrapping_neg();
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & set & !reached;
            reached |= frontier;
        }
        reached == set
    }

    /// Order minus one of a Steiner tree for `set` grown greedily from its
    /// smallest vertex by repeatedly attaching the nearest remaining terminal
    /// along a shortest path. An upper bound on `d(set)`; `set` must lie in
    /// one component.
    pub fn greedy_tree_size(&self, set: Mask) -> u32 {
        let mut tree = set & set.wrapping_neg();
        let mut layers: Vec<Mask> = Vec::new();
        while set & !tree != 0 {
            layers.clear();
            let mut reached = tree;
            let mut frontier = tree;
            let hit = loop {
                frontier = self.boundary(frontier) & !reached;
                debug_assert!(frontier != 0, "terminals share a component");
                reached |= frontier;
                let hit = frontier & set & !tree;
                if hit != 0 {
                    break hit;
                }
                layers.push(frontier);
            };
            let mut cur = hit.trailing_zeros() as usize;
            tree |= bit(cur);
            for &layer in layers.iter().rev() {
                let prev = self.adj[cur] & layer;
                cur = prev.trailing_zeros() as usize;
                tree |= bit(cur);
            }
        }
        tree.count_ones() - 1
    }

    /// BFS spanning tree of the connected induced subgraph on `set`, rooted
    /// at its smallest vertex, as sorted `(u, v)` pairs with `u < v`.
    pub fn spanning_tree(&self, set: Mask) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        if set == 0 {
            return edges;
        }
        let root = set.trailing_zeros() as usize;
        let mut reached = bit(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for w in bits(self.adj[u] & set & !reached) {
                reached |= bit(w);
                edges.push((u.min(w), u.max(w)));
                queue.push_back(w);
            }
        }
        edges.sort_unstable();
        edges
    }
}

#[inline]
pub(crate) fn bit(v: usize) -> Mask {
    1u128 << v
}

pub(crate) fn to_mask(vertices: &[usize]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

pub(crate) fn to_vec(mask: Mask) -> Vec<usize> {
    bits(mask).collect()
}

/// Iterator over set bit positions, ascending.
pub(crate) fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn pascal() -> &'static Vec<Vec<u128>> {
    static TABLE: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let size = MASK_ORDER_LIMIT + 1;
        let mut t = vec![vec![0u128; size]; size];
        for n in 0..size {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// `C(n, k)` for `n ≤ 128`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        0
    } else {
        pascal()[n][k]
    }
}

/// Next mask with the same popcount in numeric order (Gosper's hack).
#[inline]
pub(crate) fn next_combination(x: Mask) -> Mask {
    let c = x & x.wrapping_neg();
    let r = x.wrapping_add(c);
    (((r ^ x) >> 2) / c) | r
}

/// The `rank`-th k-subset of `{0, ..}` in colex order.
pub(crate) fn unrank_colex(mut rank: u128, k: usize) -> Mask {
    let mut mask = 0;
    let mut top = MASK_ORDER_LIMIT;
    for j in (1..=k).rev() {
        // largest c < top with C(c, j) <= rank
        let mut c = j - 1;
        while c + 1 < top && binomial(c + 1, j) <= rank {
            c += 1;
        }
        mask |= bit(c);
        rank -= binomial(c, j);
        top = c;
    }
    mask
}

/// Walks `count` consecutive k-subsets of an `n`-set starting at colex
/// position `start`.
pub(crate) fn combinations_from(start: u128, k: usize, count: u128) -> impl Iterator<Item = Mask> {
    let mut current = if k == 0 { 0 } else { unrank_colex(start, k) };
    let mut left = count;
    std::iter::from_fn(move || {
        if left == 0 {
            return None;
        }
        left -= 1;
        let out = current;
        if left > 0 {
            current = if k == 0 { 0 } else { next_combination(current) };
        }
        Some(out)
    })
}

/// All k-subsets of `{0..n}` in colex order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    combinations_from(0, k, binomial(n, k))
}

/// Spreads the low bits of `compact` onto the positions listed in `slots`.
#[inline]
pub(crate) fn scatter(compact: Mask, slots: &[usize]) -> Mask {
    let mut out = 0;
    for i in bits(compact) {
        out |= bit(slots[i]);
    }
    out
}
