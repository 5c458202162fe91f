//! Exact Steiner distance `d_G(S)`.
//!
//! Two independent routes:
//!
//! * [`steiner_distance`] runs the Dreyfus–Wagner subset DP over the support
//!   of the terminal multiset and rebuilds a witness tree from the DP trace.
//! * [`steiner_distance_oracle`] enumerates vertex supersets `W ⊇ S` by
//!   increasing size and returns `|W| - 1` for the first `W` whose induced
//!   subgraph is connected. A minimum connected subgraph containing `S` is a
//!   tree, so that is the Steiner distance.
//!
//! Multisets are measured by their support: repeated terminals do not change
//! the distance and a support of size one has distance 0.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph};
use crate::mask::{self, MaskGraph};

/// Solver guards. Every sweep and DP call checks these before doing
/// exponential work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest terminal support handed to the DP (`3^(w-1)` merge states).
    pub dp_width_limit: usize,
    /// Largest number of non-terminal vertices the superset oracle may
    /// enumerate over.
    pub oracle_free_limit: usize,
    /// Largest number of k-subsets a single sweep may visit.
    pub max_subsets: u128,
}

pub const DEFAULT_DP_WIDTH_LIMIT: usize = 16;
pub const DEFAULT_ORACLE_FREE_LIMIT: usize = 22;
pub const DEFAULT_MAX_SUBSETS: u128 = 50_000_000;

/// Environment variables read by [`SolverConfig::from_env`]. Each one caps
/// the corresponding default; larger values are ignored.
pub const ENV_DP_WIDTH: &str = "STEINER_DP_WIDTH_LIMIT";
pub const ENV_ORACLE_FREE: &str = "STEINER_ORACLE_FREE_LIMIT";
pub const ENV_MAX_SUBSETS: &str = "STEINER_MAX_SUBSETS";

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dp_width_limit: DEFAULT_DP_WIDTH_LIMIT,
            oracle_free_limit: DEFAULT_ORACLE_FREE_LIMIT,
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }
}

impl SolverConfig {
    /// The defaults, capped by the environment variables.
    pub fn from_env() -> Self {
        SolverConfig::default().capped_by_env()
    }

    /// Lowers each guard to its environment variable when that is set and
    /// smaller; unparsable values are ignored.
    pub fn capped_by_env(self) -> Self {
        fn cap<T: std::str::FromStr + Ord>(var: &str, current: T) -> T {
            match std::env::var(var).ok().and_then(|s| s.trim().parse::<T>().ok()) {
                Some(v) => v.min(current),
                None => current,
            }
        }
        SolverConfig {
            dp_width_limit: cap(ENV_DP_WIDTH, self.dp_width_limit),
            oracle_free_limit: cap(ENV_ORACLE_FREE, self.oracle_free_limit),
            max_subsets: cap(ENV_MAX_SUBSETS, self.max_subsets),
        }
    }
}

/// Terminal multiset. Repetitions are allowed; most computations only look
/// at the support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMultiset {
    elements: Vec<usize>,
}

impl VertexMultiset {
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyTerminalSet);
        }
        Ok(VertexMultiset { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Number of elements counted with multiplicity (`k`).
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Sorted distinct elements.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.elements.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &e in &self.elements {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        self.elements.iter().try_for_each(|&v| g.check_vertex(v))
    }
}

impl TryFrom<Vec<usize>> for VertexMultiset {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexMultiset::new(v)
    }
}

impl TryFrom<&[usize]> for VertexMultiset {
    type Error = Error;

    fn try_from(v: &[usize]) -> Result<Self> {
        VertexMultiset::new(v.to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinerResult {
    pub distance: Distance,
    /// Sorted `(u, v)` pairs with `u < v`; empty for distance 0 or infinity.
    pub tree_edges: Vec<(usize, usize)>,
}

impl SteinerResult {
    fn unreachable() -> Self {
        SteinerResult {
            distance: Distance::Infinite,
            tree_edges: Vec::new(),
        }
    }
}

pub fn steiner_distance(g: &Graph, s: &VertexMultiset) -> Result<SteinerResult> {
    steiner_distance_with(g, s, &SolverConfig::default())
}

pub fn steiner_distance_with(
    g: &Graph,
    s: &VertexMultiset,
    config: &SolverConfig,
) -> Result<SteinerResult> {
    s.check_against(g)?;
    let support = s.support();
    if support.len() > config.dp_width_limit {
        return Err(Error::DpWidthExceeded {
            support: support.len(),
            limit: config.dp_width_limit,
        });
    }
    let mut solver = DreyfusWagner::default();
    Ok(solver.solve(g, &support))
}

/// Reusable Dreyfus–Wagner buffers.
///
/// The last terminal is the root; `cost[mask][v]` is the size of a minimum
/// tree spanning the terminals in `mask` plus `v`. Masks are processed in
/// increasing numeric order so every proper submask is final before it is
/// used. Ties keep the first candidate in a fixed iteration order, which
/// makes the witness tree deterministic.
#[derive(Default)]
pub(crate) struct DreyfusWagner {
    cost: Vec<u32>,
    trace: Vec<u32>,
    order_buf: Vec<(u32, u32)>,
    queue: std::collections::VecDeque<usize>,
}

const INF: u32 = u32::MAX / 4;
const TRACE_LEAF: u32 = 3 << 30;
const TRACE_EDGE: u32 = 1 << 30;
const TRACE_MERGE: u32 = 2 << 30;
const TRACE_PAYLOAD: u32 = (1 << 30) - 1;

impl DreyfusWagner {
    /// `terminals` must be distinct, valid and nonempty.
    pub(crate) fn solve(&mut self, g: &Graph, terminals: &[usize]) -> SteinerResult {
        debug_assert!(!terminals.is_empty());
        let root = *terminals.last().expect("nonempty terminals");
        if terminals.len() == 1 {
            return SteinerResult {
                distance: Distance::ZERO,
                tree_edges: Vec::new(),
            };
        }
        let reach = g.bfs_raw(root);
        if terminals.iter().any(|&t| reach[t] == crate::graph::UNREACHED) {
            return SteinerResult::unreachable();
        }

        let n = g.order();
        let q = terminals.len() - 1;
        let full = (1usize << q) - 1;
        self.cost.clear();
        self.cost.resize((full + 1) * n, INF);
        self.trace.clear();
        self.trace.resize((full + 1) * n, 0);

        for m in 1..=full {
            let row = m * n;
            if m.is_power_of_two() {
                let t = terminals[m.trailing_zeros() as usize];
                self.cost[row + t] = 0;
                self.trace[row + t] = TRACE_LEAF;
            } else {
                let low = m & m.wrapping_neg();
                for v in 0..n {
                    let mut best = INF;
                    let mut how = 0;
                    let mut sub = (m - 1) & m;
                    while sub > 0 {
                        if sub & low != 0 {
                            let c = self.cost[sub * n + v] + self.cost[(m ^ sub) * n + v];
                            if c < best {
                                best = c;
                                how = TRACE_MERGE | sub as u32;
                            }
                        }
                        sub = (sub - 1) & m;
                    }
                    self.cost[row + v] = best;
                    self.trace[row + v] = how;
                }
            }
            self.relax(g, row);
        }

        let distance = self.cost[full * n + root];
        debug_assert!(distance < INF);

        let mut edges = Vec::with_capacity(distance as usize);
        let mut stack = vec![(full, root)];
        while let Some((m, v)) = stack.pop() {
            let t = self.trace[m * n + v];
            match t & !TRACE_PAYLOAD {
                TRACE_LEAF => {}
                TRACE_EDGE => {
                    let p = (t & TRACE_PAYLOAD) as usize;
                    edges.push((p.min(v), p.max(v)));
                    stack.push((m, p));
                }
                TRACE_MERGE => {
                    let sub = (t & TRACE_PAYLOAD) as usize;
                    stack.push((sub, v));
                    stack.push((m ^ sub, v));
                }
                _ => unreachable!("untraced DP state"),
            }
        }
        edges.sort_unstable();
        edges.dedup();
        debug_assert_eq!(edges.len(), distance as usize);
        SteinerResult {
            distance: Distance::Finite(distance),
            tree_edges: edges,
        }
    }

    /// Unit-weight shortest-path relaxation of one DP row: a BFS whose
    /// sources start at their current row values.
    fn relax(&mut self, g: &Graph, row: usize) {
        let n = g.order();
        self.order_buf.clear();
        for v in 0..n {
            let c = self.cost[row + v];
            if c < INF {
                self.order_buf.push((c, v as u32));
            }
        }
        self.order_buf.sort_unstable();
        self.queue.clear();
        let mut next_seed = 0;
        loop {
            let from_seed = self.order_buf.get(next_seed).map(|&(c, v)| (c, v as usize));
            let from_queue = self.queue.front().map(|&v| (self.cost[row + v], v));
            let (c, v) = match (from_seed, from_queue) {
                (None, None) => break,
                (Some(s), None) => {
                    next_seed += 1;
                    s
                }
                (None, Some(q)) => {
                    self.queue.pop_front();
                    q
                }
                (Some(s), Some(q)) => {
                    if s.0 <= q.0 {
                        next_seed += 1;
                        s
                    } else {
                        self.queue.pop_front();
                        q
                    }
                }
            };
            if c != self.cost[row + v] {
                continue;
            }
            for &w in g.neighbors(v) {
                if c + 1 < self.cost[row + w] {
                    self.cost[row + w] = c + 1;
                    self.trace[row + w] = TRACE_EDGE | v as u32;
                    self.queue.push_back(w);
                }
            }
        }
    }
}

pub fn steiner_distance_oracle(g: &Graph, s: &VertexMultiset) -> Result<SteinerResult> {
    steiner_distance_oracle_with(g, s, &SolverConfig::default())
}

/// Superset enumeration in increasing `|W|`, colex order within a size.
pub fn steiner_distance_oracle_with(
    g: &Graph,
    s: &VertexMultiset,
    config: &SolverConfig,
) -> Result<SteinerResult> {
    s.check_against(g)?;
    let mg = MaskGraph::new(g)?;
    let terminals = mask::to_mask(s.elements());
    let free: Vec<usize> = (0..g.order()).filter(|&v| terminals & mask::bit(v) == 0).collect();
    if free.len() > config.oracle_free_limit {
        return Err(Error::OracleGuardExceeded {
            free: free.len(),
            limit: config.oracle_free_limit,
        });
    }
    // The largest superset is V itself: if S is split across components no
    // superset can be connected.
    let first = terminals.trailing_zeros() as usize;
    if terminals & !mg.component_of(first) != 0 {
        return Ok(SteinerResult::unreachable());
    }
    let base = terminals.count_ones() as usize;
    for extra in 0..=free.len() {
        for pick in mask::combinations(free.len(), extra) {
            let w = terminals | mask::scatter(pick, &free);
            if mg.is_connected(w) {
                return Ok(SteinerResult {
                    distance: Distance::from(base + extra - 1),
                    tree_edges: mg.spanning_tree(w),
                });
            }
        }
    }
    Ok(SteinerResult::unreachable())
}

/// Checks that `edges` form a tree in `g` whose vertex set contains every
/// terminal. An empty edge list is accepted only for at most one distinct
/// terminal.
pub fn is_steiner_tree(g: &Graph, edges: &[(usize, usize)], terminals: &[usize]) -> bool {
    let mut support = terminals.to_vec();
    support.sort_unstable();
    support.dedup();
    if edges.is_empty() {
        return support.len() <= 1;
    }
    if edges.iter().any(|&(u, v)| !g.has_edge(u, v)) {
        return false;
    }
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() != edges.len() + 1 {
        return false;
    }
    if support.iter().any(|t| vertices.binary_search(t).is_err()) {
        return false;
    }
    // n - 1 edges and no cycle means connected
    let index = |v: usize| vertices.binary_search(&v).expect("endpoint listed");
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, index(u)), find(&mut parent, index(v)));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}
