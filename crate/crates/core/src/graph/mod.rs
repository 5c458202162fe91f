//! Simple undirected graphs over dense vertex ids `0..order`.
//!
//! A [`Graph`] is immutable once built. Adjacency lists are kept sorted so
//! that every traversal below visits neighbours in ascending id order, which
//! makes shortest paths, spanning trees and witness trees reproducible.

mod connectivity;
mod io;

use std::collections::VecDeque;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Length of a shortest path or size of a minimum Steiner tree.
///
/// `Finite` orders before `Infinite`, so `max`/`min` behave as expected when
/// disconnected instances show up in a sweep.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub const ZERO: Distance = Distance::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn value(self) -> Option<u32> {
        match self {
            Distance::Finite(v) => Some(v),
            Distance::Infinite => None,
        }
    }

    pub(crate) fn from_raw(raw: u32) -> Self {
        if raw == UNREACHED {
            Distance::Infinite
        } else {
            Distance::Finite(raw)
        }
    }

    /// Multiplies a finite distance by a constant; infinity stays infinite.
    pub fn scale(self, factor: u32) -> Distance {
        match self {
            Distance::Finite(v) => Distance::Finite(v * factor),
            Distance::Infinite => Distance::Infinite,
        }
    }
}

impl From<u32> for Distance {
    fn from(v: u32) -> Self {
        Distance::Finite(v)
    }
}

impl From<usize> for Distance {
    fn from(v: usize) -> Self {
        Distance::Finite(u32::try_from(v).expect("distance exceeds u32"))
    }
}

impl Add for Distance {
    type Output = Distance;

    fn add(self, rhs: Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => write!(f, "{v}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(v) => serializer.serialize_u32(*v),
            Distance::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    name: String,
    adj: Vec<Vec<usize>>,
    size: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("size", &self.size)
            .finish()
    }
}

/// Result of [`Graph::induced_subgraph`], with the id remapping in both
/// directions.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `old_to_new[v]` is the id of `v` in the subgraph, if kept.
    pub old_to_new: Vec<Option<usize>>,
    /// `new_to_old[i]` is the original id of subgraph vertex `i`.
    pub new_to_old: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// duplicate edges (in either orientation).
    pub fn new<I>(order: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); order];
        let mut size = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            size += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            name: String::new(),
            adj,
            size,
        })
    }

    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Graph {
        Graph {
            name: String::new(),
            adj: vec![Vec::new(); order],
            size: 0,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|list| list.len() + 1 == n)
    }

    /// True for the path `P_n` (including `P_1`) under any labeling.
    pub fn is_path(&self) -> bool {
        let n = self.order();
        n > 0 && self.size + 1 == n && self.max_degree() <= 2 && self.is_connected()
    }

    /// Copy of the graph with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let edges = self.edges().chain(std::iter::once((u, v)));
        Ok(Graph::new(self.order(), edges)?.with_name(self.name.clone()))
    }

    /// Copy of the graph with the edge `u`-`v` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let (a, b) = (u.min(v), u.max(v));
        let edges = self.edges().filter(|&e| e != (a, b));
        Graph::new(self.order(), edges)
            .expect("subgraph of a valid graph")
            .with_name(self.name.clone())
    }

    pub(crate) fn bfs_raw(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.order()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHED {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Single-source breadth-first distances.
    pub fn bfs(&self, source: usize) -> Result<Vec<Distance>> {
        self.check_vertex(source)?;
        Ok(self.bfs_raw(source).into_iter().map(Distance::from_raw).collect())
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Distance> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(Distance::from_raw(self.bfs_raw(u)[v]))
    }

    /// A shortest `u`-`v` path (vertex sequence), `None` when unreachable.
    ///
    /// The predecessor of each vertex is the first vertex that discovered it
    /// in ascending-neighbour BFS order.
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut parent = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::new();
        parent[u] = u;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &w in &self.adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        if parent[v] == usize::MAX {
            return Ok(None);
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(Some(path))
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.order();
        let mut data = Vec::with_capacity(n * n);
        for s in 0..n {
            data.extend(self.bfs_raw(s));
        }
        DistanceMatrix { order: n, data }
    }

    /// Component label of every vertex; labels are assigned in order of the
    /// smallest vertex of each component.
    pub fn components(&self) -> Vec<usize> {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Empty and single-vertex graphs count as connected.
    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.bfs_raw(0).iter().all(|&d| d != UNREACHED)
    }

    pub fn eccentricity(&self, v: usize) -> Result<Distance> {
        self.check_vertex(v)?;
        Ok(Distance::from_raw(self.bfs_raw(v).into_iter().max().unwrap_or(0)))
    }

    pub fn diameter(&self) -> Distance {
        (0..self.order())
            .map(|v| Distance::from_raw(self.bfs_raw(v).into_iter().max().unwrap_or(0)))
            .max()
            .unwrap_or(Distance::ZERO)
    }

    pub fn radius(&self) -> Distance {
        (0..self.order())
            .map(|v| Distance::from_raw(self.bfs_raw(v).into_iter().max().unwrap_or(0)))
            .min()
            .unwrap_or(Distance::ZERO)
    }

    /// Subgraph induced by `vertices`; new ids follow the order of first
    /// occurrence in `vertices` after sorting.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<InducedSubgraph> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut old_to_new = vec![None; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            old_to_new[v] = Some(i);
        }
        let edges = self.edges().filter_map(|(u, v)| match (old_to_new[u], old_to_new[v]) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        });
        let graph = Graph::new(keep.len(), edges)?.with_name(format!("{}[W]", self.name));
        Ok(InducedSubgraph {
            graph,
            old_to_new,
            new_to_old: keep,
        })
    }

    /// Vertex connectivity `κ(G)`; `n - 1` for complete graphs and 0 for
    /// disconnected ones.
    pub fn vertex_connectivity(&self) -> usize {
        connectivity::vertex_connectivity(self)
    }
}

/// All-pairs shortest path lengths, row-major.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    order: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> Distance {
        Distance::from_raw(self.data[u * self.order + v])
    }

    pub(crate) fn raw(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.order + v]
    }

    pub(crate) fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.order..(u + 1) * self.order]
    }

    pub fn order(&self) -> usize {
        self.order
    }
}
