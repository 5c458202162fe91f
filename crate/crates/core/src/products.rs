//! Cartesian and lexicographic products of two graphs.
//!
//! Product vertices are encoded row-major: `(g, h)` gets id
//! `g * order(H) + h`. The first argument is always the "outer" factor `G`;
//! this matters for the lexicographic product, which is not commutative.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::steiner::VertexMultiset;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProductVertex {
    pub g: usize,
    pub h: usize,
}

impl ProductVertex {
    pub fn new(g: usize, h: usize) -> Self {
        ProductVertex { g, h }
    }

    pub fn encode(self, h_order: usize) -> usize {
        self.g * h_order + self.h
    }

    pub fn decode(id: usize, h_order: usize) -> Self {
        ProductVertex {
            g: id / h_order,
            h: id % h_order,
        }
    }
}

impl fmt::Display for ProductVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.g, self.h)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProductKind {
    Cartesian,
    Lexicographic,
}

impl ProductKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "□",
            ProductKind::Lexicographic => "∘",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    pub graph: Graph,
    /// `(order(G), order(H))`.
    pub factor_orders: (usize, usize),
    pub kind: ProductKind,
}

impl ProductGraph {
    pub fn encode(&self, v: ProductVertex) -> usize {
        v.encode(self.factor_orders.1)
    }

    pub fn decode(&self, id: usize) -> ProductVertex {
        ProductVertex::decode(id, self.factor_orders.1)
    }

    /// Product-graph ids of `set`, validating coordinates and rejecting
    /// repeated vertices.
    pub fn terminal_ids(&self, set: &[ProductVertex]) -> Result<Vec<usize>> {
        let (n, m) = self.factor_orders;
        let mut ids = Vec::with_capacity(set.len());
        for &v in set {
            if v.g >= n {
                return Err(Error::VertexOutOfRange { vertex: v.g, order: n });
            }
            if v.h >= m {
                return Err(Error::VertexOutOfRange { vertex: v.h, order: m });
            }
            ids.push(self.encode(v));
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let v = self.decode(w[0]);
            return Err(Error::DuplicateTerminal(v.g, v.h));
        }
        Ok(ids)
    }
}

fn product_name(g: &Graph, h: &Graph, kind: ProductKind) -> String {
    format!("{}{}{}", g.name(), kind.symbol(), h.name())
}

/// `G □ H`: `(g,h) ~ (g',h')` iff `g = g'` and `h ~ h'`, or `h = h'` and
/// `g ~ g'`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> ProductGraph {
    let (n, m) = (g.order(), h.order());
    let id = |a: usize, b: usize| a * m + b;
    let mut edges = Vec::with_capacity(n * h.size() + m * g.size());
    for a in 0..n {
        edges.extend(h.edges().map(|(b, c)| (id(a, b), id(a, c))));
    }
    for (a, c) in g.edges() {
        edges.extend((0..m).map(|b| (id(a, b), id(c, b))));
    }
    let graph = Graph::new(n * m, edges)
        .expect("product of simple graphs is simple")
        .with_name(product_name(g, h, ProductKind::Cartesian));
    ProductGraph {
        graph,
        factor_orders: (n, m),
        kind: ProductKind::Cartesian,
    }
}

/// `G ∘ H`: `(g,h) ~ (g',h')` iff `g ~ g'`, or `g = g'` and `h ~ h'`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> ProductGraph {
    let (n, m) = (g.order(), h.order());
    let id = |a: usize, b: usize| a * m + b;
    let mut edges = Vec::with_capacity(n * h.size() + m * m * g.size());
    for a in 0..n {
        edges.extend(h.edges().map(|(b, c)| (id(a, b), id(a, c))));
    }
    for (a, c) in g.edges() {
        for b in 0..m {
            edges.extend((0..m).map(|d| (id(a, b), id(c, d))));
        }
    }
    let graph = Graph::new(n * m, edges)
        .expect("product of simple graphs is simple")
        .with_name(product_name(g, h, ProductKind::Lexicographic));
    ProductGraph {
        graph,
        factor_orders: (n, m),
        kind: ProductKind::Lexicographic,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    G,
    H,
}

/// Coordinate multiset of `set` along `axis`, multiplicities preserved.
pub fn project(set: &[ProductVertex], axis: Axis) -> Result<VertexMultiset> {
    let coords = set
        .iter()
        .map(|v| match axis {
            Axis::G => v.g,
            Axis::H => v.h,
        })
        .collect();
    VertexMultiset::new(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn k2_products() {
        let c4 = cartesian_product(&complete(2), &complete(2)).graph;
        assert_eq!((c4.order(), c4.size()), (4, 4));
        assert!((0..4).all(|v| c4.degree(v) == 2));
        assert!(c4.is_connected());

        let k4 = lexicographic_product(&complete(2), &complete(2)).graph;
        assert!(k4.is_complete() && k4.order() == 4);
        let k6 = lexicographic_product(&complete(2), &complete(3)).graph;
        assert!(k6.is_complete() && k6.order() == 6);
    }

    #[test]
    fn edge_counts() {
        let p = cartesian_product(&path(2), &path(3));
        assert_eq!((p.graph.order(), p.graph.size()), (6, 7));
        let l = lexicographic_product(&path(2), &path(2));
        assert_eq!(l.graph.size(), 2 + 4);
        assert_eq!(l.kind, ProductKind::Lexicographic);
    }

    #[test]
    fn grid_corner_distance() {
        let p = cartesian_product(&path(3), &path(3));
        let a = p.encode(ProductVertex::new(0, 0));
        let b = p.encode(ProductVertex::new(2, 2));
        assert_eq!(p.graph.distance(a, b).unwrap(), crate::Distance::Finite(4));
    }

    #[test]
    fn names_and_encoding() {
        let g = path(3).with_name("P3");
        let h = complete(2).with_name("K2");
        let p = cartesian_product(&g, &h);
        assert_eq!(p.graph.name(), "P3□K2");
        assert_eq!(lexicographic_product(&g, &h).graph.name(), "P3∘K2");
        let v = ProductVertex::new(2, 1);
        assert_eq!(p.encode(v), 5);
        assert_eq!(p.decode(5), v);
        assert!(matches!(
            p.terminal_ids(&[v, v]),
            Err(Error::DuplicateTerminal(2, 1))
        ));
        assert!(p.terminal_ids(&[ProductVertex::new(3, 0)]).is_err());
    }

    #[test]
    fn projections_keep_multiplicity() {
        let s = [
            ProductVertex::new(0, 1),
            ProductVertex::new(0, 2),
            ProductVertex::new(1, 1),
        ];
        assert_eq!(project(&s, Axis::G).unwrap().elements(), &[0, 0, 1]);
        assert_eq!(project(&s, Axis::H).unwrap().elements(), &[1, 2, 1]);
        let single = [ProductVertex::new(4, 2)];
        assert_eq!(project(&single, Axis::G).unwrap().elements(), &[4]);
        assert_eq!(project(&single, Axis::H).unwrap().elements(), &[2]);
    }
}
