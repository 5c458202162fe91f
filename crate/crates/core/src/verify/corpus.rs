//! Seeded instance corpus.
//!
//! Random factors are Erdős–Rényi draws `G(n, p)` with disconnected draws
//! rejected (unless a generator asks for arbitrary graphs). Every consumer
//! draws from its own named ChaCha stream derived from the seed, so adding
//! instances to one theorem never shifts the instances of another.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::{self, Family, FamilySpec};
use crate::graph::Graph;
use crate::mask;
use crate::steiner::SolverConfig;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSpec {
    pub seed: u64,
    /// Edge probability of every random draw.
    pub edge_probability: f64,
    /// Orders of the random single graphs (inclusive range).
    pub graph_orders: (usize, usize),
    pub graph_count: usize,
    /// Named graphs added to the single-graph corpus.
    pub families: Vec<FamilySpec>,
    /// Factor orders of the random Cartesian pairs.
    pub factor_orders: (usize, usize),
    pub pair_count: usize,
    /// Three-terminal sets drawn per Cartesian pair.
    pub sets_per_pair: usize,
    /// Terminal-set sizes for the general-k Cartesian bounds.
    pub sandwich_sizes: Vec<usize>,
    /// Sets drawn per pair and per size in `sandwich_sizes`.
    pub sandwich_sets_per_pair: usize,
    /// Factor orders and count of the pairs whose product is swept in full.
    pub sdiam_factor_orders: (usize, usize),
    pub sdiam_pair_count: usize,
    pub lex_g_orders: (usize, usize),
    pub lex_h_orders: (usize, usize),
    pub lex_max_k: usize,
    pub lex_instance_count: usize,
    /// Instances generated for each of the five three-terminal lex cases.
    pub lex_case_quota: usize,
    /// Largest product order for the mesh, torus and Hamming tuples.
    pub family_order_limit: usize,
    pub dp_width_limit: usize,
    pub oracle_free_limit: usize,
    pub max_subsets: u128,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            seed: 7,
            edge_probability: 0.4,
            graph_orders: (4, 9),
            graph_count: 40,
            families: vec![
                FamilySpec::new(Family::Path, vec![6]),
                FamilySpec::new(Family::Cycle, vec![7]),
                FamilySpec::new(Family::Complete, vec![6]),
                FamilySpec::new(Family::Star, vec![6]),
                FamilySpec::new(Family::Hypercube, vec![3]),
                FamilySpec::new(Family::Petersen, vec![]),
                FamilySpec::new(Family::Grid, vec![3, 3]),
                FamilySpec::new(Family::Torus, vec![3, 4]),
                FamilySpec::new(Family::Spider, vec![2, 1, 1]),
            ],
            factor_orders: (4, 8),
            pair_count: 200,
            sets_per_pair: 50,
            sandwich_sizes: vec![4, 5],
            sandwich_sets_per_pair: 10,
            sdiam_factor_orders: (2, 4),
            sdiam_pair_count: 12,
            lex_g_orders: (3, 7),
            lex_h_orders: (2, 5),
            lex_max_k: 6,
            lex_instance_count: 200,
            lex_case_quota: 12,
            family_order_limit: 30,
            dp_width_limit: 16,
            oracle_free_limit: 40,
            max_subsets: 1_000_000,
        }
    }
}

impl CorpusSpec {
    pub fn with_seed(seed: u64) -> Self {
        CorpusSpec { seed, ..CorpusSpec::default() }
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            dp_width_limit: self.dp_width_limit,
            oracle_free_limit: self.oracle_free_limit,
            max_subsets: self.max_subsets,
        }
    }

    /// Independent stream for one consumer of the corpus.
    pub(crate) fn rng(&self, stream: &str) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(fnv1a(stream));
        rng
    }

    /// Random connected graphs followed by the named families.
    pub(crate) fn single_graphs(&self) -> Vec<Graph> {
        let mut rng = self.rng("single-graphs");
        let mut out: Vec<Graph> = (0..self.graph_count)
            .map(|i| {
                let n = rng.random_range(self.graph_orders.0..=self.graph_orders.1);
                random_connected(&mut rng, n, self.edge_probability).with_name(format!("R{i}"))
            })
            .collect();
        for spec in &self.families {
            if let Ok(g) = families::generate(spec) {
                out.push(g);
            }
        }
        out
    }

    /// The shared Cartesian pair corpus.
    pub(crate) fn cartesian_pairs(&self) -> Vec<(Graph, Graph)> {
        let mut rng = self.rng("cartesian-pairs");
        let (lo, hi) = self.factor_orders;
        (0..self.pair_count)
            .map(|i| {
                let n = rng.random_range(lo..=hi);
                let g = random_connected(&mut rng, n, self.edge_probability);
                let m = rng.random_range(lo..=hi);
                let h = random_connected(&mut rng, m, self.edge_probability);
                (g.with_name(format!("G{i}")), h.with_name(format!("H{i}")))
            })
            .collect()
    }

    /// Small connected pairs whose products are swept for every `k`.
    pub(crate) fn sdiam_pairs(&self, stream: &str, min_order: usize) -> Vec<(Graph, Graph)> {
        let mut rng = self.rng(stream);
        let lo = self.sdiam_factor_orders.0.max(min_order);
        let hi = self.sdiam_factor_orders.1.max(lo);
        (0..self.sdiam_pair_count)
            .map(|i| {
                let n = rng.random_range(lo..=hi);
                let g = random_connected(&mut rng, n, self.edge_probability);
                let m = rng.random_range(lo..=hi);
                let h = random_connected(&mut rng, m, self.edge_probability);
                (g.with_name(format!("A{i}")), h.with_name(format!("B{i}")))
            })
            .collect()
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// `G(n, p)`: each pair is joined independently with probability `p`.
pub(crate) fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple edge list")
}

/// `G(n, p)` conditioned on connectivity by rejection.
pub(crate) fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Up to `count` distinct `size`-subsets of `0..n`, sorted. When there are
/// at most `count` subsets in total, all of them are returned in colex order.
pub(crate) fn sample_sets(rng: &mut ChaCha8Rng, n: usize, size: usize, count: usize) -> Vec<Vec<usize>> {
    if size > n {
        return Vec::new();
    }
    if mask::binomial(n, size) <= count as u128 {
        return mask::combinations(n, size).map(mask::to_vec).collect();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut set = index::sample(rng, n, size).into_vec();
        set.sort_unstable();
        if seen.insert(set.clone()) {
            out.push(set);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_corpus() {
        let a = CorpusSpec::with_seed(11);
        let b = CorpusSpec::with_seed(11);
        let edges = |c: &CorpusSpec| -> Vec<Vec<(usize, usize)>> {
            c.cartesian_pairs()
                .iter()
                .flat_map(|(g, h)| [g.edges().collect(), h.edges().collect()])
                .collect()
        };
        assert_eq!(edges(&a), edges(&b));
        assert_ne!(edges(&a), edges(&CorpusSpec::with_seed(12)));
    }

    #[test]
    fn pairs_are_connected_and_in_range() {
        let c = CorpusSpec::default();
        let pairs = c.cartesian_pairs();
        assert_eq!(pairs.len(), 200);
        for (g, h) in &pairs {
            assert!(g.is_connected() && h.is_connected());
            assert!((4..=8).contains(&g.order()) && (4..=8).contains(&h.order()));
        }
    }

    #[test]
    fn sampled_sets_are_distinct() {
        let mut rng = CorpusSpec::default().rng("t");
        let sets = sample_sets(&mut rng, 20, 3, 50);
        assert_eq!(sets.len(), 50);
        assert_eq!(sets.iter().collect::<BTreeSet<_>>().len(), 50);
        assert_eq!(sample_sets(&mut rng, 4, 3, 50).len(), 4);
        assert!(sample_sets(&mut rng, 2, 3, 5).is_empty());
    }
}
