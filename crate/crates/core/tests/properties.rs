use proptest::prelude::*;

use steiner_core::bounds::{
    build_cartesian_tree, build_lexicographic_tree, cartesian_terms, drop3_parameter, lex_distance_closed_form,
};
use steiner_core::sdiam::{Sweep, SweepContext};
use steiner_core::steiner::{is_steiner_tree, steiner_distance, steiner_distance_oracle};
use steiner_core::{
    cartesian_product, lexicographic_product, Distance, Executor, Graph, ProductVertex, VertexMultiset,
};

fn graph_from(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, pairs.zip(bits).filter(|(_, &b)| b).map(|(e, _)| e)).unwrap()
}

/// Arbitrary simple graph on 1..=max vertices.
fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from(n, &bits))
    })
}

/// Connected graph on 2..=max vertices: a random spanning tree plus random
/// extra edges.
fn connected(max: usize) -> impl Strategy<Value = Graph> {
    (2..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::collection::vec(prop::bool::weighted(0.3), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, bits)| {
                let mut g = graph_from(n, &bits);
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    let u = p.index(v);
                    if !g.has_edge(u, v) {
                        g = g.with_edge(u, v).unwrap();
                    }
                }
                g
            })
    })
}

fn with_terminals<S: Strategy<Value = Graph>>(g: S, max: usize) -> impl Strategy<Value = (Graph, VertexMultiset)> {
    g.prop_flat_map(move |g| {
        let n = g.order();
        prop::collection::vec(0..n, 1..=max)
            .prop_map(move |s| (g.clone(), VertexMultiset::new(s).unwrap()))
    })
}

fn sweep_ctx() -> SweepContext {
    SweepContext::sequential()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dp_matches_oracle((g, s) in with_terminals(graph(9), 5)) {
        let dp = steiner_distance(&g, &s).unwrap();
        let oracle = steiner_distance_oracle(&g, &s).unwrap();
        prop_assert_eq!(dp.distance, oracle.distance);
        if dp.distance.is_finite() {
            for tree in [&dp.tree_edges, &oracle.tree_edges] {
                prop_assert!(is_steiner_tree(&g, tree, &s.support()));
                prop_assert_eq!(Distance::from(tree.len()), dp.distance);
            }
        } else {
            prop_assert!(dp.tree_edges.is_empty());
        }
    }

    #[test]
    fn distance_at_least_support_minus_one((g, s) in with_terminals(connected(9), 6)) {
        let d = steiner_distance(&g, &s).unwrap().distance;
        prop_assert!(d >= Distance::from(s.support().len() - 1));
        prop_assert!(d <= Distance::from(g.order() - 1));
    }

    #[test]
    fn adding_an_edge_never_increases_distance(
        (g, s) in with_terminals(graph(8), 5),
        u in any::<prop::sample::Index>(),
        v in any::<prop::sample::Index>(),
    ) {
        let n = g.order();
        let (u, v) = (u.index(n), v.index(n));
        prop_assume!(u != v && !g.has_edge(u, v));
        let denser = g.with_edge(u, v).unwrap();
        prop_assert!(steiner_distance(&denser, &s).unwrap().distance <= steiner_distance(&g, &s).unwrap().distance);
    }

    #[test]
    fn distance_is_monotone_in_the_set((g, s) in with_terminals(connected(8), 5), extra in 0usize..8) {
        let mut bigger = s.elements().to_vec();
        bigger.push(extra % g.order());
        let bigger = VertexMultiset::new(bigger).unwrap();
        prop_assert!(steiner_distance(&g, &s).unwrap().distance <= steiner_distance(&g, &bigger).unwrap().distance);
    }

    #[test]
    fn repetitions_do_not_matter((g, s) in with_terminals(graph(8), 5)) {
        let support = VertexMultiset::new(s.support()).unwrap();
        prop_assert_eq!(steiner_distance(&g, &s).unwrap().distance, steiner_distance(&g, &support).unwrap().distance);
    }

    #[test]
    fn two_terminals_give_the_classical_distance(g in graph(9), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (a, b) = (a.index(g.order()), b.index(g.order()));
        let s = VertexMultiset::new(vec![a, b]).unwrap();
        prop_assert_eq!(steiner_distance(&g, &s).unwrap().distance, g.distance(a, b).unwrap());
    }

    #[test]
    fn drop3_parameter_range((g, s) in with_terminals(graph(6), 7)) {
        let _ = g;
        prop_assume!(s.len() >= 3);
        let r = drop3_parameter(&s).unwrap().value;
        prop_assert!(r <= s.len() - 3);
        prop_assert!(r <= s.support().len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn sdiam_range_and_monotonicity(g in connected(8)) {
        let ctx = sweep_ctx();
        let sweep = Sweep::new(&g, &ctx).unwrap();
        let n = g.order();
        let mut prev = Distance::ZERO;
        for k in 2..=n {
            let r = sweep.diameter(k).unwrap();
            prop_assert!(r.value >= Distance::from(k - 1));
            prop_assert!(r.value <= Distance::from(n - 1));
            prop_assert!(r.value >= prev);
            prev = r.value;
            prop_assert_eq!(r.witness_set.len(), k);
            prop_assert!(is_steiner_tree(&g, &r.witness_tree, &r.witness_set));
            prop_assert_eq!(Distance::from(r.witness_tree.len()), r.value);
            let s = VertexMultiset::new(r.witness_set.clone()).unwrap();
            prop_assert_eq!(steiner_distance_oracle(&g, &s).unwrap().distance, r.value);
        }
    }

    #[test]
    fn sdiam_of_spanning_subgraph_is_not_smaller(g in connected(7), e in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        let (u, v) = edges[e.index(edges.len())];
        let sparser = g.without_edge(u, v);
        prop_assume!(sparser.is_connected());
        let ctx = sweep_ctx();
        let (a, b) = (Sweep::new(&g, &ctx).unwrap(), Sweep::new(&sparser, &ctx).unwrap());
        for k in 2..=g.order() {
            prop_assert!(b.diameter(k).unwrap().value >= a.diameter(k).unwrap().value);
        }
    }

    #[test]
    fn high_k_collapse(g in connected(8)) {
        let ctx = sweep_ctx();
        let sweep = Sweep::new(&g, &ctx).unwrap();
        let n = g.order();
        let kappa = g.vertex_connectivity();
        for k in (n + 1 - kappa).max(2)..=n {
            prop_assert_eq!(sweep.diameter(k).unwrap().value, Distance::from(k - 1));
        }
    }

    #[test]
    fn radius_profile_is_consistent(g in connected(8), k in 2usize..6) {
        prop_assume!(k <= g.order());
        let ctx = sweep_ctx();
        let sweep = Sweep::new(&g, &ctx).unwrap();
        let p = sweep.profile(k).unwrap();
        prop_assert!(p.radius <= p.diameter);
        prop_assert_eq!(p.diameter, sweep.diameter(k).unwrap().value);
        prop_assert_eq!(p.eccentricities[p.center], p.radius);
        for v in 0..g.order() {
            prop_assert_eq!(sweep.eccentricity(v, k).unwrap(), p.eccentricities[v]);
        }
    }

    #[test]
    fn worker_count_does_not_change_results(g in connected(9), k in 2usize..6) {
        prop_assume!(k <= g.order());
        let seq = SweepContext::sequential();
        let par = SweepContext::new(Default::default(), Executor::with_jobs(3));
        let a = Sweep::new(&g, &seq).unwrap().diameter(k).unwrap();
        let b = Sweep::new(&g, &par).unwrap().diameter(k).unwrap();
        prop_assert_eq!(a, b);
    }
}

fn product_set(n: usize, m: usize) -> impl Strategy<Value = Vec<ProductVertex>> {
    prop::sample::subsequence((0..n * m).collect::<Vec<_>>(), 3..=5.min(n * m))
        .prop_map(move |ids| ids.into_iter().map(|v| ProductVertex::decode(v, m)).collect())
}

fn factors_and_set(
    h: impl Strategy<Value = Graph> + 'static,
) -> impl Strategy<Value = (Graph, Graph, Vec<ProductVertex>)> {
    (connected(4), h).prop_filter("need three product vertices", |(g, h)| g.order() * h.order() >= 3).prop_flat_map(|(g, h)| {
        let (n, m) = (g.order(), h.order());
        product_set(n, m).prop_map(move |s| (g.clone(), h.clone(), s))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn cartesian_bounds_and_builder((g, h, s) in factors_and_set(connected(4))) {
        let p = cartesian_product(&g, &h);
        let ids = p.terminal_ids(&s).unwrap();
        let exact = steiner_distance(&p.graph, &VertexMultiset::new(ids.clone()).unwrap()).unwrap().distance;
        let terms = cartesian_terms(&g, &h, &s).unwrap();
        prop_assert!(Distance::from(terms.lower()) <= exact);
        prop_assert!(exact <= Distance::from(terms.upper()));
        prop_assert!(terms.upper() <= terms.coarse_upper());
        let built = build_cartesian_tree(&g, &h, &s).unwrap();
        prop_assert!(is_steiner_tree(&p.graph, &built.tree_edges, &ids));
        prop_assert!(built.tree_edges.len() as u32 <= terms.upper());
        prop_assert!(Distance::from(built.tree_edges.len()) >= exact);
    }

    #[test]
    fn lexicographic_closed_form_and_builder((g, h, s) in factors_and_set(graph(4))) {
        let p = lexicographic_product(&g, &h);
        let ids = p.terminal_ids(&s).unwrap();
        let exact = steiner_distance(&p.graph, &VertexMultiset::new(ids.clone()).unwrap()).unwrap().distance;
        prop_assert_eq!(lex_distance_closed_form(&g, &h, &s).unwrap().value, exact);
        let built = build_lexicographic_tree(&g, &h, &s).unwrap();
        prop_assert!(is_steiner_tree(&p.graph, &built.tree_edges, &ids));
        prop_assert_eq!(Distance::from(built.tree_edges.len()), exact);
    }

    #[test]
    fn cartesian_pair_distance_is_additive(g in connected(5), h in connected(5), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let p = cartesian_product(&g, &h);
        let (x, y) = (a.index(p.graph.order()), b.index(p.graph.order()));
        let (u, v) = (p.decode(x), p.decode(y));
        let sum = g.distance(u.g, v.g).unwrap() + h.distance(u.h, v.h).unwrap();
        prop_assert_eq!(p.graph.distance(x, y).unwrap(), sum);
    }

    #[test]
    fn lexicographic_pair_distance(g in connected(5), h in graph(4), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let p = lexicographic_product(&g, &h);
        let (x, y) = (a.index(p.graph.order()), b.index(p.graph.order()));
        let (u, v) = (p.decode(x), p.decode(y));
        let want = if u.g != v.g {
            g.distance(u.g, v.g).unwrap()
        } else if u.h == v.h {
            Distance::ZERO
        } else if h.has_edge(u.h, v.h) {
            Distance::Finite(1)
        } else {
            Distance::Finite(2)
        };
        prop_assert_eq!(p.graph.distance(x, y).unwrap(), want);
    }
}
