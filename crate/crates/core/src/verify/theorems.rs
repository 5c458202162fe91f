//! Instance generators, one per registered id.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::corpus::{random_connected, random_graph, sample_sets};
use super::table::{cycle_sdiam, hamming_bounds, hl4_sdiam, hp4_bounds, mesh_bounds, petersen_sdiam, torus_bounds};
use super::{CorpusSpec, Group, Outcome, Recorder};
use crate::bounds::{
    build_cartesian_tree, build_lexicographic_tree, cartesian_sdiam_bounds, cartesian_terms,
    lex_distance_closed_form, lex_distance_k3, lex_sdiam_bounds, sdiam3_lex_closed_form, LexK3Case,
};
use crate::error::Result;
use crate::families::{self, Family, FamilySpec};
use crate::graph::{Distance, Graph};
use crate::mask;
use crate::products::{cartesian_product, lexicographic_product, ProductGraph, ProductVertex};
use crate::sdiam::{Sweep, SweepContext};
use crate::steiner::{is_steiner_tree, steiner_distance_oracle_with, steiner_distance_with, SolverConfig, VertexMultiset};

pub(crate) fn groups(id: &str, c: &CorpusSpec) -> Vec<Group> {
    match id {
        "Thm1.3" => thm1_3(c),
        "Obs1.1" => obs1_1(c),
        "Obs1.2" => obs1_2(c),
        "Lem2.1" => lem2_1(c),
        "Lem2.2" => lem2_2(c),
        "Obs2.1" => obs2_1(c),
        "Thm2.1" => thm2_1(c),
        "Cor2.1" => cor2_1(c),
        "Cor2.2" => cor2_2(c),
        "Ex1.1" => ex1_1(c),
        "Ex1.2" => ex1_2(),
        "Rem1" => rem1(),
        "Thm2.2" => thm2_2(c),
        "Cor2.3" => cor2_3(c),
        "Ex2.1" => ex2_1(c),
        "Ex2.2" => ex2_2(),
        "Lem3.1" => lem3_1(c),
        "Lem3.2" => lem3_2(c),
        "Lem3.3" => lem3_3(c),
        "Lem3.4" => lem3_4(c),
        "Thm3.1" => thm3_1(c),
        "Prop3.1" => prop3_1(c),
        "Thm3.2" => thm3_2(c),
        "Ex3" => ex3(),
        "Prop3.5" => prop3_5(c),
        "Prop4.1" => prop4_1(),
        "Prop4.2" => prop4_2(c),
        "Prop4.3" => prop4_3(c),
        "Prop4.4" => prop4_4(c),
        "Prop4.5" => prop4_5(c),
        "Obs4.1" => obs4_1(c),
        "Prop4.6.1" => prop4_6_1(),
        "Prop4.6.2" => prop4_6_2(),
        "Prop4.6.3" => prop4_6_3(),
        _ => Vec::new(),
    }
}

fn fin(v: usize) -> Distance {
    Distance::from(v)
}

fn fmt_ids(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn fmt_pvs(s: &[ProductVertex]) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn decode(p: &ProductGraph, ids: &[usize]) -> Vec<ProductVertex> {
    ids.iter().map(|&id| p.decode(id)).collect()
}

fn dp(g: &Graph, ids: &[usize], config: &SolverConfig) -> Result<Distance> {
    Ok(steiner_distance_with(g, &VertexMultiset::new(ids.to_vec())?, config)?.distance)
}

fn oracle(g: &Graph, ids: &[usize], config: &SolverConfig) -> Result<Distance> {
    Ok(steiner_distance_oracle_with(g, &VertexMultiset::new(ids.to_vec())?, config)?.distance)
}

fn coords(s: &[ProductVertex]) -> (Vec<usize>, Vec<usize>) {
    (s.iter().map(|v| v.g).collect(), s.iter().map(|v| v.h).collect())
}

fn sdiam(g: &Graph, k: usize, ctx: &SweepContext) -> Result<Distance> {
    Ok(Sweep::new(g, ctx)?.diameter(k)?.value)
}

/// One group per graph, one row per `k`, with `check(g, k, ctx)`.
fn per_k<F>(graphs: Vec<(Graph, Vec<usize>)>, check: F) -> Vec<Group>
where
    F: Fn(&Graph, usize, &SweepContext) -> Result<Outcome> + Send + Sync + Clone + 'static,
{
    graphs
        .into_iter()
        .map(|(g, ks)| {
            let check = check.clone();
            Box::new(move |rec: &mut Recorder<'_>| {
                let ctx = rec.ctx;
                for &k in &ks {
                    rec.record(format!("{} k={k}", g.name()), || check(&g, k, ctx));
                }
            }) as Group
        })
        .collect()
}

fn single_graphs_with_ks(c: &CorpusSpec, ks: impl Fn(&Graph) -> Vec<usize>) -> Vec<(Graph, Vec<usize>)> {
    c.single_graphs()
        .into_iter()
        .filter(|g| g.is_connected() && g.order() >= 2)
        .map(|g| {
            let k = ks(&g);
            (g, k)
        })
        .collect()
}

fn thm1_3(c: &CorpusSpec) -> Vec<Group> {
    let graphs = single_graphs_with_ks(c, |g| (2..=g.order()).collect());
    per_k(graphs, |g, k, ctx| {
        Ok(Outcome::bounds(fin(k - 1), sdiam(g, k, ctx)?, fin(g.order() - 1)))
    })
}

fn obs1_1(c: &CorpusSpec) -> Vec<Group> {
    let mut rng = c.rng("Obs1.1");
    let config = c.solver_config();
    c.single_graphs()
        .into_iter()
        .map(|g| {
            let sets: Vec<Vec<usize>> = (2..=g.order().min(6))
                .flat_map(|size| sample_sets(&mut rng, g.order(), size, 5))
                .collect();
            let config = config.clone();
            Box::new(move |rec: &mut Recorder<'_>| {
                for s in &sets {
                    rec.record(format!("{} S={}", g.name(), fmt_ids(s)), || {
                        Ok(Outcome::within(Some(fin(s.len() - 1)), dp(&g, s, &config)?, None))
                    });
                }
            }) as Group
        })
        .collect()
}

fn obs1_2(c: &CorpusSpec) -> Vec<Group> {
    let mut rng = c.rng("Obs1.2");
    c.single_graphs()
        .into_iter()
        .filter(|g| g.is_connected() && g.order() >= 2)
        .map(|g| {
            let removable: Vec<(usize, usize)> =
                g.edges().filter(|&(u, v)| g.without_edge(u, v).is_connected()).collect();
            let spanning = removable.choose(&mut rng).map(|&(u, v)| {
                let name = format!("{}-{{{u},{v}}}", g.name());
                g.without_edge(u, v).with_name(name)
            });
            Box::new(move |rec: &mut Recorder<'_>| {
                let ctx = rec.ctx;
                let n = g.order();
                let full: Vec<Result<Distance>> = (2..=n).map(|k| sdiam(&g, k, ctx)).collect();
                if let Some(sub) = &spanning {
                    for k in 2..=n {
                        rec.record(format!("(1) {} vs {} k={k}", g.name(), sub.name()), || {
                            let d = full[k - 2].clone()?;
                            Ok(Outcome::within(None, d, Some(sdiam(sub, k, ctx)?)))
                        });
                    }
                }
                for k in 2..n {
                    rec.record(format!("(2) {} k={k}->{}", g.name(), k + 1), || {
                        let (a, b) = (full[k - 2].clone()?, full[k - 1].clone()?);
                        Ok(Outcome::within(Some(a), b, None))
                    });
                }
            }) as Group
        })
        .collect()
}

fn obs4_1(c: &CorpusSpec) -> Vec<Group> {
    let graphs = single_graphs_with_ks(c, |g| {
        let (n, kappa) = (g.order(), g.vertex_connectivity());
        ((n + 1).saturating_sub(kappa).max(2)..=n).collect()
    });
    per_k(graphs, |g, k, ctx| Ok(Outcome::equals(fin(k - 1), sdiam(g, k, ctx)?)))
}

/// Product of a corpus pair plus a sampler of its vertex sets.
struct CartesianCase {
    g: Graph,
    h: Graph,
    p: ProductGraph,
}

impl CartesianCase {
    fn new(g: Graph, h: Graph) -> Self {
        let p = cartesian_product(&g, &h);
        CartesianCase { g, h, p }
    }

    fn label(&self, s: &[ProductVertex]) -> String {
        format!("{} S={}", self.p.graph.name(), fmt_pvs(s))
    }
}

/// One group per Cartesian corpus pair; `sets` draws the terminal sets.
fn cartesian_groups<S, F>(c: &CorpusSpec, stream: &str, mut sets: S, check: F) -> Vec<Group>
where
    S: FnMut(&mut ChaCha8Rng, usize) -> Vec<Vec<usize>>,
    F: Fn(&CartesianCase, &[usize], &[ProductVertex], &SolverConfig) -> Result<Outcome> + Send + Sync + Clone + 'static,
{
    let mut rng = c.rng(stream);
    let config = c.solver_config();
    c.cartesian_pairs()
        .into_iter()
        .map(|(g, h)| {
            let case = CartesianCase::new(g, h);
            let sets = sets(&mut rng, case.p.graph.order());
            let (check, config) = (check.clone(), config.clone());
            Box::new(move |rec: &mut Recorder<'_>| {
                for ids in &sets {
                    let s = decode(&case.p, ids);
                    rec.record(case.label(&s), || check(&case, ids, &s, &config));
                }
            }) as Group
        })
        .collect()
}

fn lem2_1(c: &CorpusSpec) -> Vec<Group> {
    cartesian_groups(
        c,
        "Lem2.1",
        |rng, n| (0..20).map(|_| vec![rng.random_range(0..n), rng.random_range(0..n)]).collect(),
        |case, ids, s, _| {
            let predicted = case.g.distance(s[0].g, s[1].g)? + case.h.distance(s[0].h, s[1].h)?;
            Ok(Outcome::equals(predicted, case.p.graph.distance(ids[0], ids[1])?))
        },
    )
}

fn lem2_2(c: &CorpusSpec) -> Vec<Group> {
    cartesian_groups(
        c,
        "Lem2.2",
        |rng, n| (2..=5).flat_map(|size| sample_sets(rng, n, size, 3)).collect(),
        |case, ids, s, config| {
            let (gs, hs) = coords(s);
            let lower = dp(&case.g, &gs, config)? + dp(&case.h, &hs, config)?;
            Ok(Outcome::within(Some(lower), dp(&case.p.graph, ids, config)?, None))
        },
    )
}

/// A minimum tree on three terminals: every leaf is a terminal and there is
/// at most one branch vertex, of degree 3.
fn path_or_claw(edges: &[(usize, usize)], terminals: &[usize]) -> bool {
    let mut degree = std::collections::BTreeMap::<usize, usize>::new();
    for &(u, v) in edges {
        *degree.entry(u).or_default() += 1;
        *degree.entry(v).or_default() += 1;
    }
    let leaves_ok = degree.iter().all(|(v, &d)| d != 1 || terminals.contains(v));
    let branches: Vec<usize> = degree.values().copied().filter(|&d| d >= 3).collect();
    leaves_ok && branches.len() <= 1 && branches.iter().all(|&d| d == 3)
}

fn obs2_1(c: &CorpusSpec) -> Vec<Group> {
    let mut rng = c.rng("Obs2.1");
    let config = c.solver_config();
    let mut graphs: Vec<Graph> = c.single_graphs().into_iter().filter(|g| g.is_connected()).collect();
    graphs.extend(c.cartesian_pairs().iter().take(50).map(|(g, h)| cartesian_product(g, h).graph));
    graphs
        .into_iter()
        .map(|g| {
            let sets = sample_sets(&mut rng, g.order(), 3, 5);
            let config = config.clone();
            Box::new(move |rec: &mut Recorder<'_>| {
                for s in &sets {
                    rec.record(format!("{} S={}", g.name(), fmt_ids(s)), || {
                        let r = steiner_distance_with(&g, &VertexMultiset::new(s.clone())?, &config)?;
                        let size = fin(r.tree_edges.len());
                        let ok = is_steiner_tree(&g, &r.tree_edges, s)
                            && size == r.distance
                            && path_or_claw(&r.tree_edges, s);
                        Ok(Outcome::custom(None, Some(size), None, ok))
                    });
                }
            }) as Group
        })
        .collect()
}

fn sandwich_sets(c: &CorpusSpec) -> impl FnMut(&mut ChaCha8Rng, usize) -> Vec<Vec<usize>> {
    let (sizes, count) = (c.sandwich_sizes.clone(), c.sandwich_sets_per_pair);
    move |rng, n| sizes.iter().flat_map(|&size| sample_sets(rng, n, size, count)).collect()
}

fn thm2_1(c: &CorpusSpec) -> Vec<Group> {
    cartesian_groups(c, "Thm2.1", sandwich_sets(c), |case, ids, s, config| {
        let terms = cartesian_terms(&case.g, &case.h, s)?;
        let exact = dp(&case.p.graph, ids, config)?;
        let built = build_cartesian_tree(&case.g, &case.h, s)?;
        let size = fin(built.tree_edges.len());
        let builder_ok = is_steiner_tree(&case.p.graph, &built.tree_edges, ids)
            && exact <= size
            && size <= Distance::Finite(terms.upper());
        Ok(Outcome::bounds(terms.lower().into(), exact, terms.upper().into())
            .and(builder_ok)
            .note(format!("r={} t={} tree={}", terms.r, terms.t, size)))
    })
}

fn cor2_1(c: &CorpusSpec) -> Vec<Group> {
    cartesian_groups(
        c,
        "Cor2.1",
        |rng, n| (3..=6).flat_map(|size| sample_sets(rng, n, size, 3)).collect(),
        |case, ids, s, config| {
            let terms = cartesian_terms(&case.g, &case.h, s)?;
            let exact = dp(&case.p.graph, ids, config)?;
            Ok(Outcome::bounds(terms.lower().into(), exact, terms.coarse_upper().into())
                .and(terms.upper() <= terms.coarse_upper()))
        },
    )
}

fn cor2_2(c: &CorpusSpec) -> Vec<Group> {
    let count = c.sets_per_pair;
    cartesian_groups(
        c,
        "Cor2.2",
        move |rng, n| sample_sets(rng, n, 3, count),
        |case, ids, s, config| {
            let terms = cartesian_terms(&case.g, &case.h, s)?;
            Ok(Outcome::equals(terms.lower().into(), dp(&case.p.graph, ids, config)?))
        },
    )
}

fn ex1_1(c: &CorpusSpec) -> Vec<Group> {
    cartesian_groups(
        c,
        "Ex1.1",
        |rng, n| sample_sets(rng, n, 3, 5),
        |case, ids, s, config| {
            let terms = cartesian_terms(&case.g, &case.h, s)?;
            let exact = dp(&case.p.graph, ids, config)?;
            let tight = terms.lower() == terms.upper() && terms.upper() == terms.coarse_upper();
            Ok(Outcome::equals(terms.lower().into(), exact).and(tight))
        },
    )
}

fn ex1_2() -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for n in 4..=6usize {
        for m in 3..=4usize {
            out.push(Box::new(move |rec: &mut Recorder<'_>| {
                let (g, h) = (families::path(n), families::star(m));
                let p = cartesian_product(&g, &h);
                let sweep = Sweep::new(&p.graph, rec.ctx);
                for x in 4..=n {
                    let rows: Vec<usize> = (0..x - 1).chain([n - 1]).collect();
                    // two leaves and the centre of each chosen copy of the star
                    let s: Vec<ProductVertex> = rows
                        .iter()
                        .flat_map(|&i| [1, 2, 0].map(|j| ProductVertex::new(i, j)))
                        .collect();
                    let predicted = fin(n - 1 + 2 * x);
                    rec.record(format!("{} x={x} S={}", p.graph.name(), fmt_pvs(&s)), || {
                        let terms = cartesian_terms(&g, &h, &s)?;
                        let ids = p.terminal_ids(&s)?;
                        let exact = sweep.as_ref().map_err(Clone::clone)?.steiner(&ids)?.distance;
                        let params_ok = (terms.d_g, terms.d_h, terms.r, terms.t) == (n as u32 - 1, 2, x - 1, 3);
                        Ok(Outcome::equals(predicted, exact)
                            .and(params_ok && Distance::from(terms.upper()) == predicted))
                    });
                }
            }));
        }
    }
    out
}

fn rem1() -> Vec<Group> {
    vec![Box::new(|rec: &mut Recorder<'_>| {
        let (g, h) = (families::spider(&[2, 1, 1]), families::path(5));
        let p = cartesian_product(&g, &h);
        let config = rec.ctx.config.clone();
        rec.record(format!("{} all 4-sets with d_G=d_H=4", p.graph.name()), || {
            // Steiner distance of every support, indexed by bitmask
            let table = |f: &Graph| -> Result<Vec<Distance>> {
                (0..1usize << f.order())
                    .map(|bits| match mask::to_vec(bits as u128).as_slice() {
                        [] => Ok(Distance::ZERO),
                        s => dp(f, s, &config),
                    })
                    .collect()
            };
            let (tg, th) = (table(&g)?, table(&h)?);
            let (mut matching, mut best, mut witness) = (0usize, Distance::ZERO, Vec::new());
            for set in mask::combinations(p.graph.order(), 4) {
                let ids = mask::to_vec(set);
                let s = decode(&p, &ids);
                let gm = s.iter().fold(0usize, |a, v| a | 1 << v.g);
                let hm = s.iter().fold(0usize, |a, v| a | 1 << v.h);
                if tg[gm] != Distance::Finite(4) || th[hm] != Distance::Finite(4) {
                    continue;
                }
                matching += 1;
                let d = dp(&p.graph, &ids, &config)?;
                if d > best {
                    best = d;
                    witness = s;
                }
            }
            Ok(Outcome::within(Some(Distance::Finite(9)), best, None)
                .note(format!("{matching} sets, max at S={}", fmt_pvs(&witness))))
        });
    })]
}

fn product_sweep_groups<F>(pairs: Vec<(Graph, Graph)>, lex: bool, ks: fn(usize, usize) -> Vec<usize>, check: F) -> Vec<Group>
where
    F: Fn(&Graph, &Graph, &Graph, usize, &SweepContext) -> Result<Outcome> + Send + Sync + Clone + 'static,
{
    pairs
        .into_iter()
        .map(|(g, h)| {
            let check = check.clone();
            Box::new(move |rec: &mut Recorder<'_>| {
                let p = if lex { lexicographic_product(&g, &h) } else { cartesian_product(&g, &h) };
                let ctx = rec.ctx;
                for k in ks(g.order(), h.order()) {
                    rec.record(format!("{} k={k}", p.graph.name()), || check(&g, &h, &p.graph, k, ctx));
                }
            }) as Group
        })
        .collect()
}

fn thm2_2(c: &CorpusSpec) -> Vec<Group> {
    let mut pairs = c.sdiam_pairs("Thm2.2", 2);
    pairs.extend([
        (families::path(3), families::path(3)),
        (families::path(2), families::path(4)),
        (families::complete(3), families::complete(3)),
        (families::cycle(4), families::path(3)),
        (families::star(4), families::path(3)),
    ]);
    product_sweep_groups(pairs, false, |n, m| (3..=n * m).collect(), |g, h, p, k, ctx| {
        let b = cartesian_sdiam_bounds(g, h, k, ctx)?;
        Ok(Outcome::bounds(b.bounds.lower, sdiam(p, k, ctx)?, b.bounds.upper).note(format!("case {}", b.case)))
    })
}

fn cor2_3(c: &CorpusSpec) -> Vec<Group> {
    let mut pairs = c.sdiam_pairs("Cor2.3", 3);
    pairs.extend([
        (families::path(3), families::path(3)),
        (families::cycle(4), families::path(3)),
        (families::complete(3), families::path(4)),
        (families::path(3), families::cycle(5)),
    ]);
    product_sweep_groups(pairs, false, |_, _| vec![3], |g, h, p, k, ctx| {
        Ok(Outcome::equals(sdiam(g, k, ctx)? + sdiam(h, k, ctx)?, sdiam(p, k, ctx)?))
    })
}

fn ex2_1(c: &CorpusSpec) -> Vec<Group> {
    let pairs = c.sdiam_pairs("Ex2.1", 3);
    product_sweep_groups(pairs, false, |_, _| vec![3], |g, h, p, k, ctx| {
        let b = cartesian_sdiam_bounds(g, h, k, ctx)?;
        Ok(Outcome::equals(b.bounds.lower, sdiam(p, k, ctx)?).and(b.bounds.value().is_some()))
    })
}

fn ex2_2() -> Vec<Group> {
    let pairs = [(5, 5), (5, 6), (5, 7), (6, 6)]
        .map(|(n, m)| (families::path(n), families::path(m)))
        .to_vec();
    product_sweep_groups(pairs, false, |_, _| vec![4], |g, h, p, k, ctx| {
        let (n, m) = (g.order(), h.order());
        let predicted = fin(2 * (n - 1) + m - 1);
        let b = cartesian_sdiam_bounds(g, h, k, ctx)?;
        Ok(Outcome::equals(predicted, sdiam(p, k, ctx)?).and(b.bounds.upper == predicted))
    })
}

/// Random lexicographic pairs; `connected_g` selects the outer factor model.
fn lex_pairs(c: &CorpusSpec, stream: &str, count: usize, connected_g: bool) -> Vec<(Graph, Graph)> {
    let mut rng = c.rng(stream);
    (0..count)
        .map(|i| {
            let n = rng.random_range(c.lex_g_orders.0..=c.lex_g_orders.1);
            let g = if connected_g {
                random_connected(&mut rng, n, c.edge_probability)
            } else {
                random_graph(&mut rng, n, c.edge_probability)
            };
            let m = rng.random_range(c.lex_h_orders.0..=c.lex_h_orders.1);
            let h = random_graph(&mut rng, m, c.edge_probability);
            (g.with_name(format!("L{i}")), h.with_name(format!("M{i}")))
        })
        .collect()
}

/// One group per lexicographic pair with sets from `sets`.
fn lex_groups<S, F>(c: &CorpusSpec, stream: &str, pairs: Vec<(Graph, Graph)>, mut sets: S, check: F) -> Vec<Group>
where
    S: FnMut(&mut ChaCha8Rng, &Graph, &Graph) -> Vec<Vec<ProductVertex>>,
    F: Fn(&Graph, &Graph, &ProductGraph, &[usize], &[ProductVertex], &SolverConfig) -> Result<Outcome>
        + Send
        + Sync
        + Clone
        + 'static,
{
    let mut rng = c.rng(stream);
    let config = c.solver_config();
    pairs
        .into_iter()
        .map(|(g, h)| {
            let sets = sets(&mut rng, &g, &h);
            let (check, config) = (check.clone(), config.clone());
            Box::new(move |rec: &mut Recorder<'_>| {
                let p = lexicographic_product(&g, &h);
                for s in &sets {
                    rec.record(format!("{} S={}", p.graph.name(), fmt_pvs(s)), || {
                        let ids = p.terminal_ids(s)?;
                        check(&g, &h, &p, &ids, s, &config)
                    });
                }
            }) as Group
        })
        .collect()
}

fn random_product_sets(rng: &mut ChaCha8Rng, n: usize, m: usize, sizes: std::ops::RangeInclusive<usize>, per_size: usize) -> Vec<Vec<ProductVertex>> {
    sizes
        .flat_map(|size| sample_sets(rng, n * m, size, per_size))
        .map(|ids| ids.into_iter().map(|id| ProductVertex::decode(id, m)).collect())
        .collect()
}

fn lem3_1(c: &CorpusSpec) -> Vec<Group> {
    let pairs = lex_pairs(c, "Lem3.1-pairs", 50, false);
    lex_groups(
        c,
        "Lem3.1",
        pairs,
        |rng, g, h| random_product_sets(rng, g.order(), h.order(), 2..=2, 20),
        |g, h, p, ids, s, _| {
            let (a, b) = (s[0], s[1]);
            let predicted = if a.g != b.g {
                g.distance(a.g, b.g)?
            } else if g.degree(a.g) == 0 {
                h.distance(a.h, b.h)?
            } else {
                h.distance(a.h, b.h)?.min(Distance::Finite(2))
            };
            Ok(Outcome::equals(predicted, p.graph.distance(ids[0], ids[1])?))
        },
    )
}

fn lem3_2(c: &CorpusSpec) -> Vec<Group> {
    let pairs = lex_pairs(c, "Lem3.2-pairs", 50, false);
    lex_groups(
        c,
        "Lem3.2",
        pairs,
        |rng, g, h| random_product_sets(rng, g.order(), h.order(), 2..=2, 20),
        |g, _, p, ids, s, _| {
            Ok(Outcome::within(Some(g.distance(s[0].g, s[1].g)?), p.graph.distance(ids[0], ids[1])?, None))
        },
    )
}

fn lem3_3(c: &CorpusSpec) -> Vec<Group> {
    let pairs = lex_pairs(c, "Lem3.3-pairs", 50, true);
    lex_groups(
        c,
        "Lem3.3",
        pairs,
        |rng, g, h| random_product_sets(rng, g.order(), h.order(), 2..=6, 3),
        |g, _, p, ids, s, config| {
            let (gs, _) = coords(s);
            Ok(Outcome::within(Some(dp(g, &gs, config)?), dp(&p.graph, ids, config)?, None))
        },
    )
}

fn lem3_4(c: &CorpusSpec) -> Vec<Group> {
    let pairs = lex_pairs(c, "Lem3.4-pairs", 50, true);
    lex_groups(
        c,
        "Lem3.4",
        pairs,
        |rng, g, h| {
            let copies: Vec<Vec<usize>> =
                (2..=g.order().min(6)).flat_map(|size| sample_sets(rng, g.order(), size, 3)).collect();
            copies
                .into_iter()
                .map(|gs| gs.into_iter().map(|x| ProductVertex::new(x, rng.random_range(0..h.order()))).collect())
                .collect()
        },
        |g, _, p, ids, s, config| {
            let (gs, _) = coords(s);
            Ok(Outcome::equals(dp(g, &gs, config)?, dp(&p.graph, ids, config)?))
        },
    )
}

fn thm3_1(c: &CorpusSpec) -> Vec<Group> {
    let pairs = lex_pairs(c, "Thm3.1-pairs", c.lex_instance_count, true);
    let max_k = c.lex_max_k;
    lex_groups(
        c,
        "Thm3.1",
        pairs,
        move |rng, g, h| {
            let nm = g.order() * h.order();
            let k = rng.random_range(2..=max_k.min(nm));
            random_product_sets(rng, g.order(), h.order(), k..=k, 1)
        },
        |g, h, p, ids, s, config| {
            let closed = lex_distance_closed_form(g, h, s)?;
            let exact = oracle(&p.graph, ids, config)?;
            let built = build_lexicographic_tree(g, h, s)?;
            let builder_ok = is_steiner_tree(&p.graph, &built.tree_edges, ids)
                && Distance::from(built.tree_edges.len()) == closed.value;
            Ok(Outcome::equals(closed.value, exact)
                .and(builder_ok)
                .note(format!("case {} r={}", closed.case, closed.r)))
        },
    )
}

/// Draws a terminal triple for the given case of the three-terminal table,
/// or `None` when this `(G, H)` cannot host it.
fn k3_triple(rng: &mut ChaCha8Rng, g: &Graph, h: &Graph, case: LexK3Case) -> Option<Vec<ProductVertex>> {
    let (n, m) = (g.order(), h.order());
    let comp = g.components();
    let hs = |rng: &mut ChaCha8Rng, count: usize| -> Vec<usize> { rand::seq::index::sample(rng, m, count).into_vec() };
    let mut s = match case {
        LexK3Case::SameIsolated | LexK3Case::SameWithNeighbor => {
            let want_isolated = case == LexK3Case::SameIsolated;
            let candidates: Vec<usize> = (0..n).filter(|&v| (g.degree(v) == 0) == want_isolated).collect();
            let x = *candidates.choose(rng)?;
            if m < 3 {
                return None;
            }
            hs(rng, 3).into_iter().map(|y| ProductVertex::new(x, y)).collect::<Vec<_>>()
        }
        LexK3Case::PairSplit | LexK3Case::PairJoined => {
            let split = case == LexK3Case::PairSplit;
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && (comp[a] != comp[b]) == split)
                .collect();
            let &(lone, shared) = pairs.choose(rng)?;
            let two = hs(rng, 2);
            vec![
                ProductVertex::new(lone, rng.random_range(0..m)),
                ProductVertex::new(shared, two[0]),
                ProductVertex::new(shared, two[1]),
            ]
        }
        LexK3Case::AllDistinct => {
            if n < 3 {
                return None;
            }
            rand::seq::index::sample(rng, n, 3)
                .into_iter()
                .map(|x| ProductVertex::new(x, rng.random_range(0..m)))
                .collect()
        }
    };
    s.shuffle(rng);
    Some(s)
}

fn prop3_1(c: &CorpusSpec) -> Vec<Group> {
    const CASES: [LexK3Case; 5] = [
        LexK3Case::SameIsolated,
        LexK3Case::SameWithNeighbor,
        LexK3Case::PairSplit,
        LexK3Case::PairJoined,
        LexK3Case::AllDistinct,
    ];
    let mut rng = c.rng("Prop3.1");
    let config = c.solver_config();
    let mut out: Vec<Group> = Vec::new();
    for case in CASES {
        let mut made = 0;
        let mut attempt = 0;
        while made < c.lex_case_quota && attempt < 100_000 {
            attempt += 1;
            let n = rng.random_range(c.lex_g_orders.0..=c.lex_g_orders.1);
            let m = rng.random_range(c.lex_h_orders.0.max(3)..=c.lex_h_orders.1.max(3));
            let g = random_graph(&mut rng, n, c.edge_probability).with_name(format!("D{}{made}", case.index()));
            let h = random_graph(&mut rng, m, c.edge_probability).with_name(format!("E{}{made}", case.index()));
            let Some(s) = k3_triple(&mut rng, &g, &h, case) else { continue };
            made += 1;
            let config = config.clone();
            out.push(Box::new(move |rec: &mut Recorder<'_>| {
                let p = lexicographic_product(&g, &h);
                rec.record(format!("{} S={}", p.graph.name(), fmt_pvs(&s)), || {
                    let (got, predicted) = lex_distance_k3(&g, &h, &s)?;
                    let exact = oracle(&p.graph, &p.terminal_ids(&s)?, &config)?;
                    Ok(Outcome::equals(predicted, exact)
                        .and(got == case)
                        .note(format!("case {}", got.index())))
                });
            }));
        }
    }
    out
}

fn thm3_2(c: &CorpusSpec) -> Vec<Group> {
    let mut rng = c.rng("Thm3.2-pairs");
    let (lo, hi) = c.sdiam_factor_orders;
    let mut pairs: Vec<(Graph, Graph)> = (0..c.sdiam_pair_count)
        .map(|i| {
            let n = rng.random_range(lo.max(2)..=hi.max(2));
            let m = rng.random_range(lo.max(1)..=hi.max(1));
            let g = random_connected(&mut rng, n, c.edge_probability).with_name(format!("A{i}"));
            let h = random_graph(&mut rng, m, c.edge_probability).with_name(format!("B{i}"));
            (g, h)
        })
        .collect();
    pairs.extend([
        (families::complete(2), Graph::empty(2).with_name("2K1")),
        (families::path(4), families::path(2)),
        (families::cycle(4), families::complete(2)),
        (families::complete(3), families::path(3)),
    ]);
    product_sweep_groups(pairs, true, |n, m| (2..=n * m).collect(), |g, h, p, k, ctx| {
        let b = lex_sdiam_bounds(g, h, k, ctx)?;
        let exact = sdiam(p, k, ctx)?;
        let out = Outcome::bounds(b.corrected.lower, exact, b.corrected.upper);
        Ok(if exact > b.stated.upper {
            out.note(format!("exceeds the uncorrected upper bound {}", b.stated.upper))
        } else {
            out
        })
    })
}

fn ex3() -> Vec<Group> {
    let mut out = product_sweep_groups(
        [(5, 2), (4, 2), (6, 2), (4, 3), (5, 3)]
            .map(|(n, m)| (families::path(n), families::path(m)))
            .to_vec(),
        true,
        |n, m| (2..=(2 * m)).filter(|&k| k <= n.min(2 * m) || n.max(m + 1) <= k).collect(),
        |g, _, p, k, ctx| Ok(Outcome::equals(fin(g.order() + k - 3), sdiam(p, k, ctx)?)),
    );
    out.extend(product_sweep_groups(
        [(3, 2), (2, 3), (3, 3), (4, 2)]
            .map(|(n, m)| (families::complete(n), families::complete(m)))
            .to_vec(),
        true,
        |n, m| (2..=n.max(m)).collect(),
        |_, _, p, k, ctx| Ok(Outcome::equals(fin(k - 1), sdiam(p, k, ctx)?)),
    ));
    out
}

fn prop3_5(c: &CorpusSpec) -> Vec<Group> {
    let mut outer = vec![
        families::path(3),
        families::path(4),
        families::path(5),
        families::cycle(4),
        families::cycle(5),
        families::cycle(6),
        families::complete(2),
        families::complete(3),
        families::complete(4),
        families::star(4),
        families::spider(&[2, 1, 1]),
    ];
    let mut rng = c.rng("Prop3.5");
    outer.extend((0..4).map(|i| {
        let n = rng.random_range(3..=5);
        random_connected(&mut rng, n, c.edge_probability).with_name(format!("R{i}"))
    }));
    let inner = [
        families::path(2),
        families::path(3),
        families::complete(3),
        families::cycle(4),
        families::star(4),
    ];
    let pairs: Vec<(Graph, Graph)> =
        outer.iter().flat_map(|g| inner.iter().map(move |h| (g.clone(), h.clone()))).collect();
    product_sweep_groups(pairs, true, |_, _| vec![3], |g, h, p, k, ctx| {
        let form = sdiam3_lex_closed_form(g, h, ctx)?;
        let exact = sdiam(p, k, ctx)?;
        let note = match form.stated {
            Some(v) if v == form.corrected => format!("{:?}", form.case),
            Some(v) => format!("{:?}, uncorrected value {v}", form.case),
            None => format!("{:?}, uncorrected value undefined", form.case),
        };
        Ok(Outcome::equals(form.corrected, exact).note(note))
    })
}

fn prop4_1() -> Vec<Group> {
    let mut graphs: Vec<(Graph, Vec<usize>)> = Vec::new();
    for n in 2..=9 {
        let ks: Vec<usize> = (2..=n).collect();
        graphs.push((families::complete(n), ks.clone()));
        graphs.push((families::path(n), ks.clone()));
        if n >= 3 {
            graphs.push((families::cycle(n), ks));
        }
    }
    per_k(graphs, |g, k, ctx| {
        let n = g.order();
        let predicted = if g.is_complete() {
            k - 1
        } else if g.is_path() {
            n - 1
        } else {
            cycle_sdiam(n, k) as usize
        };
        Ok(Outcome::equals(fin(predicted), sdiam(g, k, ctx)?))
    })
}

/// Nonincreasing tuples with entries `≥ min`, length 2 to 4, product `≤ limit`.
fn tuples(min: usize, limit: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, min: usize, limit: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        if prefix.len() == 4 {
            return;
        }
        let product: usize = prefix.iter().product();
        let cap = prefix.last().copied().unwrap_or(limit / min);
        for next in min..=cap {
            if product * next <= limit {
                prefix.push(next);
                extend(prefix, min, limit, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), min, limit, &mut out);
    out.sort();
    out
}

fn name_tuple(prefix: &str, sym: &str, t: &[usize]) -> String {
    t.iter().map(|m| format!("{prefix}{m}")).collect::<Vec<_>>().join(sym)
}

/// Left-folded lexicographic product of the given factors.
fn lex_fold(factors: Vec<Graph>) -> Graph {
    let mut it = factors.into_iter();
    let first = it.next().expect("at least one factor");
    it.fold(first, |acc, f| lexicographic_product(&acc, &f).graph)
}

/// One group per graph; `bounds(k)` returns the predicted interval or an
/// explanatory note when only part of it applies.
fn bound_sweeps<F>(graphs: Vec<(Graph, Vec<usize>)>, bounds: F) -> Vec<Group>
where
    F: Fn(&Graph, usize) -> (Option<u32>, Option<u32>, Option<String>) + Send + Sync + Clone + 'static,
{
    per_k(graphs, move |g, k, ctx| {
        let (lo, hi, note) = bounds(g, k);
        let exact = sdiam(g, k, ctx)?;
        let out = Outcome::within(lo.map(Distance::Finite), exact, hi.map(Distance::Finite));
        Ok(match note {
            Some(n) => out.note(n),
            None => out,
        })
    })
}

fn ks_from(lo: usize, n: usize) -> Vec<usize> {
    (lo..=n).collect()
}

fn prop4_2(c: &CorpusSpec) -> Vec<Group> {
    let limit = c.family_order_limit;
    let mut grids = Vec::new();
    let mut lex = Vec::new();
    for n in 3..=limit / 3 {
        for m in 3..=limit / n {
            if n <= m {
                let g = families::generate(&FamilySpec::new(Family::Grid, vec![n, m])).expect("grid");
                grids.push((g.with_name(name_tuple("P", "□", &[n, m])), ks_from(3, n * m)));
            }
            let p = lexicographic_product(&families::path(n), &families::path(m)).graph;
            lex.push((p.with_name(name_tuple("P", "∘", &[n, m])), ks_from(3, n * m)));
        }
    }
    let dims = |g: &Graph| -> (u32, u32) {
        let t = parse_tuple(g.name());
        (t[0] as u32, t[1] as u32)
    };
    let mut out = bound_sweeps(grids, move |g, k| {
        let (n, m) = dims(g);
        let k = k as u32;
        (Some(n + m - 2), Some(n + m - 2 + (k - 3) * (n - 1).min(m - 1)), None)
    });
    out.extend(bound_sweeps(lex, move |g, k| {
        let (n, m) = dims(g);
        let k = k as u32;
        let lower = if k <= m { k - 1 } else { n - 1 };
        (Some(lower), Some(n + k - 3), None)
    }));
    out
}

fn prop4_3(c: &CorpusSpec) -> Vec<Group> {
    let mut meshes = Vec::new();
    let mut lex = Vec::new();
    for t in tuples(2, c.family_order_limit) {
        let total: usize = t.iter().product();
        let mesh = families::generate(&FamilySpec::new(Family::Mesh, t.clone())).expect("mesh");
        meshes.push((mesh.with_name(name_tuple("P", "□", &t)), ks_from(3, total)));
        let l = lex_fold(t.iter().map(|&m| families::path(m)).collect());
        lex.push((l.with_name(name_tuple("P", "∘", &t)), ks_from(3, total)));
    }
    let mut out = bound_sweeps(meshes, |g, k| {
        let t = parse_tuple(g.name());
        let (lo, hi) = mesh_bounds(&t, k);
        (Some(lo), Some(hi), None)
    });
    out.extend(bound_sweeps(lex, |g, k| {
        let t = parse_tuple(g.name());
        let rest: usize = t[1..].iter().sum();
        let k32 = k as u32;
        let mut lower = 0;
        if rest < k {
            lower = lower.max(t[0] as u32 - 1);
        }
        if k <= rest {
            lower = lower.max(k32 - 1);
        }
        (Some(lower), Some(t[0] as u32 + k32 - 2), None)
    }));
    out
}

/// Factor orders from a name such as `C5□C3` or `P4∘P2∘P2`.
fn parse_tuple(name: &str) -> Vec<usize> {
    name.split(['□', '∘'])
        .map(|s| s.trim_start_matches(['P', 'C', 'K']).parse().expect("factor order"))
        .collect()
}

fn prop4_4(c: &CorpusSpec) -> Vec<Group> {
    let mut tori = Vec::new();
    let mut lex = Vec::new();
    for t in tuples(3, c.family_order_limit) {
        let total: usize = t.iter().product();
        let torus = families::generate(&FamilySpec::new(Family::Torus, t.clone())).expect("torus");
        tori.push((torus.with_name(name_tuple("C", "□", &t)), ks_from(3, total)));
        let l = lex_fold(t.iter().map(|&m| families::cycle(m)).collect());
        lex.push((l.with_name(name_tuple("C", "∘", &t)), ks_from(3, total)));
    }
    let mut out = bound_sweeps(tori, |g, k| {
        let (lo, hi) = torus_bounds(&parse_tuple(g.name()), k);
        (Some(lo), Some(hi), None)
    });
    out.extend(bound_sweeps(lex, |g, k| {
        let t = parse_tuple(g.name());
        let (m1, rest) = (t[0], t[1..].iter().sum::<usize>());
        let k32 = k as u32;
        let upper = if k <= m1 { cycle_sdiam(m1, k) + k32 - 2 } else { m1 as u32 + k32 - 3 };
        let mut lower = 0;
        if rest < k {
            lower = lower.max(cycle_sdiam(m1, k));
        }
        if m1.max(rest) <= k {
            lower = lower.max(m1 as u32 - 1);
        }
        if k <= rest {
            lower = lower.max(k32 - 1);
        }
        (Some(lower), Some(upper), None)
    }));
    out
}

fn prop4_5(c: &CorpusSpec) -> Vec<Group> {
    let mut hamming = Vec::new();
    let mut lex = Vec::new();
    for t in tuples(2, c.family_order_limit) {
        let smallest = *t.last().expect("nonempty tuple");
        let g = families::generate(&FamilySpec::new(Family::Hamming, t.clone())).expect("hamming");
        hamming.push((g.with_name(name_tuple("K", "□", &t)), ks_from(2, smallest)));
        let l = lex_fold(t.iter().map(|&m| families::complete(m)).collect());
        lex.push((l.with_name(name_tuple("K", "∘", &t)), ks_from(2, smallest)));
    }
    let mut out = bound_sweeps(hamming, |g, k| {
        let r = parse_tuple(g.name()).len();
        let (lo, hi) = hamming_bounds(r, k);
        if k == 2 {
            let note = format!("upper bound {hi} is below the diameter at k = 2, lower bound only");
            (Some(lo), None, Some(note))
        } else {
            (Some(lo), Some(hi), None)
        }
    });
    out.extend(bound_sweeps(lex, |_, k| (Some(k as u32 - 1), Some(k as u32 - 1), None)));
    out
}

fn hp(n: usize) -> Graph {
    families::generate(&FamilySpec::new(Family::HyperPetersen, vec![n])).expect("HP_n")
}

fn hl(n: usize) -> Graph {
    families::generate(&FamilySpec::new(Family::HyperPetersenLex, vec![n])).expect("HL_n")
}

/// One group per `k` so the large sweeps spread across workers.
fn split_per_k(g: Graph, ks: std::ops::RangeInclusive<usize>, predict: fn(usize) -> (u32, u32)) -> Vec<Group> {
    ks.map(|k| {
        let g = g.clone();
        Box::new(move |rec: &mut Recorder<'_>| {
            let ctx = rec.ctx;
            rec.record(format!("{} k={k}", g.name()), || {
                let (lo, hi) = predict(k);
                Ok(Outcome::bounds(lo.into(), sdiam(&g, k, ctx)?, hi.into()))
            });
        }) as Group
    })
    .collect()
}

fn prop4_6_1() -> Vec<Group> {
    let value = |k| {
        let v = petersen_sdiam(k).expect("k in 3..=10");
        (v, v)
    };
    let mut out = split_per_k(hp(3), 3..=10, value);
    out.extend(split_per_k(hl(3), 3..=10, value));
    out
}

fn prop4_6_2() -> Vec<Group> {
    split_per_k(hl(4), 3..=20, |k| {
        let v = hl4_sdiam(k).expect("k in 3..=20");
        (v, v)
    })
}

fn prop4_6_3() -> Vec<Group> {
    split_per_k(hp(4), 3..=20, |k| hp4_bounds(k).expect("k in 3..=20"))
}
