//! Acceptance suite: eleven criteria, one PASS/FAIL line each.
//!
//! Values are compared exactly. Each criterion also carries a wall-clock
//! budget; exceeding it fails the criterion.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use steiner_core::bounds::{
    build_cartesian_tree, build_lexicographic_tree, cartesian_terms, lex_distance_closed_form, lex_sdiam_bounds,
};
use steiner_core::families::{self, Family, FamilySpec};
use steiner_core::sdiam::{steiner_k_diameter, Sweep, SweepContext};
use steiner_core::steiner::{is_steiner_tree, steiner_distance, steiner_distance_oracle};
use steiner_core::verify::{self, closed_form_table, BoundReport, CorpusSpec, Verdict};
use steiner_core::{
    cartesian_product, lexicographic_product, Distance, Executor, Graph, ProductVertex, VertexMultiset,
};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn run(id: &str, corpus: &CorpusSpec) -> std::result::Result<Vec<BoundReport>, String> {
    verify::verify_theorem(id, corpus, &Executor::default()).map_err(|e| e.to_string())
}

/// Every row PASS; returns the row count.
fn all_pass(id: &str, rows: &[BoundReport]) -> std::result::Result<usize, String> {
    ensure!(!rows.is_empty(), "{id}: no rows");
    if let Some(bad) = rows.iter().find(|r| !r.verdict.is_pass()) {
        return Err(format!(
            "{id}: {} on {} (lower {:?}, exact {:?}, upper {:?})",
            bad.verdict, bad.instance, bad.lower, bad.exact, bad.upper
        ));
    }
    Ok(rows.len())
}

fn fin(v: u32) -> Distance {
    Distance::Finite(v)
}

fn sdiam(g: &Graph, k: usize) -> std::result::Result<Distance, String> {
    steiner_k_diameter(g, k).map(|r| r.value).map_err(|e| e.to_string())
}

fn primitive_closed_forms() -> Check {
    let rows = run("Prop4.1", &CorpusSpec::default())?;
    let n = all_pass("Prop4.1", &rows)?;
    // K_n, P_n, C_n for every n <= 9 and 2 <= k <= n
    let mut direct = 0;
    for n in 2..=9usize {
        for k in 2..=n {
            ensure!(sdiam(&families::complete(n), k)? == fin(k as u32 - 1), "K{n} k={k}");
            ensure!(sdiam(&families::path(n), k)? == fin(n as u32 - 1), "P{n} k={k}");
            if n >= 3 {
                ensure!(sdiam(&families::cycle(n), k)? == fin((n * (k - 1) / k) as u32), "C{n} k={k}");
            }
            direct += 1;
        }
    }
    Ok(format!("{n} harness rows, {direct} (n,k) pairs checked directly"))
}

fn cartesian_three_sets() -> Check {
    let rows = run("Cor2.2", &CorpusSpec::default())?;
    let n = all_pass("Cor2.2", &rows)?;
    let mut per_pair: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &rows {
        let pair = r.instance.split(' ').next().unwrap_or_default();
        *per_pair.entry(pair).or_default() += 1;
    }
    ensure!(per_pair.len() == 200, "{} pairs, want 200", per_pair.len());
    let fewest = per_pair.values().copied().min().unwrap_or(0);
    ensure!(fewest >= 50, "a pair has only {fewest} sets");
    let p3 = families::path(3);
    let d = sdiam(&cartesian_product(&p3, &p3).graph, 3)?;
    ensure!(d == fin(4), "sdiam_3(P3□P3) = {d}, want 4");
    Ok(format!("{n} sets over {} pairs (min {fewest} per pair), sdiam_3(P3□P3) = 4", per_pair.len()))
}

fn sandwich() -> Check {
    let corpus = CorpusSpec::default();
    ensure!(corpus.sandwich_sizes == [4, 5], "sizes {:?}", corpus.sandwich_sizes);
    let rows = run("Thm2.1", &corpus)?;
    let n = all_pass("Thm2.1", &rows)?;
    ensure!(n == 200 * 2 * corpus.sandwich_sets_per_pair, "{n} rows");
    Ok(format!("{n} sets with |S| in {{4,5}}, zero violations"))
}

fn remark_gap() -> Check {
    let rows = run("Rem1", &CorpusSpec::default())?;
    all_pass("Rem1", &rows)?;
    let exact = rows[0].exact.ok_or("no exact value")?;
    ensure!(exact >= fin(9), "largest value {exact}");
    Ok(format!("{}: max {exact}", rows[0].instance))
}

fn example_one() -> Check {
    let (g, h) = (families::path(5), families::star(3));
    let p = cartesian_product(&g, &h);
    // rows 0..=2 and 4, each with both leaves and the centre of the star
    let s: Vec<ProductVertex> =
        [0, 1, 2, 4].into_iter().flat_map(|i| [1, 2, 0].map(|j| ProductVertex::new(i, j))).collect();
    ensure!(s.len() == 12, "{} terminals", s.len());
    let ids = p.terminal_ids(&s).map_err(|e| e.to_string())?;
    let ctx = SweepContext::default();
    let sweep = Sweep::new(&p.graph, &ctx).map_err(|e| e.to_string())?;
    let exact = sweep.steiner(&ids).map_err(|e| e.to_string())?;
    let upper = cartesian_terms(&g, &h, &s).map_err(|e| e.to_string())?.upper();
    ensure!(exact.distance == fin(12), "exact {}", exact.distance);
    ensure!(upper == 12, "upper bound {upper}");
    ensure!(is_steiner_tree(&p.graph, &exact.tree_edges, &ids), "invalid tree");
    Ok("exact 12 = upper bound 12".into())
}

fn example_two() -> Check {
    let p5 = families::path(5);
    let d = sdiam(&cartesian_product(&p5, &p5).graph, 4)?;
    ensure!(d == fin(12), "sdiam_4(P5□P5) = {d}");
    Ok("sdiam_4(P5□P5) = 12".into())
}

fn lexicographic_closed_forms() -> Check {
    let corpus = CorpusSpec::default();
    let rows = run("Thm3.1", &corpus)?;
    let n = all_pass("Thm3.1", &rows)?;
    ensure!(n == 200, "{n} instances");
    let cases = run("Prop3.1", &corpus)?;
    all_pass("Prop3.1", &cases)?;
    let mut counts = [0usize; 5];
    for r in &cases {
        for (i, c) in counts.iter_mut().enumerate() {
            if r.instance.ends_with(&format!("[case {}]", i + 1)) {
                *c += 1;
            }
        }
    }
    ensure!(counts.iter().all(|&c| c >= 10), "case counts {counts:?}");
    Ok(format!("{n} instances, three-terminal cases {counts:?}"))
}

fn example_three() -> Check {
    let (g, h) = (families::path(5), families::path(2));
    let d = sdiam(&lexicographic_product(&g, &h).graph, 4)?;
    let b = lex_sdiam_bounds(&g, &h, 4, &SweepContext::default()).map_err(|e| e.to_string())?;
    ensure!(d == fin(6), "sdiam_4(P5∘P2) = {d}");
    ensure!(b.stated.upper == fin(5 + 4 - 3), "upper bound {}", b.stated.upper);
    Ok("sdiam_4(P5∘P2) = 6 = n+k-3".into())
}

fn petersen_tables() -> Check {
    let ctx = SweepContext::default();
    let table = |family: Family, params: Vec<usize>, lo: usize, hi: usize| {
        closed_form_table(&FamilySpec::new(family, params), lo..=hi, &ctx).map_err(|e| e.to_string())
    };
    let computed = |rows: &[verify::TableRow]| -> Vec<u32> {
        rows.iter().map(|r| r.computed.and_then(|d| d.value()).unwrap_or(u32::MAX)).collect()
    };
    let petersen = table(Family::Petersen, vec![], 3, 10)?;
    ensure!(computed(&petersen) == [4, 5, 5, 6, 7, 7, 8, 9], "Petersen {:?}", computed(&petersen));
    let hl4 = table(Family::HyperPetersenLex, vec![4], 3, 20)?;
    let want: Vec<u32> = (3..=20u32).map(|k| if k <= 7 { k } else { k - 1 }).collect();
    ensure!(computed(&hl4) == want, "HL4 {:?}", computed(&hl4));
    let hp4 = table(Family::HyperPetersen, vec![4], 3, 16)?;
    let values = computed(&hp4);
    ensure!(values[0] == 5, "sdiam_3(HP4) = {}", values[0]);
    for (k, &v) in (4..=16u32).zip(&values[1..]) {
        ensure!(k - 1 <= v && v <= 9 + k / 2, "HP4 k={k}: {v} outside [{}, {}]", k - 1, 9 + k / 2);
    }
    for rows in [&petersen, &hl4, &hp4] {
        ensure!(rows.iter().all(|r| r.verdict == Verdict::Pass), "table verdicts");
    }
    Ok(format!("HP4 k=3..16: {values:?}"))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let p = rng.random_range(0.2..0.8);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::new(n, edges).expect("simple graph")
}

fn oracle_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut infinite = 0;
    for i in 0..500 {
        let n = rng.random_range(1..=12);
        let g = random_graph(&mut rng, n);
        let size = rng.random_range(1..=5);
        let s: Vec<usize> = (0..size).map(|_| rng.random_range(0..n)).collect();
        let s = VertexMultiset::new(s).map_err(|e| e.to_string())?;
        let dp = steiner_distance(&g, &s).map_err(|e| e.to_string())?;
        let oracle = steiner_distance_oracle(&g, &s).map_err(|e| e.to_string())?;
        ensure!(dp.distance == oracle.distance, "instance {i}: DP {} vs oracle {}", dp.distance, oracle.distance);
        if dp.distance.is_finite() {
            for tree in [&dp.tree_edges, &oracle.tree_edges] {
                ensure!(is_steiner_tree(&g, tree, &s.support()), "instance {i}: invalid tree");
                ensure!(Distance::from(tree.len()) == dp.distance, "instance {i}: tree size");
            }
        } else {
            infinite += 1;
        }
    }
    Ok(format!("500 instances agree ({infinite} with infinite distance)"))
}

fn builders(rng: &mut ChaCha8Rng) -> std::result::Result<usize, String> {
    let mut checked = 0;
    while checked < 200 {
        let (n, m) = (rng.random_range(2..=6), rng.random_range(2..=6));
        let (g, h) = (random_graph(rng, n), random_graph(rng, m));
        if !g.is_connected() {
            continue;
        }
        let k = rng.random_range(3..=6.min(n * m));
        let mut ids: Vec<usize> = (0..n * m).collect();
        for i in 0..k {
            let j = rng.random_range(i..n * m);
            ids.swap(i, j);
        }
        let s: Vec<ProductVertex> = ids[..k].iter().map(|&v| ProductVertex::decode(v, m)).collect();
        let lex = lexicographic_product(&g, &h);
        let t = build_lexicographic_tree(&g, &h, &s).map_err(|e| e.to_string())?;
        let closed = lex_distance_closed_form(&g, &h, &s).map_err(|e| e.to_string())?;
        let terminals = lex.terminal_ids(&s).map_err(|e| e.to_string())?;
        ensure!(is_steiner_tree(&lex.graph, &t.tree_edges, &terminals), "lex tree on {}", lex.graph.name());
        ensure!(Distance::from(t.tree_edges.len()) == closed.value, "lex tree size");
        if h.is_connected() {
            let cart = cartesian_product(&g, &h);
            let t = build_cartesian_tree(&g, &h, &s).map_err(|e| e.to_string())?;
            let upper = cartesian_terms(&g, &h, &s).map_err(|e| e.to_string())?.upper();
            let terminals = cart.terminal_ids(&s).map_err(|e| e.to_string())?;
            ensure!(is_steiner_tree(&cart.graph, &t.tree_edges, &terminals), "Cartesian tree");
            ensure!(t.tree_edges.len() as u32 <= upper, "Cartesian tree exceeds {upper}");
        }
        checked += 1;
    }
    Ok(checked)
}

fn invariant_suites() -> Check {
    let corpus = CorpusSpec::default();
    let mut total = 0;
    for id in ["Thm1.3", "Obs1.1", "Obs1.2", "Obs4.1", "Obs2.1"] {
        total += all_pass(id, &run(id, &corpus)?)?;
    }
    let extra = builders(&mut ChaCha8Rng::seed_from_u64(11))?;
    Ok(format!("{total} harness rows, {extra} extra builder instances"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("primitive closed forms", Duration::from_secs(5), primitive_closed_forms),
        ("Cartesian three-terminal sets", Duration::from_secs(60), cartesian_three_sets),
        ("Cartesian sandwich bounds", Duration::from_secs(120), sandwich),
        ("Cartesian bound gap", Duration::from_secs(120), remark_gap),
        ("Cartesian upper bound attained", Duration::from_secs(60), example_one),
        ("sdiam_4 of the 5x5 grid", Duration::from_secs(60), example_two),
        ("lexicographic closed forms", Duration::from_secs(120), lexicographic_closed_forms),
        ("sdiam_4 of P5∘P2", Duration::from_secs(10), example_three),
        ("Petersen family tables", Duration::from_secs(600), petersen_tables),
        ("DP against superset oracle", Duration::from_secs(60), oracle_equivalence),
        ("invariant suites", Duration::from_secs(300), invariant_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > budget {
                Err(format!("{detail}; took {elapsed:.1?}, budget {budget:?}"))
            } else {
                Ok(detail)
            }
        });
        let line = match &result {
            Ok(detail) => format!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1)
            }
        };
        // straight to the process stdout so the lines survive output capture
        let mut out = std::io::stdout().lock();
        writeln!(out, "{line}").and_then(|_| out.flush()).expect("write to stdout");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
