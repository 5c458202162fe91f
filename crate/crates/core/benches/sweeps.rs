use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use steiner_core::families::{self, Family, FamilySpec};
use steiner_core::sdiam::{Sweep, SweepContext};
use steiner_core::verify::{verify_theorem, CorpusSpec};
use steiner_core::{cartesian_product, Executor, SolverConfig};

fn executors() -> [(&'static str, Executor); 2] {
    [("sequential", Executor::sequential()), ("parallel", Executor::default())]
}

fn sdiam_sweeps(c: &mut Criterion) {
    let p5 = families::path(5);
    let cases = [
        ("P5□P5 k=4", cartesian_product(&p5, &p5).graph, 4),
        ("petersen k=5", families::petersen(), 5),
        (
            "HP4 k=6",
            FamilySpec::new(Family::HyperPetersen, vec![4]).generate().unwrap(),
            6,
        ),
    ];
    let mut group = c.benchmark_group("sdiam");
    group.sample_size(10);
    for (name, g, k) in &cases {
        for (label, executor) in executors() {
            let ctx = SweepContext::new(SolverConfig::default(), executor);
            group.bench_with_input(BenchmarkId::new(label, name), k, |b, &k| {
                b.iter(|| Sweep::new(g, &ctx).unwrap().diameter(black_box(k)).unwrap())
            });
        }
    }
    group.finish();
}

fn verify_runs(c: &mut Criterion) {
    let corpus = CorpusSpec::default();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for id in ["Cor2.2", "Thm3.1"] {
        for (label, executor) in executors() {
            group.bench_function(BenchmarkId::new(label, id), |b| {
                b.iter(|| verify_theorem(black_box(id), &corpus, &executor).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sdiam_sweeps, verify_runs);
criterion_main!(benches);
