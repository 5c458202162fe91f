use steiner_core::verify::{self, reports_to_csv, strip_timing, BoundReport, CorpusSpec};
use steiner_core::Executor;

const SAMPLE: [&str; 5] = ["Cor2.2", "Thm2.2", "Prop3.1", "Thm3.2", "Prop4.6.1"];

fn csv(id: &str, corpus: &CorpusSpec, executor: &Executor) -> String {
    let mut rows: Vec<BoundReport> = verify::verify_theorem(id, corpus, executor).unwrap();
    strip_timing(&mut rows);
    reports_to_csv(&rows).unwrap()
}

#[test]
fn same_seed_same_report() {
    let corpus = CorpusSpec::with_seed(3);
    let seq = Executor::sequential();
    for id in SAMPLE {
        assert_eq!(csv(id, &corpus, &seq), csv(id, &corpus, &seq), "{id}");
    }
}

#[test]
fn worker_count_does_not_change_reports() {
    let corpus = CorpusSpec::default();
    for id in SAMPLE {
        assert_eq!(
            csv(id, &corpus, &Executor::sequential()),
            csv(id, &corpus, &Executor::with_jobs(4)),
            "{id}"
        );
    }
}

#[test]
fn seed_changes_random_instances() {
    let seq = Executor::sequential();
    assert_ne!(
        csv("Cor2.2", &CorpusSpec::with_seed(1), &seq),
        csv("Cor2.2", &CorpusSpec::with_seed(2), &seq)
    );
}

#[test]
fn other_seeds_pass_too() {
    let seq = Executor::sequential();
    for seed in [1, 2] {
        let corpus = CorpusSpec::with_seed(seed);
        for id in ["Cor2.2", "Thm2.1", "Thm3.1", "Thm3.2", "Prop3.5"] {
            let rows = verify::verify_theorem(id, &corpus, &seq).unwrap();
            let bad: Vec<_> = rows.iter().filter(|r| !r.verdict.is_pass()).map(|r| &r.instance).collect();
            assert!(bad.is_empty(), "{id} seed {seed}: {bad:?}");
        }
    }
}

#[test]
fn every_registered_id_produces_rows() {
    // small corpus: this only checks the wiring
    let corpus = CorpusSpec {
        pair_count: 3,
        graph_count: 3,
        lex_instance_count: 5,
        lex_case_quota: 1,
        sdiam_pair_count: 2,
        family_order_limit: 12,
        max_subsets: 20_000,
        ..CorpusSpec::default()
    };
    for id in verify::theorem_ids() {
        let rows = verify::verify_theorem(id, &corpus, &Executor::default()).unwrap();
        assert!(!rows.is_empty(), "{id}");
        assert!(rows.iter().all(|r| r.theorem_id == id), "{id}");
        assert!(rows.iter().all(|r| !r.verdict.is_fail()), "{id}");
    }
}
