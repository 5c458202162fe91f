//! Corpus-driven verification of every bound and closed form against exact
//! values.
//!
//! Each registered theorem id expands into groups of instances. Groups run
//! on the [`Executor`] and their reports are concatenated in group order, so
//! output does not depend on the worker count. An instance whose exact value
//! would exceed a solver guard is reported as `SKIPPED` with the reason.

mod corpus;
mod report;
mod table;
mod theorems;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Distance;
use crate::parallel::Executor;
use crate::sdiam::SweepContext;

pub use corpus::CorpusSpec;
pub use report::{reports_to_csv, reports_to_json, table_to_csv, table_to_json};
pub use table::{closed_form_table, TableRow};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail => f.write_str("FAIL"),
            Verdict::Skipped(reason) => write!(f, "SKIPPED: {reason}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn serialize_ms<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(millis(*d))
}

pub(crate) fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

/// One verified instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem_id: String,
    /// Graph names plus the terminal set or `k`.
    pub instance: String,
    pub lower: Option<Distance>,
    pub exact: Option<Distance>,
    pub upper: Option<Distance>,
    pub verdict: Verdict,
    #[serde(rename = "elapsed_ms", serialize_with = "serialize_ms")]
    pub elapsed: Duration,
}

/// A registered result.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremEntry {
    pub id: &'static str,
    pub summary: &'static str,
}

const fn entry(id: &'static str, summary: &'static str) -> TheoremEntry {
    TheoremEntry { id, summary }
}

/// Coverage index: one entry per checked result.
pub const THEOREMS: &[TheoremEntry] = &[
    entry("Thm1.3", "k-1 <= sdiam_k(G) <= n-1 for connected G"),
    entry("Obs1.1", "d_G(S) >= |S|-1"),
    entry("Obs1.2", "sdiam_k monotone under spanning subgraphs and in k"),
    entry("Lem2.1", "Cartesian pair distance is the sum of factor distances"),
    entry("Lem2.2", "d(S) >= d_G(S_G) + d_H(S_H) in G□H"),
    entry("Obs2.1", "a minimum three-terminal Steiner tree is a path or a subdivided claw"),
    entry("Thm2.1", "Cartesian Steiner distance between the sum and the r,t upper bound"),
    entry("Cor2.1", "coarse Cartesian upper bound d_G + d_H + min(r d_H, t d_G)"),
    entry("Cor2.2", "three terminals in G□H: d = d_G(S_G) + d_H(S_H)"),
    entry("Ex1.1", "three terminals: Cartesian lower and upper bounds coincide"),
    entry("Ex1.2", "P_n□K_{1,m-1} with 3x terminals reaches the upper bound n-1+2x"),
    entry("Rem1", "a 4-set in a tree□P_5 with d_G = d_H = 4 and d >= 9"),
    entry("Thm2.2", "Cartesian sdiam_k bounds, cases 1-4"),
    entry("Cor2.3", "sdiam_3(G□H) = sdiam_3(G) + sdiam_3(H)"),
    entry("Ex2.1", "k = 3: Cartesian sdiam bounds coincide"),
    entry("Ex2.2", "sdiam_4(P_n□P_m) = 2(n-1) + (m-1) for 5 <= n <= m"),
    entry("Lem3.1", "lexicographic pair distance"),
    entry("Lem3.2", "lexicographic pair distance is at least d_G(g,g')"),
    entry("Lem3.3", "d(S) >= d_G(S_G) in G∘H"),
    entry("Lem3.4", "distinct copies: d(S) = d_G(S_G) in G∘H"),
    entry("Thm3.1", "lexicographic Steiner distance closed form and mapped tree"),
    entry("Prop3.1", "three-terminal lexicographic case table, G possibly disconnected"),
    entry("Thm3.2", "lexicographic sdiam_k bounds"),
    entry("Ex3", "P_n∘H reaches n+k-3; K_n∘K_m gives k-1"),
    entry("Prop3.5", "sdiam_3(G∘H) closed form"),
    entry("Prop4.1", "sdiam_k of K_n, P_n and C_n"),
    entry("Prop4.2", "grid and P_n∘P_m sdiam_k bounds"),
    entry("Prop4.3", "mesh and iterated path lexicographic sdiam_k bounds"),
    entry("Prop4.4", "torus and iterated cycle lexicographic sdiam_k bounds"),
    entry("Prop4.5", "Hamming bounds and iterated complete lexicographic sdiam_k"),
    entry("Obs4.1", "k >= n - kappa + 1 implies sdiam_k = k-1"),
    entry("Prop4.6.1", "sdiam_k of HP_3 and HL_3 for k = 3..10"),
    entry("Prop4.6.2", "sdiam_k of HL_4 for k = 3..20"),
    entry("Prop4.6.3", "sdiam_k of HP_4 for k = 3..20"),
];

pub fn theorem_ids() -> impl Iterator<Item = &'static str> {
    THEOREMS.iter().map(|e| e.id)
}

pub fn lookup(id: &str) -> Result<&'static TheoremEntry> {
    THEOREMS
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Evaluated bounds for one instance, before timing and naming.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Outcome {
    lower: Option<Distance>,
    exact: Option<Distance>,
    upper: Option<Distance>,
    pass: bool,
    note: Option<String>,
}

impl Outcome {
    /// `lower ≤ exact ≤ upper`, with either side optional.
    pub(crate) fn within(lower: Option<Distance>, exact: Distance, upper: Option<Distance>) -> Self {
        let pass = lower.is_none_or(|l| l <= exact) && upper.is_none_or(|u| exact <= u);
        Outcome { lower, exact: Some(exact), upper, pass, note: None }
    }

    pub(crate) fn bounds(lower: Distance, exact: Distance, upper: Distance) -> Self {
        Outcome::within(Some(lower), exact, Some(upper))
    }

    /// `exact == predicted`, shown with both bounds at the prediction.
    pub(crate) fn equals(predicted: Distance, exact: Distance) -> Self {
        Outcome::bounds(predicted, exact, predicted)
    }

    /// Adds a side condition that must also hold.
    pub(crate) fn and(mut self, ok: bool) -> Self {
        self.pass &= ok;
        self
    }

    pub(crate) fn custom(lower: Option<Distance>, exact: Option<Distance>, upper: Option<Distance>, pass: bool) -> Self {
        Outcome { lower, exact, upper, pass, note: None }
    }

    /// Extra context appended to the instance descriptor.
    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Collects the reports of one instance group.
pub(crate) struct Recorder<'a> {
    id: &'static str,
    pub(crate) ctx: &'a SweepContext,
    rows: Vec<BoundReport>,
}

impl<'a> Recorder<'a> {
    pub(crate) fn record(&mut self, instance: impl Into<String>, check: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let mut instance = instance.into();
        let row = match outcome {
            Ok(o) => BoundReport {
                theorem_id: self.id.to_string(),
                instance: match o.note {
                    Some(note) => {
                        instance.push_str(" [");
                        instance.push_str(&note);
                        instance.push(']');
                        instance
                    }
                    None => instance,
                },
                lower: o.lower,
                exact: o.exact,
                upper: o.upper,
                verdict: if o.pass { Verdict::Pass } else { Verdict::Fail },
                elapsed,
            },
            Err(e) => BoundReport {
                theorem_id: self.id.to_string(),
                instance,
                lower: None,
                exact: None,
                upper: None,
                verdict: Verdict::Skipped(e.to_string()),
                elapsed,
            },
        };
        self.rows.push(row);
    }
}

pub(crate) type Group = Box<dyn Fn(&mut Recorder<'_>) + Send + Sync>;

/// Checks one theorem over the corpus. Reports come back in instance order.
pub fn verify_theorem(id: &str, corpus: &CorpusSpec, executor: &Executor) -> Result<Vec<BoundReport>> {
    let entry = lookup(id)?;
    let groups = theorems::groups(entry.id, corpus);
    let ctx = SweepContext::new(corpus.solver_config(), executor.clone());
    let chunks = executor.map(groups.len(), |i| {
        let mut rec = Recorder { id: entry.id, ctx: &ctx, rows: Vec::new() };
        groups[i](&mut rec);
        rec.rows
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// [`verify_theorem`] for every registered id, in registry order.
pub fn verify_all(corpus: &CorpusSpec, executor: &Executor) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    for id in theorem_ids() {
        out.extend(verify_theorem(id, corpus, executor)?);
    }
    Ok(out)
}

/// Zeroes every elapsed field, leaving the deterministic part of a report.
pub fn strip_timing(reports: &mut [BoundReport]) {
    for r in reports {
        r.elapsed = Duration::ZERO;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_coverage_list() {
        let expected = [
            "Thm1.3", "Obs1.1", "Obs1.2", "Lem2.1", "Lem2.2", "Obs2.1", "Thm2.1", "Cor2.1",
            "Cor2.2", "Ex1.1", "Ex1.2", "Rem1", "Thm2.2", "Cor2.3", "Ex2.1", "Ex2.2", "Lem3.1",
            "Lem3.2", "Lem3.3", "Lem3.4", "Thm3.1", "Prop3.1", "Thm3.2", "Ex3", "Prop3.5",
            "Prop4.1", "Prop4.2", "Prop4.3", "Prop4.4", "Prop4.5", "Obs4.1", "Prop4.6.1",
            "Prop4.6.2", "Prop4.6.3",
        ];
        assert_eq!(theorem_ids().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn unknown_id_is_an_error() {
        let err = verify_theorem("Thm9.9", &CorpusSpec::default(), &Executor::sequential());
        assert_eq!(err.unwrap_err(), Error::UnknownTheorem("Thm9.9".into()));
        assert_eq!(lookup("cor2.2").unwrap().id, "Cor2.2");
    }

    #[test]
    fn verdict_text() {
        assert_eq!(Verdict::Pass.to_string(), "PASS");
        assert_eq!(Verdict::Skipped("guard".into()).to_string(), "SKIPPED: guard");
    }

    #[test]
    fn outcome_rules() {
        let d = Distance::Finite;
        assert!(Outcome::bounds(d(2), d(3), d(3)).pass);
        assert!(!Outcome::bounds(d(2), d(4), d(3)).pass);
        assert!(!Outcome::equals(d(3), d(2)).pass);
        assert!(Outcome::within(None, d(9), Some(d(9))).pass);
        assert!(!Outcome::within(Some(d(1)), d(2), None).and(false).pass);
    }
}
