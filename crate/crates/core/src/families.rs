//! Deterministic generators for the named graph families.
//!
//! Labelings:
//!
//! * `path n`: `0 - 1 - ... - (n-1)`. `cycle n` adds `(n-1) - 0`.
//! * `complete n`: vertices `0..n`.
//! * `star n`: centre 0 and leaves `1..n`, so `K_{1,n-1}` of order `n`.
//! * `hypercube d`: bit strings of length `d`, adjacent when they differ in
//!   one bit. `Q_0` is a single vertex.
//! * `petersen`: outer 5-cycle `0..5`, inner pentagram `5..10` (`5+i` joined
//!   to `5+(i+2) mod 5`), spokes `i - (i+5)`.
//! * `grid n m`, `mesh m1 .. mr`, `torus m1 .. mr`, `hamming m1 .. mr`:
//!   left-folded Cartesian products of paths, paths, cycles and complete
//!   graphs, with the row-major product encoding at every step.
//! * `hyper_petersen n`: `Q_{n-3} □ Petersen`; `hyper_petersen_lex n`:
//!   `Q_{n-3} ∘ Petersen`. Vertex `(q, p)` has id `10 q + p`.
//! * `spider l1 .. lr`: centre 0, then each leg in turn, numbered outwards.
//!   The legs are given by their lengths, so `spider 2 1 1` is the five-vertex
//!   tree with degree sequence (3, 2, 1, 1, 1).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products::{cartesian_product, lexicographic_product};

/// Generated graphs are capped at this many vertices.
pub const MAX_FAMILY_ORDER: usize = 1 << 16;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Hypercube,
    Petersen,
    Grid,
    Mesh,
    Torus,
    Hamming,
    HyperPetersen,
    HyperPetersenLex,
    Spider,
}

impl Family {
    pub const ALL: [Family; 13] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Star,
        Family::Hypercube,
        Family::Petersen,
        Family::Grid,
        Family::Mesh,
        Family::Torus,
        Family::Hamming,
        Family::HyperPetersen,
        Family::HyperPetersenLex,
        Family::Spider,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Hypercube => "hypercube",
            Family::Petersen => "petersen",
            Family::Grid => "grid",
            Family::Mesh => "mesh",
            Family::Torus => "torus",
            Family::Hamming => "hamming",
            Family::HyperPetersen => "hyper_petersen",
            Family::HyperPetersenLex => "hyper_petersen_lex",
            Family::Spider => "spider",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, params: Vec<usize>) -> Self {
        FamilySpec { family, params }
    }

    pub fn parse(family: &str, params: &[usize]) -> Result<Self> {
        let spec = FamilySpec::new(family.parse()?, params.to_vec());
        spec.validate()?;
        Ok(spec)
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidFamilyParams {
            family: self.family.name().to_string(),
            reason: reason.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.params.len() != n {
            return Err(self.invalid(format!("expected {n} parameter(s), got {}", self.params.len())));
        }
        Ok(())
    }

    fn nonempty(&self) -> Result<()> {
        if self.params.is_empty() {
            return Err(self.invalid("expected at least one parameter"));
        }
        Ok(())
    }

    fn at_least(&self, min: usize) -> Result<()> {
        match self.params.iter().find(|&&p| p < min) {
            Some(p) => Err(self.invalid(format!("parameter {p} is below the minimum {min}"))),
            None => Ok(()),
        }
    }

    /// Order of the generated graph, or `None` on overflow.
    fn order(&self) -> Option<usize> {
        let p = &self.params;
        match self.family {
            Family::Path | Family::Cycle | Family::Complete | Family::Star => Some(p[0]),
            Family::Hypercube => 1usize.checked_shl(p[0].try_into().ok()?),
            Family::Petersen => Some(10),
            Family::Grid | Family::Mesh | Family::Torus | Family::Hamming => {
                p.iter().try_fold(1usize, |acc, &x| acc.checked_mul(x))
            }
            Family::HyperPetersen | Family::HyperPetersenLex => {
                1usize.checked_shl((p[0] - 3).try_into().ok()?)?.checked_mul(10)
            }
            Family::Spider => p.iter().try_fold(1usize, |acc, &x| acc.checked_add(x)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            Family::Path | Family::Complete => {
                self.arity(1)?;
                self.at_least(1)?;
            }
            Family::Cycle => {
                self.arity(1)?;
                self.at_least(3)?;
            }
            Family::Star => {
                self.arity(1)?;
                self.at_least(2)?;
            }
            Family::Hypercube => self.arity(1)?,
            Family::Petersen => self.arity(0)?,
            Family::Grid => {
                self.arity(2)?;
                self.at_least(1)?;
            }
            Family::Mesh | Family::Hamming | Family::Spider => {
                self.nonempty()?;
                self.at_least(1)?;
            }
            Family::Torus => {
                self.nonempty()?;
                self.at_least(3)?;
            }
            Family::HyperPetersen | Family::HyperPetersenLex => {
                self.arity(1)?;
                self.at_least(3)?;
            }
        }
        match self.order() {
            Some(n) if n <= MAX_FAMILY_ORDER => Ok(()),
            _ => Err(self.invalid(format!("graph would exceed {MAX_FAMILY_ORDER} vertices"))),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        let p = &self.params;
        Ok(match self.family {
            Family::Path => path(p[0]),
            Family::Cycle => cycle(p[0]),
            Family::Complete => complete(p[0]),
            Family::Star => star(p[0]),
            Family::Hypercube => hypercube(p[0]),
            Family::Petersen => petersen(),
            Family::Grid | Family::Mesh => fold(p, path),
            Family::Torus => fold(p, cycle),
            Family::Hamming => fold(p, complete),
            Family::HyperPetersen => cartesian_product(&hypercube(p[0] - 3), &petersen())
                .graph
                .with_name(format!("HP{}", p[0])),
            Family::HyperPetersenLex => lexicographic_product(&hypercube(p[0] - 3), &petersen())
                .graph
                .with_name(format!("HL{}", p[0])),
            Family::Spider => spider(p),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.generate()
}

fn build(order: usize, edges: impl IntoIterator<Item = (usize, usize)>, name: String) -> Graph {
    Graph::new(order, edges).expect("generator emits a simple graph").with_name(name)
}

pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)), format!("P{n}"))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)), format!("C{n}"))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))), format!("K{n}"))
}

pub fn star(n: usize) -> Graph {
    assert!(n >= 2, "a star needs a centre and a leaf");
    build(n, (1..n).map(|v| (0, v)), format!("K1,{}", n - 1))
}

pub fn hypercube(d: usize) -> Graph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|u| (0..d).map(move |b| (u, u ^ (1 << b)))).filter(|&(u, v)| u < v);
    build(n, edges, format!("Q{d}"))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner), "Petersen".into())
}

pub fn spider(legs: &[usize]) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    let label: Vec<String> = legs.iter().map(|l| l.to_string()).collect();
    build(next, edges, format!("S({})", label.join(",")))
}

fn fold(params: &[usize], factor: fn(usize) -> Graph) -> Graph {
    let mut g = factor(params[0]);
    for &p in &params[1..] {
        g = cartesian_product(&g, &factor(p)).graph;
    }
    g
}
