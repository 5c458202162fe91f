//! Closed forms and bounds for Steiner distances and Steiner k-diameters of
//! Cartesian and lexicographic products, plus constructive witness trees.

mod cartesian;
mod lexicographic;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph};
use crate::products::ProductVertex;
use crate::steiner::{steiner_distance, SteinerResult, VertexMultiset};

pub use cartesian::{
    build_cartesian_tree, cartesian_distance_bounds, cartesian_sdiam_bounds, cartesian_terms,
    CartesianTerms,
};
pub use lexicographic::{
    build_lexicographic_tree, lex_distance_closed_form, lex_distance_k3, lex_sdiam_bounds,
    sdiam3_lex_closed_form, LexClosedForm, LexK3Case, LexSdiamBounds, Sdiam3Lex, Sdiam3LexCase,
};

/// Fewest distinct elements left after deleting three elements (counted with
/// multiplicity) from a multiset of size `k ≥ 3`. Always in `0..=k-3`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DropParameter {
    pub value: usize,
}

/// Enumerates every way of spreading the three deletions over the distinct
/// elements, which covers every choice of three positions up to symmetry.
pub fn drop3_parameter(s: &VertexMultiset) -> Result<DropParameter> {
    if s.len() < 3 {
        return Err(Error::MultisetTooSmall { needed: 3, got: s.len() });
    }
    let counts: Vec<usize> = s.multiplicities().into_values().collect();
    let classes = counts.len();
    let mut best = classes;
    // (class, deletions left, classes emptied so far)
    let mut stack = vec![(0usize, 3usize, 0usize)];
    while let Some((i, left, emptied)) = stack.pop() {
        if left == 0 {
            best = best.min(classes - emptied);
            continue;
        }
        if i == classes {
            continue;
        }
        for take in 0..=left.min(counts[i]) {
            let gone = usize::from(take == counts[i]);
            stack.push((i + 1, left - take, emptied + gone));
        }
    }
    Ok(DropParameter { value: best })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundPair {
    pub lower: Distance,
    pub upper: Distance,
}

impl BoundPair {
    pub fn new(lower: Distance, upper: Distance) -> Self {
        BoundPair { lower, upper }
    }

    pub fn exact(value: Distance) -> Self {
        BoundPair::new(value, value)
    }

    /// The common value when both bounds coincide.
    pub fn value(&self) -> Option<Distance> {
        (self.lower == self.upper).then_some(self.lower)
    }

    pub fn contains(&self, d: Distance) -> bool {
        self.lower <= d && d <= self.upper
    }
}

impl fmt::Display for BoundPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "[{}, {}]", self.lower, self.upper),
        }
    }
}

/// Bounds together with the theorem clause that produced them.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseBounds {
    pub case: u8,
    pub bounds: BoundPair,
}

fn check_connected(g: &Graph, which: &'static str) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::FactorDisconnected(which))
    }
}

fn check_product_set(s: &[ProductVertex], n: usize, m: usize) -> Result<()> {
    for v in s {
        if v.g >= n {
            return Err(Error::VertexOutOfRange { vertex: v.g, order: n });
        }
        if v.h >= m {
            return Err(Error::VertexOutOfRange { vertex: v.h, order: m });
        }
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateTerminal(w[0].g, w[0].h));
    }
    Ok(())
}

/// Minimum Steiner tree of the support of `coords` in `g`.
fn factor_tree(g: &Graph, coords: &[usize]) -> Result<SteinerResult> {
    steiner_distance(g, &VertexMultiset::new(coords.to_vec())?)
}

fn sum(a: Distance, b: u64) -> Distance {
    match a {
        Distance::Finite(v) => Distance::Finite((v as u64 + b) as u32),
        Distance::Infinite => Distance::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[usize]) -> VertexMultiset {
        VertexMultiset::new(v.to_vec()).unwrap()
    }

    /// Deletes every triple of positions.
    fn drop3_by_positions(s: &[usize]) -> usize {
        let k = s.len();
        let mut best = usize::MAX;
        for a in 0..k {
            for b in a + 1..k {
                for c in b + 1..k {
                    let mut rest: Vec<usize> = (0..k)
                        .filter(|&i| i != a && i != b && i != c)
                        .map(|i| s[i])
                        .collect();
                    rest.sort_unstable();
                    rest.dedup();
                    best = best.min(rest.len());
                }
            }
        }
        best
    }

    #[test]
    fn drop3_examples() {
        assert_eq!(drop3_parameter(&ms(&[0, 1, 2, 3, 4])).unwrap().value, 2);
        let blocks: Vec<usize> = (0..4).flat_map(|b| [b; 3]).collect();
        assert_eq!(drop3_parameter(&ms(&blocks)).unwrap().value, 3);
        let hs: Vec<usize> = (0..3).flat_map(|h| [h; 4]).collect();
        assert_eq!(drop3_parameter(&ms(&hs)).unwrap().value, 3);
        assert_eq!(drop3_parameter(&ms(&[5, 5, 5])).unwrap().value, 0);
        for k in 4..9 {
            assert_eq!(drop3_parameter(&ms(&vec![5; k])).unwrap().value, 1);
        }
        assert!(matches!(
            drop3_parameter(&ms(&[1, 2])),
            Err(Error::MultisetTooSmall { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn drop3_matches_position_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..400 {
            let k = rng.random_range(3..=10);
            let alphabet = rng.random_range(1..=6);
            let s: Vec<usize> = (0..k).map(|_| rng.random_range(0..alphabet)).collect();
            let got = drop3_parameter(&ms(&s)).unwrap().value;
            assert_eq!(got, drop3_by_positions(&s), "{s:?}");
            assert!(got <= k - 3);
        }
    }

    #[test]
    fn bound_pair_display() {
        let b = BoundPair::new(Distance::Finite(8), Distance::Finite(12));
        assert_eq!(b.to_string(), "[8, 12]");
        assert!(b.contains(Distance::Finite(12)) && !b.contains(Distance::Finite(13)));
        assert_eq!(BoundPair::exact(Distance::Finite(4)).to_string(), "4");
    }
}
