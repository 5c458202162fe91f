//! Steiner k-eccentricity, k-radius and k-diameter by sweeping all k-subsets.
//!
//! Subsets are visited in colex order (numeric order of their bitmasks) and
//! cut into fixed-size chunks of consecutive ranks. Each chunk is reduced on
//! its own and the chunk results are merged in rank order, so the answer and
//! its witness do not depend on the worker count. Among subsets attaining the
//! maximum, the one with the smallest bitmask is reported.
//!
//! Each subset goes through a ladder of exact evaluations, cheapest first:
//!
//! 1. `k = 2`: a distance-matrix lookup.
//! 2. `k = 3`: `min_v d(a,v) + d(b,v) + d(c,v)`.
//! 3. `S` induces a connected subgraph: `k - 1`.
//! 4. `S` meets two components: infinite.
//! 5. one boundary vertex `x` makes `S + x` connected: `k`.
//! 6. when the caller only needs to know whether `d(S)` beats a running
//!    maximum, a greedy shortest-path tree that already fails to beat it is
//!    reported instead of the exact value.
//! 7. otherwise the cheaper of the Dreyfus–Wagner DP and a search over
//!    supersets with 2, 3, ... extra vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Distance, DistanceMatrix, Graph, UNREACHED};
use crate::mask::{self, Mask, MaskGraph};
use crate::parallel::Executor;
use crate::steiner::{DreyfusWagner, SolverConfig, SteinerResult};

const CHUNK: u128 = 2048;

#[derive(Clone, Debug, Default)]
pub struct SweepContext {
    pub config: SolverConfig,
    pub executor: Executor,
}

impl SweepContext {
    pub fn new(config: SolverConfig, executor: Executor) -> Self {
        SweepContext { config, executor }
    }

    pub fn sequential() -> Self {
        SweepContext::new(SolverConfig::default(), Executor::sequential())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SdiamResult {
    pub k: usize,
    pub value: Distance,
    /// Smallest-bitmask k-set attaining `value`.
    pub witness_set: Vec<usize>,
    /// Minimum Steiner tree of `witness_set`; empty when `value` is infinite.
    pub witness_tree: Vec<(usize, usize)>,
}

/// All k-eccentricities from a single sweep, plus radius and diameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinerProfile {
    pub k: usize,
    pub eccentricities: Vec<Distance>,
    pub radius: Distance,
    /// Smallest vertex attaining the radius.
    pub center: usize,
    pub diameter: Distance,
}

pub fn steiner_eccentricity(g: &Graph, v: usize, k: usize) -> Result<Distance> {
    Sweep::new(g, &SweepContext::default())?.eccentricity(v, k)
}

pub fn steiner_k_radius(g: &Graph, k: usize) -> Result<Distance> {
    Ok(Sweep::new(g, &SweepContext::default())?.profile(k)?.radius)
}

pub fn steiner_k_diameter(g: &Graph, k: usize) -> Result<SdiamResult> {
    Sweep::new(g, &SweepContext::default())?.diameter(k)
}

/// Precomputed state for repeated sweeps over one graph.
pub struct Sweep<'a> {
    g: &'a Graph,
    ctx: &'a SweepContext,
    mg: MaskGraph,
    apsp: DistanceMatrix,
}

impl<'a> Sweep<'a> {
    pub fn new(g: &'a Graph, ctx: &'a SweepContext) -> Result<Self> {
        Ok(Sweep {
            g,
            ctx,
            mg: MaskGraph::new(g)?,
            apsp: g.distance_matrix(),
        })
    }

    fn check_k(&self, k: usize) -> Result<()> {
        let n = self.g.order();
        if k < 2 || k > n {
            return Err(Error::KOutOfRange { k, min: 2, max: n });
        }
        Ok(())
    }

    fn check_count(&self, count: u128) -> Result<()> {
        if count > self.ctx.config.max_subsets {
            return Err(Error::SweepGuardExceeded {
                count,
                limit: self.ctx.config.max_subsets,
            });
        }
        Ok(())
    }

    fn evaluator(&self) -> Evaluator<'_> {
        Evaluator::new(self.g, &self.mg, &self.apsp, &self.ctx.config)
    }

    /// Runs `visit` over every `j`-subset of `slots` (scattered onto those
    /// vertices and joined with `fixed`), one accumulator per chunk.
    ///
    /// `floor(acc, set)` is a value at or below which `visit` would leave the
    /// accumulator unchanged; such sets may be passed an upper bound instead
    /// of their exact distance.
    fn sweep<A, I, F, V>(&self, slots: &[usize], j: usize, fixed: Mask, init: I, floor: F, visit: V) -> Vec<A>
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(&A, Mask) -> u32 + Sync + Send,
        V: Fn(&mut A, Mask, u32) + Sync + Send,
    {
        let total = mask::binomial(slots.len(), j);
        let units = total.div_ceil(CHUNK) as usize;
        self.ctx.executor.map(units, |u| {
            let start = u as u128 * CHUNK;
            let len = CHUNK.min(total - start);
            let mut eval = self.evaluator();
            let mut acc = init();
            for compact in mask::combinations_from(start, j, len) {
                let set = fixed | mask::scatter(compact, slots);
                let d = eval.distance_above(set, floor(&acc, set));
                visit(&mut acc, set, d);
            }
            acc
        })
    }

    pub fn diameter(&self, k: usize) -> Result<SdiamResult> {
        self.check_k(k)?;
        let n = self.g.order();
        self.check_count(mask::binomial(n, k))?;
        let slots: Vec<usize> = (0..n).collect();
        let chunks = self.sweep(&slots, k, 0, || (0u32, Mask::MAX), |best, _| best.0, |best, set, d| {
            // ascending masks within a chunk: strict improvement keeps the smallest
            if best.1 == Mask::MAX || d > best.0 {
                *best = (d, set);
            }
        });
        let (value, set) = chunks
            .into_iter()
            .fold((0u32, Mask::MAX), |best, c| {
                if best.1 == Mask::MAX || c.0 > best.0 {
                    c
                } else {
                    best
                }
            });
        Ok(SdiamResult {
            k,
            value: Distance::from_raw(value),
            witness_set: mask::to_vec(set),
            witness_tree: self.evaluator().tree(set)?,
        })
    }

    /// Exact `d_G(S)` of one terminal set through the same evaluation ladder
    /// as the sweeps, so supports wider than the DP limit are still handled.
    pub fn steiner(&self, terminals: &[usize]) -> Result<SteinerResult> {
        if terminals.is_empty() {
            return Err(Error::EmptyTerminalSet);
        }
        terminals.iter().try_for_each(|&v| self.g.check_vertex(v))?;
        let set = mask::to_mask(terminals);
        let mut eval = self.evaluator();
        let distance = Distance::from_raw(eval.distance(set));
        Ok(SteinerResult {
            distance,
            tree_edges: eval.tree(set)?,
        })
    }

    /// `e_k(v)`: sweeps the (k-1)-subsets of the other vertices.
    pub fn eccentricity(&self, v: usize, k: usize) -> Result<Distance> {
        self.g.check_vertex(v)?;
        self.check_k(k)?;
        let n = self.g.order();
        self.check_count(mask::binomial(n - 1, k - 1))?;
        let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
        let chunks = self.sweep(&others, k - 1, mask::bit(v), || 0u32, |best, _| *best, |best, _, d| {
            *best = (*best).max(d)
        });
        Ok(Distance::from_raw(chunks.into_iter().max().unwrap_or(0)))
    }

    /// Every `e_k(v)` at once; `srad_k` and `sdiam_k` are their min and max.
    pub fn profile(&self, k: usize) -> Result<SteinerProfile> {
        self.check_k(k)?;
        let n = self.g.order();
        self.check_count(mask::binomial(n, k))?;
        let slots: Vec<usize> = (0..n).collect();
        let floor = |ecc: &Vec<u32>, set: Mask| mask::bits(set).map(|v| ecc[v]).min().unwrap_or(0);
        let chunks = self.sweep(&slots, k, 0, || vec![0u32; n], floor, |ecc, set, d| {
            for v in mask::bits(set) {
                ecc[v] = ecc[v].max(d);
            }
        });
        let mut ecc = vec![0u32; n];
        for chunk in chunks {
            for (e, c) in ecc.iter_mut().zip(chunk) {
                *e = (*e).max(c);
            }
        }
        let eccentricities: Vec<Distance> = ecc.into_iter().map(Distance::from_raw).collect();
        let (center, radius) = eccentricities
            .iter()
            .copied()
            .enumerate()
            .min_by_key(|&(v, e)| (e, v))
            .expect("k <= order implies a vertex");
        let diameter = eccentricities.iter().copied().max().expect("nonempty");
        Ok(SteinerProfile {
            k,
            eccentricities,
            radius,
            center,
            diameter,
        })
    }
}

/// Exact `d_G(S)` for bitmask sets, with per-thread scratch buffers.
pub(crate) struct Evaluator<'a> {
    g: &'a Graph,
    mg: &'a MaskGraph,
    apsp: &'a DistanceMatrix,
    config: &'a SolverConfig,
    dw: DreyfusWagner,
    terminals: Vec<usize>,
}

impl<'a> Evaluator<'a> {
    pub(crate) fn new(
        g: &'a Graph,
        mg: &'a MaskGraph,
        apsp: &'a DistanceMatrix,
        config: &'a SolverConfig,
    ) -> Self {
        Evaluator {
            g,
            mg,
            apsp,
            config,
            dw: DreyfusWagner::default(),
            terminals: Vec::new(),
        }
    }

    /// `d_G(set)` with `UNREACHED` for infinity. `set` must be nonempty.
    pub(crate) fn distance(&mut self, set: Mask) -> u32 {
        self.distance_above(set, 0)
    }

    /// Exact `d_G(set)` when it exceeds `floor`; otherwise some value in
    /// `d_G(set)..=floor`.
    pub(crate) fn distance_above(&mut self, set: Mask, floor: u32) -> u32 {
        let k = set.count_ones() as usize;
        match k {
            0 | 1 => return 0,
            2 => {
                let a = set.trailing_zeros() as usize;
                let b = (Mask::BITS - 1 - set.leading_zeros()) as usize;
                return self.apsp.raw(a, b);
            }
            3 => return self.triple(set),
            _ => {}
        }
        if self.mg.is_connected(set) {
            return k as u32 - 1;
        }
        let first = set.trailing_zeros() as usize;
        let component = self.mg.component_of(first);
        if set & !component != 0 {
            return UNREACHED;
        }
        for x in mask::bits(self.mg.boundary(set)) {
            if self.mg.is_connected(set | mask::bit(x)) {
                return k as u32;
            }
        }
        if floor > k as u32 {
            let upper = self.mg.greedy_tree_size(set);
            if upper <= floor {
                return upper;
            }
        }
        let free = (component & !set).count_ones();
        if self.prefer_dp(k, free) {
            self.terminals.clear();
            self.terminals.extend(mask::bits(set));
            self.dw
                .solve(self.g, &self.terminals)
                .distance
                .value()
                .expect("terminals share a component")
        } else {
            let (extra, _) = self.grow(set, component, 2);
            k as u32 - 1 + extra
        }
    }

    fn triple(&self, set: Mask) -> u32 {
        let mut it = mask::bits(set);
        let (a, b, c) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        let (ra, rb, rc) = (self.apsp.row(a), self.apsp.row(b), self.apsp.row(c));
        let mut best = u64::MAX;
        for v in 0..ra.len() {
            if ra[v] == UNREACHED || rb[v] == UNREACHED || rc[v] == UNREACHED {
                continue;
            }
            best = best.min(ra[v] as u64 + rb[v] as u64 + rc[v] as u64);
        }
        if best == u64::MAX {
            UNREACHED
        } else {
            best as u32
        }
    }

    /// DP work grows like `3^(k-1) * n`; the superset search like `2^free`.
    fn prefer_dp(&self, k: usize, free: u32) -> bool {
        if k > self.config.dp_width_limit {
            return false;
        }
        let dp = 3f64.powi(k as i32 - 1) * self.g.order() as f64;
        let grow = 2f64.powi(free as i32) * 4.0;
        dp <= grow
    }

    /// Smallest number of extra vertices `j >= start` (within `component`)
    /// making `set` connected, with the first such superset in colex order.
    fn grow(&self, set: Mask, component: Mask, start: usize) -> (u32, Mask) {
        let slots = mask::to_vec(component & !set);
        for j in start..=slots.len() {
            for pick in mask::combinations(slots.len(), j) {
                let w = set | mask::scatter(pick, &slots);
                if self.mg.is_connected(w) {
                    return (j as u32, w);
                }
            }
        }
        unreachable!("the whole component is connected")
    }

    /// A minimum Steiner tree for `set`, empty when `d(set)` is 0 or
    /// infinite.
    pub(crate) fn tree(&mut self, set: Mask) -> Result<Vec<(usize, usize)>> {
        if set.count_ones() <= 1 {
            return Ok(Vec::new());
        }
        if self.mg.is_connected(set) {
            return Ok(self.mg.spanning_tree(set));
        }
        let first = set.trailing_zeros() as usize;
        let component = self.mg.component_of(first);
        if set & !component != 0 {
            return Ok(Vec::new());
        }
        let k = set.count_ones() as usize;
        if k <= self.config.dp_width_limit {
            self.terminals.clear();
            self.terminals.extend(mask::bits(set));
            return Ok(self.dw.solve(self.g, &self.terminals).tree_edges);
        }
        let (_, w) = self.grow(set, component, 1);
        Ok(self.mg.spanning_tree(w))
    }
}
