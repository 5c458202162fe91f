use std::collections::VecDeque;

use super::Graph;

/// Unit-capacity flow network on the vertex-split digraph: vertex `v`
/// becomes `v_in = 2v` and `v_out = 2v + 1` joined by a capacity-1 arc, so a
/// maximum flow counts internally vertex-disjoint paths (Menger).
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); 2 * n],
        };
        let big = n as u32;
        for v in 0..n {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, big);
            net.arc(2 * v + 1, 2 * u, big);
        }
        net
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Number of internally disjoint `s`-`t` paths, stopping once `limit`
    /// is reached. Consumes the residual capacities.
    fn disjoint_paths(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        let mut pred = vec![usize::MAX; self.out.len()];
        while flow < limit {
            pred.fill(usize::MAX);
            pred[source] = usize::MAX - 1;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && pred[y] == usize::MAX {
                        pred[y] = a;
                        if y == sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if pred[sink] == usize::MAX {
                break;
            }
            let mut y = sink;
            while y != source {
                let a = pred[y];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                y = self.head[a ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Even's scheme: some vertex among the first `κ + 1` avoids a minimum cut,
/// and it is separated from a later vertex, so only pairs `(i, j)` with
/// `i ≤ best` and `j > i` need a flow computation.
pub(super) fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if n <= 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1;
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            let mut net = SplitNetwork::new(g);
            best = best.min(net.disjoint_paths(i, j, best));
        }
        i += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::new(10, e).unwrap()
    }

    /// Exhaustive: smallest vertex set whose removal disconnects the graph
    /// or leaves at most one vertex.
    fn brute_connectivity(g: &Graph) -> usize {
        let n = g.order();
        let mut best = n.saturating_sub(1);
        for mask in 0u32..(1 << n) {
            let removed = mask.count_ones() as usize;
            if removed >= best {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) == 0).collect();
            let sub = g.induced_subgraph(&keep).unwrap().graph;
            if !sub.is_connected() {
                best = removed;
            }
        }
        best
    }

    #[test]
    fn complete_graph_convention() {
        assert_eq!(complete(5).vertex_connectivity(), 4);
        assert_eq!(complete(1).vertex_connectivity(), 0);
        assert_eq!(complete(2).vertex_connectivity(), 1);
    }

    #[test]
    fn petersen_is_three_connected() {
        assert_eq!(petersen().vertex_connectivity(), 3);
    }

    #[test]
    fn cut_vertex_and_disconnected() {
        let star = Graph::new(5, (1..5).map(|v| (0, v))).unwrap();
        assert_eq!(star.vertex_connectivity(), 1);
        let two = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.vertex_connectivity(), 0);
    }

    #[test]
    fn agrees_with_exhaustive_cut_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..120 {
            let n = rng.random_range(2..=9);
            let p = rng.random_range(0.2..0.9);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        e.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, e).unwrap();
            let kappa = g.vertex_connectivity();
            assert_eq!(kappa, brute_connectivity(&g), "{:?}", g.edges().collect::<Vec<_>>());
            assert!(kappa <= g.min_degree());
        }
    }
}
