#![allow(dead_code)]

use aoi_diffusion::aoi::SeedSchedule;
use aoi_diffusion::graph::{DistanceMatrix, Graph, NodeId};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus extra edges with probability `extra`; delays
/// uniform on `1..=max_delay`.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: f64, max_delay: u32) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v, rng.gen_range(1..=max_delay)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra) {
                edges.push((u, v, rng.gen_range(1..=max_delay)));
            }
        }
    }
    Graph::from_edges(n, edges).expect("a spanning tree keeps the graph connected")
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    random_connected(rng, n, 0.0, 1)
}

/// Floyd-Warshall over the edge list, independent of the library's BFS and
/// Dijkstra.
pub fn floyd_warshall(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        let w = e.delay as u64;
        d[e.u][e.v] = d[e.u][e.v].min(w);
        d[e.v][e.u] = d[e.v][e.u].min(w);
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    DistanceMatrix::from_rows(d)
}

/// Random schedule; each round holds `1..=max_per_round` distinct seeds.
pub fn random_schedule(rng: &mut impl Rng, n: usize, k: usize, delta: u64, max_per_round: usize) -> SeedSchedule {
    let nodes: Vec<NodeId> = (0..n).collect();
    let rounds = (0..k)
        .map(|_| {
            let r = rng.gen_range(1..=max_per_round.min(n));
            nodes.choose_multiple(rng, r).copied().collect()
        })
        .collect();
    SeedSchedule::new(delta, rounds).unwrap()
}

/// Horizon that lets the last round reach every node.
pub fn full_horizon(k: usize, delta: u64, dm: &DistanceMatrix) -> u64 {
    1 + (k as u64 - 1) * delta + dm.max_entry() + 5
}

/// Distance matrix whose row for node 0 is `row`, with round `j` seeding
/// node `j`. Other rows are irrelevant to node 0's trace.
pub fn row_matrix(row: &[u64]) -> DistanceMatrix {
    let n = row.len() + 1;
    let mut rows = vec![vec![0; n]; n];
    for (j, &d) in row.iter().enumerate() {
        rows[0][j + 1] = d;
        rows[j + 1][0] = d;
    }
    DistanceMatrix::from_rows(rows)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
