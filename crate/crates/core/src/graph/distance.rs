use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use super::{Graph, NodeId};

/// All-pairs shortest information-travel times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u64>,
}

impl DistanceMatrix {
    /// Wraps a row-major `n x n` matrix.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "distance matrix must be square");
        DistanceMatrix { n, dist: rows.into_iter().flatten().collect() }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: NodeId, v: NodeId) -> u64 {
        self.dist[u * self.n + v]
    }

    pub fn row(&self, u: NodeId) -> &[u64] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    /// Largest entry, i.e. the diameter in time units.
    pub fn max_entry(&self) -> u64 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Sum over all ordered pairs.
    pub fn total(&self) -> u128 {
        self.dist.iter().map(|&d| d as u128).sum()
    }
}

/// Exact shortest distances: BFS per source for unit delays, Dijkstra
/// otherwise. Sources are processed in parallel.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.node_count();
    let unit = g.has_unit_delays();
    let rows: Vec<Vec<u64>> = (0..n).into_par_iter().map(|s| if unit { bfs(g, s) } else { dijkstra(g, s) }).collect();
    DistanceMatrix { n, dist: rows.into_iter().flatten().collect() }
}

fn bfs(g: &Graph, source: NodeId) -> Vec<u64> {
    let mut dist = vec![u64::MAX; g.node_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if dist[w] == u64::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn dijkstra(g: &Graph, source: NodeId) -> Vec<u64> {
    let mut dist = vec![u64::MAX; g.node_count()];
    dist[source] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(w, delay) in g.neighbors(u) {
            let candidate = d + delay as u64;
            if candidate < dist[w] {
                dist[w] = candidate;
                heap.push(Reverse((candidate, w)));
            }
        }
    }
    dist
}

/// A shortest path realising the diameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterPath {
    /// Nodes from one end to the other.
    pub nodes: Vec<NodeId>,
    /// Total delay along the path, equal to the largest pairwise distance.
    pub length: u64,
}

impl DiameterPath {
    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        *self.nodes.last().expect("diameter path is never empty")
    }

    /// Number of edges on the path.
    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.contains(&v)
    }
}

/// Picks the lexicographically smallest endpoint pair `(a, b)`, `a < b`, at
/// maximum distance, then the lexicographically smallest shortest path
/// from `a` to `b`.
pub fn diameter_path(g: &Graph, dm: &DistanceMatrix) -> DiameterPath {
    let n = g.node_count();
    let length = dm.max_entry();
    if n == 1 {
        return DiameterPath { nodes: vec![0], length: 0 };
    }
    let (a, b) = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| dm.get(a, b) == length)
        .expect("some pair attains the maximum");

    let mut nodes = vec![a];
    let mut current = a;
    while current != b {
        let remaining = dm.get(current, b);
        // neighbours are sorted by id, so the first match is the smallest
        let next = g
            .neighbors(current)
            .iter()
            .find(|&&(w, delay)| delay as u64 + dm.get(w, b) == remaining)
            .map(|&(w, _)| w)
            .expect("a shortest path always has a next hop");
        nodes.push(next);
        current = next;
    }
    DiameterPath { nodes, length }
}

/// Row sums of the distance matrix.
pub fn sum_distance_vector(dm: &DistanceMatrix) -> Vec<u64> {
    (0..dm.node_count()).map(|u| dm.row(u).iter().sum()).collect()
}
