//! Undirected, connected social graphs with integer propagation delays.
//!
//! Node ids are dense (`0..n`) once a graph is built; the original ids read
//! from an edge list are kept in a label map for reporting.

mod distance;
mod histogram;
mod load;

pub use distance::{all_pairs_distances, diameter_path, sum_distance_vector, DiameterPath, DistanceMatrix};
pub use histogram::{is_histogram, reduce_to_histogram};
pub use load::{load_edge_list, LoadOptions};

use std::collections::{BTreeMap, VecDeque};

use crate::error::GraphError;

/// Dense node index.
pub type NodeId = usize;

/// Propagation delay of an edge, in time units.
pub type Delay = u32;

/// An undirected edge. Stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub delay: Delay,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<(NodeId, Delay)>>,
    edges: Vec<Edge>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on nodes `0..node_count` labelled by their own index.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, Delay)>,
    ) -> Result<Self, GraphError> {
        Self::with_labels((0..node_count as u64).collect(), edges)
    }

    /// Builds a graph on `labels.len()` nodes with unit delays.
    pub fn from_unit_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self, GraphError> {
        Self::from_edges(node_count, edges.into_iter().map(|(u, v)| (u, v, 1)))
    }

    /// Builds a graph whose node `i` carries the external id `labels[i]`.
    ///
    /// Self-loops are dropped and parallel edges collapse to their minimum
    /// delay. Fails on out-of-range endpoints, zero delays, or a
    /// disconnected result.
    pub fn with_labels(
        labels: Vec<u64>,
        edges: impl IntoIterator<Item = (NodeId, NodeId, Delay)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut collapsed: BTreeMap<(NodeId, NodeId), Delay> = BTreeMap::new();
        for (u, v, delay) in edges {
            if u >= n || v >= n {
                return Err(GraphError::NodeOutOfRange { node: u.max(v), node_count: n });
            }
            if delay == 0 {
                return Err(GraphError::ZeroDelay { u: labels[u], v: labels[v] });
            }
            if u == v {
                continue;
            }
            let key = (u.min(v), u.max(v));
            collapsed.entry(key).and_modify(|d| *d = (*d).min(delay)).or_insert(delay);
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut edge_list = Vec::with_capacity(collapsed.len());
        for (&(u, v), &delay) in &collapsed {
            adjacency[u].push((v, delay));
            adjacency[v].push((u, delay));
            edge_list.push(Edge { u, v, delay });
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let graph = Graph { adjacency, edges: edge_list, labels };
        graph.check_connected()?;
        Ok(graph)
    }

    /// Path `0 - 1 - ... - (n-1)` with unit delays.
    pub fn path(n: usize) -> Self {
        Self::from_unit_edges(n, (1..n).map(|i| (i - 1, i))).expect("path graphs are connected")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_unit_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("stars are connected")
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Self {
        Self::from_unit_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycles are connected")
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_unit_edges(n, edges).expect("complete graphs are connected")
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `v` with their edge delays, sorted by neighbour id.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, Delay)] {
        &self.adjacency[v]
    }

    /// Delay of edge `(u, v)`, if present.
    pub fn delay(&self, u: NodeId, v: NodeId) -> Option<Delay> {
        self.adjacency[u].binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| self.adjacency[u][i].1)
    }

    /// Position of edge `{u, v}` in [`Graph::edges`], if present.
    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search_by_key(&key, |e| (e.u, e.v)).ok()
    }

    pub fn has_unit_delays(&self) -> bool {
        self.edges.iter().all(|e| e.delay == 1)
    }

    /// External id of node `v`.
    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Same topology with every delay replaced by `delay_of(edge)`.
    pub fn with_delays(&self, mut delay_of: impl FnMut(&Edge) -> Delay) -> Result<Self, GraphError> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v, delay_of(e))).collect();
        Self::with_labels(self.labels.clone(), edges)
    }

    /// Same topology with unit delays.
    pub fn unit_topology(&self) -> Self {
        self.with_delays(|_| 1).expect("topology is unchanged")
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let n = self.node_count();
        let mut component = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(start);
            component[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adjacency[u] {
                    if component[w] == usize::MAX {
                        component[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            if representatives.len() > 1 {
                return Err(GraphError::Disconnected {
                    first: self.labels[representatives[0]],
                    second: self.labels[representatives[1]],
                });
            }
        }
        Ok(())
    }
}
