use std::collections::BTreeSet;

use super::{DiameterPath, DistanceMatrix, Graph, NodeId};

/// Reduces `g` to a tree that keeps `dp` and hangs every other node off its
/// nearest already-placed node.
///
/// Off-path nodes are processed by increasing distance to the path, then by
/// id. The attach point minimises the distance in `g`; ties prefer nodes on
/// `dp`, then shallower nodes, then the smaller id. The new edge carries the
/// distance in `g` as its delay, so unit graphs stay unit.
pub fn reduce_to_histogram(g: &Graph, dp: &DiameterPath, dm: &DistanceMatrix) -> Graph {
    let n = g.node_count();
    let on_path: BTreeSet<NodeId> = dp.nodes.iter().copied().collect();

    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for pair in dp.nodes.windows(2) {
        let delay = g.delay(pair[0], pair[1]).expect("diameter path follows graph edges");
        edges.push((pair[0], pair[1], delay));
    }

    let path_distance = |v: NodeId| dp.nodes.iter().map(|&p| dm.get(p, v)).min().unwrap_or(0);
    let mut pending: Vec<NodeId> = (0..n).filter(|v| !on_path.contains(v)).collect();
    pending.sort_by_key(|&v| (path_distance(v), v));

    // depth = distance to the path inside the tree built so far
    let mut depth: Vec<Option<u64>> = vec![None; n];
    for &p in &dp.nodes {
        depth[p] = Some(0);
    }
    for v in pending {
        let (attach, attach_depth) = (0..n)
            .filter_map(|u| depth[u].map(|d| (u, d)))
            .min_by_key(|&(u, d)| (dm.get(u, v), !on_path.contains(&u), d, u))
            .expect("the path is already placed");
        let delay = dm.get(attach, v);
        edges.push((v, attach, delay as u32));
        depth[v] = Some(attach_depth + delay);
    }

    Graph::with_labels(g.labels().to_vec(), edges).expect("a spanning tree is connected")
}

/// Checks the histogram condition: every node's distance to `dp` is at most
/// the distance from its nearest path node to the closer path end.
///
/// The nearest path node is the smallest id among ties.
pub fn is_histogram(h: &Graph, dp: &DiameterPath, dm: &DistanceMatrix) -> bool {
    let (left, right) = (dp.first(), dp.last());
    (0..h.node_count()).all(|v| {
        let (reach, foot) = dp.nodes.iter().map(|&p| (dm.get(p, v), p)).min().expect("diameter path is never empty");
        reach <= dm.get(foot, left).min(dm.get(foot, right))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_pairs_distances, diameter_path};

    fn reduce(g: &Graph) -> (Graph, DiameterPath) {
        let dm = all_pairs_distances(g);
        let dp = diameter_path(g, &dm);
        (reduce_to_histogram(g, &dp, &dm), dp)
    }

    #[test]
    fn path_is_fixed_point() {
        let g = Graph::path(6);
        let (h, dp) = reduce(&g);
        assert_eq!(h, g);
        assert!(is_histogram(&h, &dp, &all_pairs_distances(&h)));
    }

    #[test]
    fn star_keeps_its_edges() {
        let g = Graph::star(4);
        let (h, dp) = reduce(&g);
        assert_eq!(h.edges(), g.edges());
        assert!(is_histogram(&h, &dp, &all_pairs_distances(&h)));
    }

    #[test]
    fn long_pendant_chain_violates_condition() {
        // path 0..4 with a chain 2-5-6-7 hanging from the middle node
        let g = Graph::from_unit_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6), (6, 7)]).unwrap();
        let dp = DiameterPath { nodes: vec![0, 1, 2, 3, 4], length: 4 };
        assert!(!is_histogram(&g, &dp, &all_pairs_distances(&g)));
    }

    #[test]
    fn reduction_of_cycle_is_not_a_histogram() {
        // The two off-path nodes of C6 hang off the path ends, so their reach exceeds
        // the zero distance from an end to itself.
        let g = Graph::cycle(6);
        let (h, dp) = reduce(&g);
        assert_eq!(dp.nodes, vec![0, 1, 2, 3]);
        assert_eq!(h.edge_count(), 5);
        assert!(!is_histogram(&h, &dp, &all_pairs_distances(&h)));
    }

    #[test]
    fn deeper_nodes_attach_where_the_tree_is_shallowest() {
        // path 0-1-2-3-4; 5 and 6 both adjacent to 2, 7 adjacent to 5 and 6
        let g = Graph::from_unit_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (2, 6), (5, 7), (6, 7)]).unwrap();
        let (h, _) = reduce(&g);
        assert_eq!(h.delay(5, 2), Some(1));
        assert_eq!(h.delay(6, 2), Some(1));
        assert_eq!(h.delay(7, 5), Some(1));
        assert_eq!(h.edge_count(), 7);
    }
}
