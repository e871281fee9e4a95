//! The fixed 18-joint skeleton graph produced by 2D pose estimation.
//!
//! Joints are indexed 0..17 in the OpenPose/COCO layout: 0 nose, 1 neck,
//! 2-4 right arm, 5-7 left arm, 8-10 right leg, 11-13 left leg,
//! 14/15 eyes, 16/17 ears. Bones are the 17 undirected edges below.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Number of joints in the OpenPose 18-keypoint layout.
pub const NUM_JOINTS: usize = 18;

/// Bone connections of the OpenPose 18-keypoint layout.
pub const OPENPOSE18_EDGES: [(usize, usize); 17] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (1, 5),
    (5, 6),
    (6, 7),
    (2, 8),
    (8, 9),
    (9, 10),
    (5, 11),
    (11, 12),
    (12, 13),
    (0, 14),
    (0, 15),
    (14, 16),
    (15, 17),
];

/// An undirected skeleton graph with a dense binary adjacency matrix.
#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    num_nodes: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Array2<f64>,
}

/// A root joint together with its graph neighbors, the receptive field of
/// one spatial graph convolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSet {
    pub root: usize,
    /// Edge-neighbors of `root`, sorted ascending by joint index.
    pub adjacent: Vec<usize>,
}

impl NeighborSet {
    /// Root followed by its neighbors; every member of the receptive field.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.root).chain(self.adjacent.iter().copied())
    }
}

impl SkeletonGraph {
    /// Builds the fixed 18-node skeleton graph of the OpenPose layout.
    pub fn openpose18() -> Self {
        let mut adjacency = Array2::zeros((NUM_JOINTS, NUM_JOINTS));
        for &(a, b) in OPENPOSE18_EDGES.iter() {
            adjacency[[a, b]] = 1.0;
            adjacency[[b, a]] = 1.0;
        }
        SkeletonGraph {
            num_nodes: NUM_JOINTS,
            edges: OPENPOSE18_EDGES.to_vec(),
            adjacency,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Dense V x V adjacency with entries in {0.0, 1.0} and zero diagonal.
    pub fn adjacency(&self) -> &Array2<f64> {
        &self.adjacency
    }

    /// Number of bones incident to `node`.
    pub fn degree(&self, node: usize) -> usize {
        self.adjacency
            .row(node)
            .iter()
            .filter(|&&x| x != 0.0)
            .count()
    }

    /// Edge-neighbors of `node`, sorted ascending.
    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        (0..self.num_nodes)
            .filter(|&j| self.adjacency[[node, j]] != 0.0)
            .collect()
    }

    /// The neighbor set rooted at `root`.
    pub fn neighbor_set(&self, root: usize) -> Result<NeighborSet> {
        if root >= self.num_nodes {
            return Err(Error::IndexOutOfRange {
                what: "skeleton joint",
                index: root,
                len: self.num_nodes,
            });
        }
        Ok(NeighborSet {
            root,
            adjacent: self.neighbors(root),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn openpose18_has_18_nodes_and_17_edges() {
        let g = SkeletonGraph::openpose18();
        assert_eq!(g.num_nodes(), 18);
        assert_eq!(g.edges().len(), 17);
    }

    #[test]
    fn adjacency_is_symmetric_with_zero_diagonal() {
        let g = SkeletonGraph::openpose18();
        for i in 0..18 {
            assert_eq!(g.adjacency()[[i, i]], 0.0);
            for j in 0..18 {
                assert_eq!(g.adjacency()[[i, j]], g.adjacency()[[j, i]]);
            }
        }
    }

    #[test]
    fn neck_has_degree_three() {
        let g = SkeletonGraph::openpose18();
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.neighbors(1), vec![0, 2, 5]);
    }

    #[test]
    fn max_degree_is_three_and_graph_is_connected() {
        let g = SkeletonGraph::openpose18();
        assert!((0..18).all(|v| g.degree(v) <= 3));

        // BFS from node 0 must reach every joint.
        let mut seen = [false; 18];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn neighbor_sets_match_edge_list() {
        let g = SkeletonGraph::openpose18();
        assert_eq!(g.neighbor_set(0).unwrap().adjacent, vec![1, 14, 15]);
        assert_eq!(g.neighbor_set(4).unwrap().adjacent, vec![3]);
        assert_eq!(g.neighbor_set(16).unwrap().adjacent, vec![14]);
    }

    #[test]
    fn neighbor_set_sizes_are_between_one_and_three() {
        let g = SkeletonGraph::openpose18();
        for root in 0..18 {
            let ns = g.neighbor_set(root).unwrap();
            assert!((1..=3).contains(&ns.adjacent.len()), "root {root}");
        }
    }

    #[test]
    fn out_of_range_root_is_an_index_error() {
        let g = SkeletonGraph::openpose18();
        let err = g.neighbor_set(18).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { index: 18, .. }));
    }
}
