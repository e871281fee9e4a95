//! Neighbor-set partition strategies and the adjacency stacks they induce.
//!
//! A partition strategy assigns every member of a neighbor set a label in
//! `[0, K)`. The label selects which weight matrix of the spatial graph
//! convolution the member multiplies. Six strategies are provided:
//!
//! * `UniLabel` (K=1): every member shares label 0.
//! * `Distance` (K=2): root 0, all neighbors 1.
//! * `SpatialConfig` (K=3): neighbors closer to / farther from the center
//!   of gravity than the root get labels 1 / 2.
//! * `FullDistance` (K=4): neighbors ordered by ascending distance to the
//!   center of gravity.
//! * `Connection` (K=4): neighbors ordered by descending graph degree.
//! * `Index` (K=4): neighbors ordered by ascending keypoint index.
//!
//! For the K=4 splits the root always takes label 0 and the neighbors take
//! labels 1..=N in priority order. Ties are broken by ascending joint
//! index so that label maps are reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SkeletonGraph;
use crate::template::SkeletonTemplate;

/// The six neighbor-set partition strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "uni")]
    UniLabel,
    #[serde(rename = "distance")]
    Distance,
    #[serde(rename = "spatial")]
    SpatialConfig,
    #[serde(rename = "full-distance")]
    FullDistance,
    #[serde(rename = "connection")]
    Connection,
    #[serde(rename = "index")]
    Index,
}

impl Strategy {
    pub const ALL: [Strategy; 6] = [
        Strategy::UniLabel,
        Strategy::Distance,
        Strategy::SpatialConfig,
        Strategy::FullDistance,
        Strategy::Connection,
        Strategy::Index,
    ];

    /// Number of labels (and spatial weight matrices) the strategy uses.
    pub fn kernel_size(self) -> usize {
        match self {
            Strategy::UniLabel => 1,
            Strategy::Distance => 2,
            Strategy::SpatialConfig => 3,
            Strategy::FullDistance | Strategy::Connection | Strategy::Index => 4,
        }
    }

    /// Whether the strategy needs training-set geometry to label members.
    pub fn needs_template(self) -> bool {
        matches!(self, Strategy::SpatialConfig | Strategy::FullDistance)
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::UniLabel => "uni",
            Strategy::Distance => "distance",
            Strategy::SpatialConfig => "spatial",
            Strategy::FullDistance => "full-distance",
            Strategy::Connection => "connection",
            Strategy::Index => "index",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uni" => Ok(Strategy::UniLabel),
            "distance" => Ok(Strategy::Distance),
            "spatial" => Ok(Strategy::SpatialConfig),
            "full-distance" => Ok(Strategy::FullDistance),
            "connection" => Ok(Strategy::Connection),
            "index" => Ok(Strategy::Index),
            other => Err(Error::Input(format!(
                "unknown strategy {other:?}; expected one of uni, distance, spatial, full-distance, connection, index"
            ))),
        }
    }
}

/// A complete label map: for every root, the label of every member of its
/// neighbor set, plus the ordered auxiliary sequence that produced the
/// ordering (distances, degrees or indices) where one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMapping {
    strategy: Strategy,
    kernel_size: usize,
    labels: Vec<BTreeMap<usize, usize>>,
    priority_sets: Vec<Vec<f64>>,
}

impl LabelMapping {
    /// Assembles a mapping from raw parts without validation. Intended for
    /// interop and tests; `partitioned_adjacency` re-checks label ranges.
    pub fn from_parts(
        strategy: Strategy,
        kernel_size: usize,
        labels: Vec<BTreeMap<usize, usize>>,
        priority_sets: Vec<Vec<f64>>,
    ) -> Self {
        LabelMapping {
            strategy,
            kernel_size,
            labels,
            priority_sets,
        }
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn kernel_size(&self) -> usize {
        self.kernel_size
    }

    pub fn num_roots(&self) -> usize {
        self.labels.len()
    }

    /// Label of `member` within the neighbor set rooted at `root`.
    pub fn label(&self, root: usize, member: usize) -> Option<usize> {
        self.labels.get(root).and_then(|m| m.get(&member)).copied()
    }

    /// member -> label map of one neighbor set.
    pub fn members(&self, root: usize) -> &BTreeMap<usize, usize> {
        &self.labels[root]
    }

    /// Ordered auxiliary sequence for one root (empty when the strategy
    /// does not sort by one).
    pub fn priority_set(&self, root: usize) -> &[f64] {
        &self.priority_sets[root]
    }
}

/// Computes the label map of `strategy`, supplying template geometry where
/// the strategy requires it.
pub fn label_map(
    g: &SkeletonGraph,
    strategy: Strategy,
    template: Option<&SkeletonTemplate>,
) -> Result<LabelMapping> {
    match strategy {
        Strategy::UniLabel => Ok(label_map_unilabel(g)),
        Strategy::Distance => Ok(label_map_distance(g)),
        Strategy::SpatialConfig => {
            let t = template.ok_or_else(|| {
                Error::Config("the spatial strategy requires a skeleton template".into())
            })?;
            label_map_spatial(g, t)
        }
        Strategy::FullDistance => {
            let t = template.ok_or_else(|| {
                Error::Config("the full-distance strategy requires a skeleton template".into())
            })?;
            label_map_full_distance(g, t)
        }
        Strategy::Connection => Ok(label_map_connection(g)),
        Strategy::Index => Ok(label_map_index(g)),
    }
}

/// K=1: every member of every neighbor set shares label 0.
pub fn label_map_unilabel(g: &SkeletonGraph) -> LabelMapping {
    let labels = (0..g.num_nodes())
        .map(|root| {
            let ns = g.neighbor_set(root).expect("root in range");
            ns.members().map(|m| (m, 0)).collect()
        })
        .collect();
    LabelMapping {
        strategy: Strategy::UniLabel,
        kernel_size: 1,
        labels,
        priority_sets: vec![Vec::new(); g.num_nodes()],
    }
}

/// K=2: the root takes label 0, every neighbor label 1.
pub fn label_map_distance(g: &SkeletonGraph) -> LabelMapping {
    let labels = (0..g.num_nodes())
        .map(|root| {
            let ns = g.neighbor_set(root).expect("root in range");
            ns.members()
                .map(|m| (m, usize::from(m != root)))
                .collect()
        })
        .collect();
    LabelMapping {
        strategy: Strategy::Distance,
        kernel_size: 2,
        labels,
        priority_sets: vec![Vec::new(); g.num_nodes()],
    }
}

/// K=3 spatial configuration: a neighbor strictly closer to the center of
/// gravity than the root takes label 1, strictly farther takes label 2,
/// and equal distance takes label 0. The root compares equal to itself.
pub fn label_map_spatial(g: &SkeletonGraph, template: &SkeletonTemplate) -> Result<LabelMapping> {
    template.validate()?;
    let labels = (0..g.num_nodes())
        .map(|root| {
            let ns = g.neighbor_set(root).expect("root in range");
            let r_root = template.r[root];
            ns.members()
                .map(|m| {
                    let r_m = template.r[m];
                    let label = if r_m == r_root {
                        0
                    } else if r_m < r_root {
                        1
                    } else {
                        2
                    };
                    (m, label)
                })
                .collect()
        })
        .collect();
    Ok(LabelMapping {
        strategy: Strategy::SpatialConfig,
        kernel_size: 3,
        labels,
        priority_sets: vec![Vec::new(); g.num_nodes()],
    })
}

/// K=4 full distance split: neighbors sorted by ascending distance to the
/// center of gravity take labels 1..=N; the root keeps label 0. Equal
/// distances fall back to ascending joint index.
pub fn label_map_full_distance(
    g: &SkeletonGraph,
    template: &SkeletonTemplate,
) -> Result<LabelMapping> {
    template.validate()?;
    Ok(ordered_split(g, Strategy::FullDistance, |_, member| {
        template.r[member]
    }))
}

/// K=4 connection split: neighbors sorted by descending graph degree take
/// labels 1..=N; equal degrees fall back to ascending joint index.
pub fn label_map_connection(g: &SkeletonGraph) -> LabelMapping {
    // Negate so that the shared ascending sort yields descending degree.
    ordered_split(g, Strategy::Connection, |graph, member| {
        -(graph.degree(member) as f64)
    })
}

/// K=4 index split: neighbors sorted by ascending keypoint index take
/// labels 1..=N.
pub fn label_map_index(g: &SkeletonGraph) -> LabelMapping {
    ordered_split(g, Strategy::Index, |_, member| member as f64)
}

/// Shared machinery of the K=4 splits: sort each root's neighbors by an
/// ascending sort key (ties by ascending index), assign labels 1..=N, and
/// record the ordered auxiliary sequence.
fn ordered_split(
    g: &SkeletonGraph,
    strategy: Strategy,
    key: impl Fn(&SkeletonGraph, usize) -> f64,
) -> LabelMapping {
    let mut labels = Vec::with_capacity(g.num_nodes());
    let mut priority_sets = Vec::with_capacity(g.num_nodes());
    for root in 0..g.num_nodes() {
        let ns = g.neighbor_set(root).expect("root in range");
        let mut order: Vec<usize> = ns.adjacent.clone();
        order.sort_by(|&a, &b| {
            key(g, a)
                .partial_cmp(&key(g, b))
                .expect("sort keys are finite")
                .then(a.cmp(&b))
        });

        let mut map = BTreeMap::new();
        map.insert(root, 0);
        for (pos, &member) in order.iter().enumerate() {
            map.insert(member, pos + 1);
        }
        labels.push(map);

        // The recorded sequence holds the natural (un-negated) values:
        // distances ascending, degrees descending, indices ascending.
        let set = order
            .iter()
            .map(|&m| match strategy {
                Strategy::Connection => g.degree(m) as f64,
                _ => key(g, m),
            })
            .collect();
        priority_sets.push(set);
    }
    LabelMapping {
        strategy,
        kernel_size: 4,
        labels,
        priority_sets,
    }
}

/// A stack of K adjacency matrices, one per label, whose elementwise sum
/// equals adjacency + identity before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedAdjacency {
    kernel_size: usize,
    matrices: Vec<Array2<f64>>,
    normalized: bool,
}

impl PartitionedAdjacency {
    pub fn kernel_size(&self) -> usize {
        self.kernel_size
    }

    pub fn matrices(&self) -> &[Array2<f64>] {
        &self.matrices
    }

    pub fn matrix(&self, k: usize) -> &Array2<f64> {
        &self.matrices[k]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn num_nodes(&self) -> usize {
        self.matrices[0].nrows()
    }

    /// Elementwise sum over the stack.
    pub fn stack_sum(&self) -> Array2<f64> {
        let mut acc = Array2::zeros(self.matrices[0].raw_dim());
        for m in &self.matrices {
            acc += m;
        }
        acc
    }

    /// Row-normalizes every matrix: row `i` is divided by its sum plus
    /// `alpha`. All-zero rows are left untouched.
    pub fn normalize(&self, alpha: f64) -> Result<PartitionedAdjacency> {
        if alpha < 0.0 {
            return Err(Error::Config(format!(
                "normalization alpha must be non-negative, got {alpha}"
            )));
        }
        if self.normalized {
            return Err(Error::Config(
                "partition stack is already normalized".into(),
            ));
        }
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let mut out = m.clone();
                for mut row in out.rows_mut() {
                    let sum: f64 = row.sum();
                    if sum != 0.0 {
                        row.mapv_inplace(|x| x / (sum + alpha));
                    }
                }
                out
            })
            .collect();
        Ok(PartitionedAdjacency {
            kernel_size: self.kernel_size,
            matrices,
            normalized: true,
        })
    }
}

/// Default stabilizer used when row-normalizing partition matrices.
pub const DEFAULT_NORMALIZE_ALPHA: f64 = 0.001;

/// Encodes a label mapping as a stack of K binary matrices: entry (i, j)
/// of matrix k is 1 exactly when j belongs to i's neighbor set with label
/// k under the mapping rooted at i.
pub fn partitioned_adjacency(
    g: &SkeletonGraph,
    mapping: &LabelMapping,
) -> Result<PartitionedAdjacency> {
    let v = g.num_nodes();
    if mapping.num_roots() != v {
        return Err(Error::Dimension {
            axis: "roots",
            expected: v,
            got: mapping.num_roots(),
        });
    }
    let k_size = mapping.kernel_size();
    let mut matrices = vec![Array2::zeros((v, v)); k_size];
    for root in 0..v {
        for (&member, &label) in mapping.members(root) {
            if label >= k_size {
                return Err(Error::Internal(format!(
                    "label {label} at root {root} exceeds kernel size {k_size}"
                )));
            }
            matrices[label][[root, member]] = 1.0;
        }
    }
    Ok(PartitionedAdjacency {
        kernel_size: k_size,
        matrices,
        normalized: false,
    })
}

/// Free-function form of [`PartitionedAdjacency::normalize`].
pub fn normalize_partitions(
    pa: &PartitionedAdjacency,
    alpha: f64,
) -> Result<PartitionedAdjacency> {
    pa.normalize(alpha)
}
