//! H-partitions, forest decompositions and whole-graph learning.

mod forest;
mod learn;
pub mod local;
mod params;
mod peel;
mod sparse;
mod types;

pub use forest::{
    forests_decomposition_cc, h_partition_cc, local_orientation, orientation, ForestDecomposition,
    HPartitionOutcome,
};
pub use learn::{learn_graph, solve_locally, Groups, LearnOutcome};
pub(crate) use params::{ceil_tol, floor_tol};
pub use params::{HPartitionParams, C_SPARSE};
pub use peel::PeelView;
pub use sparse::{sparse_partition, Residual};
pub use types::{ForestLabeling, HPartition, KnownGraph};
