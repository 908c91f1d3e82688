use crate::graph::Graph;
use crate::sim::VertexId;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Level of every vertex in an H-partition, numbered from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPartition {
    pub level: Vec<u32>,
}

impl HPartition {
    /// Largest level in use (0 for the empty graph).
    pub fn ell(&self) -> u32 {
        self.level.iter().copied().max().unwrap_or(0)
    }

    pub fn level_of(&self, v: VertexId) -> u32 {
        self.level[v as usize]
    }
}

/// Acyclic orientation plus a forest label on every edge, stored as each
/// vertex's outgoing edges `(parent, label)` sorted by parent ID.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestLabeling {
    pub parents: Vec<Vec<(VertexId, u32)>>,
}

impl ForestLabeling {
    pub fn n(&self) -> usize {
        self.parents.len()
    }

    /// Largest label in use.
    pub fn num_forests(&self) -> u32 {
        self.parents
            .iter()
            .flat_map(|ps| ps.iter().map(|&(_, l)| l))
            .max()
            .unwrap_or(0)
    }

    pub fn max_out_degree(&self) -> usize {
        self.parents.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The parent of `v` in forest `label`, if any.
    pub fn parent(&self, v: VertexId, label: u32) -> Option<VertexId> {
        self.parents[v as usize]
            .iter()
            .find(|&&(_, l)| l == label)
            .map(|&(p, _)| p)
    }

    /// Edges as `(child, parent, label)`.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(v, ps)| ps.iter().map(move |&(p, l)| (v as VertexId, p, l)))
    }
}

/// What every vertex holds after the whole graph has been learned: one shared
/// copy per distinct content.
#[derive(Debug, Clone)]
pub struct KnownGraph {
    pub copies: Vec<Arc<Graph>>,
}

impl KnownGraph {
    pub fn copy_at(&self, v: VertexId) -> &Graph {
        &self.copies[v as usize]
    }

    /// True when every vertex holds the same graph.
    pub fn is_consistent(&self) -> bool {
        self.copies.windows(2).all(|w| Arc::ptr_eq(&w[0], &w[1]) || w[0] == w[1])
    }

    /// Number of distinct copies in memory.
    pub fn distinct_copies(&self) -> usize {
        let mut ptrs: Vec<*const Graph> = self.copies.iter().map(Arc::as_ptr).collect();
        ptrs.sort();
        ptrs.dedup();
        ptrs.len()
    }
}
