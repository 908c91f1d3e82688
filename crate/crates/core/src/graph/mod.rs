//! Input graphs: the clique subgraph `G'` that algorithms run on.

mod families;
mod format;

use crate::sim::VertexId;
use std::collections::HashSet;

pub use families::{generate, GraphFamily, GraphFamilySpec};
pub use format::{from_text, load, save, to_text, write_text};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: VertexId, n: usize },
    #[error("invalid graph family spec: {0}")]
    InvalidSpec(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
///
/// `arboricity_witness` is an upper bound on the arboricity certified by the
/// generator that built the graph; it does not take part in equality.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<Vec<VertexId>>,
    arboricity_witness: Option<u32>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![Vec::new(); n],
            arboricity_witness: None,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicates (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut seen = HashSet::new();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            m: seen.len(),
            adj,
            arboricity_witness: None,
        })
    }

    pub fn with_arboricity_witness(mut self, a: u32) -> Self {
        self.arboricity_witness = Some(a);
        self
    }

    pub fn arboricity_witness(&self) -> Option<u32> {
        self.arboricity_witness
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.n && self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.n as VertexId
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as VertexId;
            list.iter().filter(move |&&v| v > u).map(move |&v| (u, v))
        })
    }

    /// Same vertex set, keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(VertexId, VertexId) -> bool) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        let mut m = 0;
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
                m += 1;
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n: self.n,
            m,
            adj,
            arboricity_witness: None,
        }
    }

    /// Disjoint union of the subgraphs induced by each group: only edges whose
    /// endpoints carry the same group label survive.
    pub fn group_union(&self, group: &[u32]) -> Graph {
        self.filter_edges(|u, v| group[u as usize] == group[v as usize])
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the
    /// order given.
    pub fn induced(&self, vertices: &[VertexId]) -> Graph {
        let mut index = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in self.neighbors(v) {
                let j = index[w as usize];
                if j != u32::MAX {
                    adj[i].push(j);
                    if (i as u32) < j {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph {
            n: vertices.len(),
            m,
            adj,
            arboricity_witness: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1))));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn edges_are_sorted_and_canonical() {
        let g = Graph::from_edges(4, [(3, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(3, 1));
    }

    #[test]
    fn group_union_drops_cross_edges() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let u = g.group_union(&[0, 0, 1, 1]);
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        let ind = g.induced(&[3, 2, 1]);
        assert_eq!(ind.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }
}
