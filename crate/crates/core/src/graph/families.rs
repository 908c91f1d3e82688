use super::{Graph, GraphError};
use crate::sim::VertexId;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Families with a certified arboricity upper bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphFamily {
    /// Union of `k` edge-disjoint random forests on `n` vertices.
    ForestUnion { n: usize, k: u32 },
    Grid { rows: usize, cols: usize },
    Cycle { n: usize },
    /// Star with `n` vertices: center 0 and `n - 1` leaves.
    Star { n: usize },
    Complete { n: usize },
    /// Each vertex links to up to `d` random earlier vertices.
    RandomDegenerate { n: usize, d: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamilySpec {
    pub family: GraphFamily,
    pub seed: u64,
}

impl GraphFamilySpec {
    pub fn new(family: GraphFamily, seed: u64) -> Self {
        GraphFamilySpec { family, seed }
    }
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidSpec(msg.into())
}

/// Deterministic in `(family, seed)`.
pub fn generate(spec: &GraphFamilySpec) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        GraphFamily::ForestUnion { n, k } => {
            if n == 0 || k == 0 {
                return Err(invalid("forest_union needs n > 0 and k > 0"));
            }
            if k as usize >= n {
                return Err(invalid(format!("forest_union needs k < n (k = {k}, n = {n})")));
            }
            let mut edges = BTreeSet::new();
            let mut order: Vec<VertexId> = (0..n as VertexId).collect();
            for _ in 0..k {
                // random recursive tree over a random vertex order; edges already
                // present are skipped, which keeps the forests edge-disjoint
                order.shuffle(&mut rng);
                for i in 1..n {
                    let parent = order[rng.gen_range(0..i)];
                    let child = order[i];
                    edges.insert((child.min(parent), child.max(parent)));
                }
            }
            Ok(Graph::from_edges(n, edges)?.with_arboricity_witness(k))
        }
        GraphFamily::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(invalid("grid needs rows > 0 and cols > 0"));
            }
            let id = |r: usize, c: usize| (r * cols + c) as VertexId;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            let a = if rows == 1 || cols == 1 { 1 } else { 2 };
            Ok(Graph::from_edges(rows * cols, edges)?.with_arboricity_witness(a))
        }
        GraphFamily::Cycle { n } => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            let edges = (0..n).map(|i| (i as VertexId, ((i + 1) % n) as VertexId));
            Ok(Graph::from_edges(n, edges)?.with_arboricity_witness(2))
        }
        GraphFamily::Star { n } => {
            if n == 0 {
                return Err(invalid("star needs n > 0"));
            }
            let edges = (1..n).map(|l| (0, l as VertexId));
            Ok(Graph::from_edges(n, edges)?.with_arboricity_witness(1))
        }
        GraphFamily::Complete { n } => {
            if n == 0 {
                return Err(invalid("complete needs n > 0"));
            }
            let edges = (0..n as VertexId).flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)));
            let a = (n as u32).div_ceil(2).max(1);
            Ok(Graph::from_edges(n, edges)?.with_arboricity_witness(a))
        }
        GraphFamily::RandomDegenerate { n, d } => {
            if n == 0 || d == 0 {
                return Err(invalid("random_degenerate needs n > 0 and d > 0"));
            }
            let mut edges = Vec::new();
            let mut earlier: Vec<VertexId> = Vec::new();
            for v in 0..n as VertexId {
                let take = (d as usize).min(earlier.len());
                for &u in earlier.choose_multiple(&mut rng, take) {
                    edges.push((u, v));
                }
                earlier.push(v);
            }
            Ok(Graph::from_edges(n, edges)?.with_arboricity_witness(d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(family: GraphFamily, seed: u64) -> Graph {
        generate(&GraphFamilySpec::new(family, seed)).unwrap()
    }

    #[test]
    fn grid_counts() {
        let g = gen(GraphFamily::Grid { rows: 4, cols: 4 }, 0);
        assert_eq!((g.n(), g.m()), (16, 24));
        assert_eq!(g.arboricity_witness(), Some(2));
    }

    #[test]
    fn forest_union_single_forest_is_a_forest() {
        let g = gen(GraphFamily::ForestUnion { n: 8, k: 1 }, 7);
        assert_eq!(g.m(), 7);
        assert_eq!(g.arboricity_witness(), Some(1));
    }

    #[test]
    fn generation_is_deterministic() {
        let f = GraphFamily::ForestUnion { n: 200, k: 5 };
        assert_eq!(gen(f.clone(), 3), gen(f.clone(), 3));
        assert_ne!(gen(f.clone(), 3), gen(f, 4));
        let f = GraphFamily::RandomDegenerate { n: 100, d: 3 };
        assert_eq!(gen(f.clone(), 9), gen(f, 9));
    }

    #[test]
    fn invalid_specs() {
        for f in [
            GraphFamily::Grid { rows: 0, cols: 3 },
            GraphFamily::ForestUnion { n: 4, k: 4 },
            GraphFamily::Cycle { n: 2 },
            GraphFamily::RandomDegenerate { n: 5, d: 0 },
        ] {
            assert!(matches!(
                generate(&GraphFamilySpec::new(f, 0)),
                Err(GraphError::InvalidSpec(_))
            ));
        }
    }

    #[test]
    fn complete_and_star_shapes() {
        let k5 = gen(GraphFamily::Complete { n: 5 }, 0);
        assert_eq!(k5.m(), 10);
        assert_eq!(k5.arboricity_witness(), Some(3));
        let s = gen(GraphFamily::Star { n: 7 }, 0);
        assert_eq!(s.degree(0), 6);
    }
}
