//! Sequential solvers that vertices run on graphs they hold locally.

use crate::graph::Graph;
use crate::sim::VertexId;

/// First-fit coloring visiting vertices in `order`; colours start at 1.
/// Vertices missing from `order` get 0.
pub fn greedy_coloring(g: &Graph, order: &[VertexId]) -> Vec<u32> {
    let mut color = vec![0u32; g.n()];
    let mut mark: Vec<usize> = Vec::new();
    for (step, &v) in order.iter().enumerate() {
        let d = g.degree(v);
        if mark.len() < d + 2 {
            mark.resize(d + 2, usize::MAX);
        }
        for &w in g.neighbors(v) {
            let c = color[w as usize] as usize;
            if c != 0 && c < mark.len() {
                mark[c] = step;
            }
        }
        color[v as usize] = (1..).find(|&c| mark[c] != step).unwrap() as u32;
    }
    color
}

pub fn greedy_coloring_by_id(g: &Graph) -> Vec<u32> {
    let order: Vec<VertexId> = g.vertices().collect();
    greedy_coloring(g, &order)
}

/// Reverse of a minimum-degree deletion order. First-fit in this order uses
/// at most degeneracy + 1 colours. Ties are broken by smaller ID.
pub fn smallest_last_order(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut set: std::collections::BTreeSet<(usize, VertexId)> =
        g.vertices().map(|v| (deg[v as usize], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = set.pop_first() {
        removed[v as usize] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w as usize] {
                set.remove(&(deg[w as usize], w));
                deg[w as usize] -= 1;
                set.insert((deg[w as usize], w));
            }
        }
    }
    order.reverse();
    order
}

pub fn smallest_last_coloring(g: &Graph) -> Vec<u32> {
    greedy_coloring(g, &smallest_last_order(g))
}

/// Greedy MIS by ascending ID over the vertices not in `removed`.
pub fn greedy_mis(g: &Graph, removed: &[bool]) -> Vec<bool> {
    let mut member = vec![false; g.n()];
    let mut blocked = removed.to_vec();
    for v in g.vertices() {
        if !blocked[v as usize] {
            member[v as usize] = true;
            for &w in g.neighbors(v) {
                blocked[w as usize] = true;
            }
        }
    }
    member
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};
    use crate::oracles::degeneracy;

    #[test]
    fn greedy_fixtures() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(greedy_coloring_by_id(&p4), vec![1, 2, 1, 2]);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(greedy_mis(&c4, &[false; 4]), vec![true, false, true, false]);
        assert_eq!(greedy_mis(&Graph::empty(1), &[false]), vec![true]);
        assert_eq!(greedy_mis(&c4, &[true; 4]), vec![false; 4]);
    }

    #[test]
    fn smallest_last_respects_degeneracy() {
        for seed in 0..5 {
            let g = generate(&GraphFamilySpec::new(GraphFamily::ForestUnion { n: 300, k: 6 }, seed)).unwrap();
            let c = smallest_last_coloring(&g);
            assert!(g.edges().all(|(u, v)| c[u as usize] != c[v as usize]));
            assert!(*c.iter().max().unwrap() <= degeneracy(&g) + 1);
        }
    }
}
