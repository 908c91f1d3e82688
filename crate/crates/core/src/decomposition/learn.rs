use super::types::{ForestLabeling, KnownGraph};
use crate::error::Result;
use crate::graph::Graph;
use crate::sim::{bits_for, BroadcastChunk, CliqueNetwork, Ctx, Outbox, Protocol, RoundStats, Step, VertexId, Word};
use std::collections::HashMap;
use std::sync::Arc;

/// Vertex-disjoint subgraphs learned side by side: vertex `v` belongs to
/// group `tag[v]`, and every tag is below `bound`, which all vertices know.
#[derive(Debug, Clone, Copy)]
pub struct Groups<'a> {
    pub tag: &'a [u32],
    pub bound: u64,
}

struct Learn<'a> {
    labeling: &'a ForestLabeling,
    rounds: u64,
    groups: Option<Groups<'a>>,
    tag_bits: u32,
}

impl Learn<'_> {
    fn tag(&self, v: VertexId) -> u64 {
        self.groups.map_or(0, |gr| gr.tag[v as usize] as u64)
    }
}

impl Protocol for Learn<'_> {
    type State = Vec<BroadcastChunk<Word>>;
    type Msg = Word;
    type Output = Vec<BroadcastChunk<Word>>;

    fn step(&self, ctx: &Ctx<'_, Word>, seen: &mut Self::State, out: &mut Outbox<Word>) -> Step<Self::Output> {
        if ctx.round > 0 {
            seen.push(ctx.inbox.broadcast_chunk().expect("synchronous inbox"));
        }
        if ctx.round == self.rounds {
            return Step::Done(std::mem::take(seen));
        }
        let label = ctx.round as u32 + 1;
        if let Some(p) = self.labeling.parent(ctx.id, label) {
            let id_bits = ctx.wire.id_bits();
            let value = self.tag(ctx.id) << id_bits | p as u64;
            out.broadcast(Word::new(value, id_bits + self.tag_bits));
        }
        Step::Continue
    }
}

#[derive(Debug, Clone)]
pub struct LearnOutcome {
    pub known: KnownGraph,
    pub stats: RoundStats,
}

/// In round `i = 1..=rounds` every vertex broadcasts its label-`i` parent, or
/// stays silent. A vertex keeps the edges of its own group, so afterwards it
/// holds its group's subgraph (the whole graph when `groups` is `None`).
pub fn learn_graph(
    net: &mut CliqueNetwork,
    labeling: &ForestLabeling,
    rounds: u64,
    groups: Option<Groups<'_>>,
) -> Result<LearnOutcome> {
    let before = net.stats();
    let n = labeling.n();
    let tag_bits = groups.map_or(0, |gr| bits_for(gr.bound));
    let proto = Learn {
        labeling,
        rounds,
        groups,
        tag_bits,
    };
    let seen = net.run(&proto, &mut vec![Vec::new(); n])?;
    let id_bits = net.wire().id_bits();
    let mask = (1u64 << id_bits) - 1;

    // Two vertices of one group whose received chunks are the same
    // allocations hold identical knowledge, so their local copy is
    // assembled once and shared.
    let mut cache: HashMap<(u64, Vec<*const (VertexId, Word)>), Arc<Graph>> = HashMap::new();
    let mut copies = Vec::with_capacity(n);
    for (v, chunks) in seen.iter().enumerate() {
        let tag = proto.tag(v as VertexId);
        let key = (tag, chunks.iter().map(|c| c.as_ptr()).collect::<Vec<_>>());
        let copy = cache.entry(key).or_insert_with(|| {
            let edges = chunks.iter().flat_map(|c| c.iter()).filter_map(|&(from, w)| {
                (w.value >> id_bits == tag).then_some((from, (w.value & mask) as VertexId))
            });
            Arc::new(Graph::from_edges(n, edges).expect("labeling names each edge once"))
        });
        copies.push(Arc::clone(copy));
    }
    Ok(LearnOutcome {
        known: KnownGraph { copies },
        stats: net.stats().since(&before),
    })
}

/// Every vertex runs `solver` on its own copy and keeps its own entry; equal
/// copies are evaluated once. No communication.
pub fn solve_locally<T: Clone>(known: &KnownGraph, mut solver: impl FnMut(&Graph) -> Vec<T>) -> Vec<T> {
    let mut cache: HashMap<*const Graph, Vec<T>> = HashMap::new();
    known
        .copies
        .iter()
        .enumerate()
        .map(|(v, copy)| {
            let sol = cache.entry(Arc::as_ptr(copy)).or_insert_with(|| solver(copy));
            sol[v].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::local::{greedy_coloring_by_id, greedy_mis};
    use crate::decomposition::{forests_decomposition_cc, HPartitionParams};
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};

    fn learn(g: &Graph, a: u32) -> (LearnOutcome, u64) {
        let params = HPartitionParams::standard(a, 2.0).unwrap();
        let mut net = CliqueNetwork::with_defaults(g.n());
        let fd = forests_decomposition_cc(&mut net, g, &params).unwrap();
        let out = learn_graph(&mut net, &fd.labeling, params.forest_bound(), None).unwrap();
        (out, params.forest_bound())
    }

    #[test]
    fn path_is_reconstructed() {
        let g = Graph::from_edges(8, (1..8).map(|v| (v - 1, v))).unwrap();
        let (out, bound) = learn(&g, 1);
        assert_eq!(out.stats.rounds, bound);
        assert_eq!(bound, 4);
        assert!(out.known.is_consistent());
        assert_eq!(out.known.copy_at(5), &g);
        assert_eq!(out.known.distinct_copies(), 1);
    }

    #[test]
    fn grid_copies_identical() {
        let g = generate(&GraphFamilySpec::new(GraphFamily::Grid { rows: 4, cols: 4 }, 0)).unwrap();
        let (out, _) = learn(&g, 2);
        for v in g.vertices() {
            assert_eq!(out.known.copy_at(v), &g);
        }
    }

    #[test]
    fn empty_graph_learns_nothing() {
        let (out, _) = learn(&Graph::empty(5), 1);
        assert_eq!(out.stats.total_bits, 0);
        assert_eq!(out.known.copy_at(0).m(), 0);
    }

    #[test]
    fn groups_keep_their_own_edges() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let tag = [0, 0, 0, 1, 1, 1];
        let params = HPartitionParams::standard(1, 2.0).unwrap();
        let mut net = CliqueNetwork::with_defaults(6);
        let fd = forests_decomposition_cc(&mut net, &g, &params).unwrap();
        let out = learn_graph(&mut net, &fd.labeling, 4, Some(Groups { tag: &tag, bound: 2 })).unwrap();
        assert_eq!(out.known.copy_at(0).edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(out.known.copy_at(5).edges().collect::<Vec<_>>(), vec![(3, 4), (4, 5)]);
        assert_eq!(out.known.distinct_copies(), 2);
    }

    #[test]
    fn local_solutions() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (out, _) = learn(&p4, 1);
        assert_eq!(solve_locally(&out.known, greedy_coloring_by_id), vec![1, 2, 1, 2]);

        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let (out, _) = learn(&c4, 2);
        let mis = solve_locally(&out.known, |g| greedy_mis(g, &vec![false; g.n()]));
        assert_eq!(mis, vec![true, false, true, false]);

        let ids = solve_locally(&out.known, |g| g.vertices().collect::<Vec<_>>());
        assert_eq!(ids, vec![0, 1, 2, 3]);
    }
}
