//! Shipping a sparse residual graph to every vertex and partitioning it
//! locally.

use super::params::{HPartitionParams, C_SPARSE};
use super::peel::PeelView;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::{
    bits_for, BroadcastChunk, CliqueNetwork, Ctx, Outbox, Protocol, Route, Step, VertexId, Word,
};
use std::sync::Arc;

/// The residual subgraph together with its locally computed levels. Every
/// vertex holds this same object after [`sparse_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    /// Residual vertices in ascending order.
    pub vertices: Vec<VertexId>,
    /// Edges among residual vertices, on the full vertex range.
    pub graph: Graph,
    /// Level of each vertex; 0 for vertices peeled earlier.
    pub level: Vec<u32>,
    /// How many bulk-routing calls were needed to disseminate the edges.
    pub lenzen_calls: u64,
}

impl Residual {
    pub fn contains(&self, v: VertexId) -> bool {
        self.level[v as usize] != 0
    }

    pub fn edges(&self) -> usize {
        self.graph.m()
    }
}

/// Round 1: residual vertices broadcast `1 +` their number of residual
/// neighbours with a larger ID; peeled vertices stay silent.
struct AnnounceUpDegree<'a> {
    views: &'a [PeelView],
    bits: u32,
}

impl Protocol for AnnounceUpDegree<'_> {
    type State = ();
    type Msg = Word;
    type Output = BroadcastChunk<Word>;

    fn step(&self, ctx: &Ctx<'_, Word>, _: &mut (), out: &mut Outbox<Word>) -> Step<Self::Output> {
        if ctx.round == 1 {
            return Step::Done(ctx.inbox.broadcast_chunk().expect("synchronous inbox"));
        }
        let view = &self.views[ctx.id as usize];
        if view.is_residual() {
            let up = view.silent.iter().filter(|&&w| w > ctx.id).count() as u64;
            out.broadcast(Word::new(up + 1, self.bits));
        }
        Step::Continue
    }
}

/// Slot layout derived from the announced up-degrees.
struct Layout {
    residual: Vec<bool>,
    offset: Vec<u64>,
    total: u64,
}

impl Layout {
    fn from_chunk(n: usize, chunk: &[(VertexId, Word)]) -> Self {
        let mut residual = vec![false; n];
        let mut up = vec![0u64; n];
        for &(v, w) in chunk {
            residual[v as usize] = true;
            up[v as usize] = w.value - 1;
        }
        let mut offset = vec![0u64; n];
        let mut total = 0;
        for v in 0..n {
            offset[v] = total;
            total += up[v];
        }
        Layout {
            residual,
            offset,
            total,
        }
    }
}

/// Round 2: the `j`-th edge of owner `v` (slot `offset[v] + j`) goes to relay
/// `slot mod n`. An owner's slots are consecutive, so its relays are distinct.
struct Relay<'a> {
    views: &'a [PeelView],
    layout: &'a Layout,
}

impl Protocol for Relay<'_> {
    type State = ();
    type Msg = Word;
    type Output = Vec<(VertexId, VertexId)>;

    fn step(&self, ctx: &Ctx<'_, Word>, _: &mut (), out: &mut Outbox<Word>) -> Step<Self::Output> {
        if ctx.round == 1 {
            let held = ctx
                .inbox
                .direct()
                .iter()
                .map(|&(from, w)| (from, w.value as VertexId))
                .collect();
            return Step::Done(held);
        }
        let view = &self.views[ctx.id as usize];
        if view.is_residual() {
            let base = self.layout.offset[ctx.id as usize];
            let ups = view.silent.iter().filter(|&&w| w > ctx.id);
            for (j, &w) in ups.enumerate() {
                let relay = ((base + j as u64) % ctx.n as u64) as VertexId;
                out.send(relay, Word::new(w as u64, ctx.wire.id_bits()));
            }
        }
        Step::Continue
    }
}

/// Every vertex learns the residual graph (the vertices whose view is
/// residual and the edges among them) and computes the same greedy
/// H-partition of it, with levels `start_index, start_index + 1, ...`.
///
/// Rounds: one announcement round, then, if there is any residual edge, one
/// relay round and `ceil(m_res / n)` bulk-routing calls.
pub fn sparse_partition(
    net: &mut CliqueNetwork,
    g: &Graph,
    views: &[PeelView],
    params: &HPartitionParams,
    start_index: u32,
) -> Result<Arc<Residual>> {
    let n = g.n();
    assert_eq!(views.len(), n);
    let id_bits = net.wire().id_bits();
    let chunks = net.run(
        &AnnounceUpDegree {
            views,
            bits: bits_for(n as u64 + 1),
        },
        &mut vec![(); n],
    )?;
    // Every vertex received the same broadcast chunk, so the layout each of
    // them derives is the same; it is computed once.
    debug_assert!(chunks.windows(2).all(|w| Arc::ptr_eq(&w[0], &w[1])));
    let layout = match chunks.first() {
        Some(c) => Layout::from_chunk(n, c),
        None => Layout::from_chunk(0, &[]),
    };
    let m_res = layout.total as usize;
    let limit = C_SPARSE * n;
    if m_res > limit {
        return Err(Error::SparsePreconditionFailed {
            residual_edges: m_res,
            detail: format!("{m_res} residual edges exceed {C_SPARSE} * n = {limit}"),
        });
    }

    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m_res);
    let mut calls = 0u64;
    if m_res > 0 {
        let held = net.run(
            &Relay {
                views,
                layout: &layout,
            },
            &mut vec![(); n],
        )?;
        let rounds = m_res.div_ceil(n);
        for c in 0..rounds {
            let msgs: Vec<(VertexId, Route<Word>)> = held
                .iter()
                .enumerate()
                .filter_map(|(r, list)| {
                    list.get(c).map(|&(u, w)| {
                        let packed = (u as u64) << id_bits | w as u64;
                        (r as VertexId, Route::ToAll(Word::new(packed, 2 * id_bits)))
                    })
                })
                .collect();
            let delivery = net.lenzen_route(msgs)?;
            calls += 1;
            // The to-all chunk is the same at every vertex; decode it once.
            let mask = (1u64 << id_bits) - 1;
            edges.extend(
                delivery
                    .to_all
                    .iter()
                    .map(|&(_, w)| ((w.value >> id_bits) as VertexId, (w.value & mask) as VertexId)),
            );
        }
    }

    let graph = Graph::from_edges(n, edges)?;
    let vertices: Vec<VertexId> = (0..n as VertexId).filter(|&v| layout.residual[v as usize]).collect();
    let level = local_levels(&graph, &vertices, params.threshold, start_index)?;
    Ok(Arc::new(Residual {
        vertices,
        graph,
        level,
        lenzen_calls: calls,
    }))
}

/// Greedy peeling of the residual graph: each level takes every remaining
/// vertex with at most `threshold` remaining neighbours.
fn local_levels(g: &Graph, vertices: &[VertexId], threshold: u64, start: u32) -> Result<Vec<u32>> {
    let n = g.n();
    let mut level = vec![0u32; n];
    let mut deg: Vec<u64> = g.vertices().map(|v| g.degree(v) as u64).collect();
    let mut remaining: Vec<VertexId> = vertices.to_vec();
    let mut current = start;
    while !remaining.is_empty() {
        let (join, stay): (Vec<VertexId>, Vec<VertexId>) =
            remaining.iter().partition(|&&v| deg[v as usize] <= threshold);
        if join.is_empty() {
            return Err(Error::SparsePreconditionFailed {
                residual_edges: g.m(),
                detail: format!(
                    "{} residual vertices all have more than {threshold} remaining neighbours",
                    stay.len()
                ),
            });
        }
        for &v in &join {
            level[v as usize] = current;
        }
        for &v in &join {
            for &w in g.neighbors(v) {
                if level[w as usize] == 0 {
                    deg[w as usize] -= 1;
                }
            }
        }
        remaining = stay;
        current += 1;
    }
    Ok(level)
}
