use super::params::{HPartitionParams, C_SPARSE};
use super::peel::{Peel, PeelView};
use super::sparse::{sparse_partition, Residual};
use super::types::{ForestLabeling, HPartition};
use crate::error::Result;
use crate::graph::Graph;
use crate::sim::{CliqueNetwork, RoundStats, VertexId};
use std::sync::Arc;

/// Result of [`h_partition_cc`].
#[derive(Debug, Clone)]
pub struct HPartitionOutcome {
    pub partition: HPartition,
    pub params: HPartitionParams,
    /// Per-vertex knowledge at the end of the peeling phase.
    pub views: Vec<PeelView>,
    /// The residual subgraph, known to every vertex.
    pub suffix: Arc<Residual>,
    /// Rounds of the distributed peeling phase alone.
    pub peel_rounds: u64,
    pub stats: RoundStats,
}

impl HPartitionOutcome {
    pub fn residual_edges(&self) -> usize {
        self.suffix.edges()
    }

    /// Level of `w` as far as vertex `v` can tell from its own view, which is
    /// exact for neighbours that announced a level and for suffix vertices.
    fn known_level(&self, v: VertexId, w: VertexId) -> Option<u32> {
        let view = &self.views[v as usize];
        if self.suffix.contains(w) {
            return Some(self.suffix.level[w as usize]);
        }
        view.heard.iter().find(|&&(x, _)| x == w).map(|&(_, l)| l)
    }
}

/// `params.iterations` distributed peeling iterations, then
/// [`sparse_partition`] on what is left.
pub fn h_partition_cc(
    net: &mut CliqueNetwork,
    g: &Graph,
    params: &HPartitionParams,
) -> Result<HPartitionOutcome> {
    let before = net.stats();
    let peel = Peel {
        g,
        threshold: params.threshold,
        iterations: params.iterations,
    };
    let mut states = peel.states();
    let views = net.run(&peel, &mut states)?;
    let peel_rounds = net.stats().since(&before).rounds;
    let suffix = sparse_partition(net, g, &views, params, params.start_index())?;
    debug_assert!(suffix.edges() <= C_SPARSE * g.n());
    let level = views
        .iter()
        .zip(&suffix.level)
        .map(|(view, &s)| view.level.unwrap_or(s))
        .collect();
    Ok(HPartitionOutcome {
        partition: HPartition { level },
        params: *params,
        views,
        suffix,
        peel_rounds,
        stats: net.stats().since(&before),
    })
}

/// Edge `{u, v}` points to the endpoint on the higher level, and to the
/// higher ID between equal levels. Returns each vertex's heads, sorted.
pub fn orientation(g: &Graph, hp: &HPartition) -> Vec<Vec<VertexId>> {
    let key = |v: VertexId| (hp.level[v as usize], v);
    g.vertices()
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| key(w) > key(v)).collect())
        .collect()
}

/// The same orientation, decided by each vertex from its own knowledge: the
/// levels its neighbours announced, the suffix levels everyone holds, and for
/// a peeled vertex the fact that a silent neighbour joined later.
pub fn local_orientation(g: &Graph, out: &HPartitionOutcome) -> Vec<Vec<VertexId>> {
    g.vertices()
        .map(|v| {
            let view = &out.views[v as usize];
            let lv = out.partition.level[v as usize];
            let mut heads: Vec<VertexId> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| match out.known_level(v, w) {
                    Some(lw) => (lw, w) > (lv, v),
                    None => {
                        debug_assert!(view.silent.binary_search(&w).is_ok());
                        true
                    }
                })
                .collect();
            heads.sort_unstable();
            heads
        })
        .collect()
}

/// Result of [`forests_decomposition_cc`].
#[derive(Debug, Clone)]
pub struct ForestDecomposition {
    pub labeling: ForestLabeling,
    pub hpartition: HPartitionOutcome,
    pub stats: RoundStats,
}

/// H-partition, orientation, and labels `1, 2, ...` on each vertex's outgoing
/// edges in ascending head order. Orientation and labelling are local.
pub fn forests_decomposition_cc(
    net: &mut CliqueNetwork,
    g: &Graph,
    params: &HPartitionParams,
) -> Result<ForestDecomposition> {
    let before = net.stats();
    let hpartition = h_partition_cc(net, g, params)?;
    let parents = local_orientation(g, &hpartition)
        .into_iter()
        .map(|heads| heads.into_iter().zip(1u32..).collect())
        .collect();
    Ok(ForestDecomposition {
        labeling: ForestLabeling { parents },
        hpartition,
        stats: net.stats().since(&before),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};
    use crate::oracles::{verify_forest_decomposition, verify_h_partition};

    fn gen(f: GraphFamily, seed: u64) -> Graph {
        generate(&GraphFamilySpec::new(f, seed)).unwrap()
    }

    #[test]
    fn orientation_rule() {
        let g = Graph::from_edges(6, [(1, 4), (3, 5)]).unwrap();
        let hp = HPartition { level: vec![1, 1, 1, 2, 3, 2] };
        let o = orientation(&g, &hp);
        assert_eq!(o[1], vec![4]);
        assert_eq!(o[3], vec![5]);
        assert!(o[5].is_empty());
    }

    #[test]
    fn path_needs_no_peeling() {
        let g = Graph::from_edges(16, (1..16).map(|v| (v - 1, v))).unwrap();
        let params = HPartitionParams::standard(1, 2.0).unwrap();
        let mut net = CliqueNetwork::with_defaults(16);
        let out = h_partition_cc(&mut net, &g, &params).unwrap();
        assert_eq!(out.peel_rounds, 0);
        assert_eq!(out.stats.rounds, 2 + net.config().lenzen_charge);
        assert!(verify_h_partition(&g, &out.partition, 1, 2.0).ok);
    }

    #[test]
    fn forest_union_peels_twice() {
        let g = gen(GraphFamily::ForestUnion { n: 64, k: 4 }, 11);
        let params = HPartitionParams::standard(4, 2.0).unwrap();
        let mut net = CliqueNetwork::with_defaults(64);
        let out = h_partition_cc(&mut net, &g, &params).unwrap();
        assert_eq!(out.peel_rounds, 2);
        assert!(out.residual_edges() <= 8 * 64);
        assert!(verify_h_partition(&g, &out.partition, 4, 2.0).ok);
        assert_eq!(local_orientation(&g, &out), orientation(&g, &out.partition));
    }

    #[test]
    fn decompositions_verify() {
        let g = gen(GraphFamily::Grid { rows: 6, cols: 6 }, 0);
        let params = HPartitionParams::standard(2, 2.0).unwrap();
        let mut net = CliqueNetwork::with_defaults(36);
        let fd = forests_decomposition_cc(&mut net, &g, &params).unwrap();
        let r = verify_forest_decomposition(&g, &fd.labeling, 2, 2.0);
        assert!(r.ok, "{r}");
        assert!(fd.labeling.num_forests() <= 8);

        let g = gen(GraphFamily::ForestUnion { n: 128, k: 3 }, 5);
        let params = HPartitionParams::standard(3, 1.0).unwrap();
        let mut net = CliqueNetwork::with_defaults(128);
        let fd = forests_decomposition_cc(&mut net, &g, &params).unwrap();
        assert!(verify_forest_decomposition(&g, &fd.labeling, 3, 1.0).ok);
        let hp = &fd.hpartition;
        let dissemination = if hp.residual_edges() > 0 { 1 + 2 * hp.suffix.lenzen_calls } else { 0 };
        assert_eq!(fd.stats.rounds, 4 + 1 + dissemination);
        assert!(fd.stats.rounds <= 4 + 2 + 2);

        let e = Graph::from_edges(2, [(0, 1)]).unwrap();
        let mut net = CliqueNetwork::with_defaults(2);
        let fd = forests_decomposition_cc(&mut net, &e, &HPartitionParams::standard(1, 2.0).unwrap()).unwrap();
        assert_eq!(fd.labeling.num_forests(), 1);
    }

    #[test]
    fn tree_out_degree() {
        for seed in 0..10 {
            let g = gen(GraphFamily::ForestUnion { n: 100, k: 1 }, seed);
            let mut net = CliqueNetwork::with_defaults(100);
            let fd = forests_decomposition_cc(&mut net, &g, &HPartitionParams::standard(1, 2.0).unwrap()).unwrap();
            assert!(fd.labeling.max_out_degree() <= 4);
        }
    }
}
