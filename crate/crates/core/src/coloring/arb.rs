use super::linial::{final_palette, proper_schedule, LinialStep};
use super::types::{Coloring, ColoringKind};
use crate::decomposition::{forests_decomposition_cc, ForestDecomposition, ForestLabeling, HPartitionParams};
use crate::error::Result;
use crate::graph::Graph;
use crate::sim::{bits_for, CliqueNetwork, Ctx, Outbox, Protocol, RoundStats, Step, VertexId, Word};

/// Each vertex reduces its color against its parents only; step 1 works on
/// IDs and needs no communication, every later step needs the parents'
/// previous colors, sent down to the children.
struct ArbLinial<'a> {
    labeling: &'a ForestLabeling,
    children: &'a [Vec<VertexId>],
    steps: &'a [LinialStep],
}

struct ArbState {
    color: u64,
    parent_colors: Vec<u64>,
}

impl ArbLinial<'_> {
    fn apply(&self, v: VertexId, st: &mut ArbState, i: usize) {
        st.color = self.steps[i].choose(st.color, &st.parent_colors).0;
        debug_assert!(self.labeling.parents[v as usize].len() == st.parent_colors.len());
    }
}

impl Protocol for ArbLinial<'_> {
    type State = ArbState;
    type Msg = Word;
    type Output = u64;

    fn step(&self, ctx: &Ctx<'_, Word>, st: &mut ArbState, out: &mut Outbox<Word>) -> Step<u64> {
        let v = ctx.id;
        let r = ctx.round as usize;
        let parents = &self.labeling.parents[v as usize];
        for &(from, w) in ctx.inbox.direct() {
            let idx = parents.binary_search_by_key(&from, |&(p, _)| p).expect("color from a parent");
            st.parent_colors[idx] = w.value;
        }
        if parents.is_empty() && self.children[v as usize].is_empty() {
            // no incident edges: any color is proper
            return Step::Done(0);
        }
        if self.steps.is_empty() {
            return Step::Done(st.color);
        }
        self.apply(v, st, r);
        if r + 1 == self.steps.len() {
            return Step::Done(st.color);
        }
        let bits = bits_for(self.steps[r].palette());
        for &c in &self.children[v as usize] {
            out.send(c, Word::new(st.color, bits));
        }
        Step::Continue
    }
}

pub(crate) fn children_of(labeling: &ForestLabeling) -> Vec<Vec<VertexId>> {
    let mut children = vec![Vec::new(); labeling.n()];
    for (v, p, _) in labeling.arcs() {
        children[p as usize].push(v);
    }
    children
}

#[derive(Debug, Clone)]
pub struct ArbLinialOutcome {
    pub coloring: Coloring,
    pub steps: Vec<LinialStep>,
    pub stats: RoundStats,
}

/// Proper coloring from a forest decomposition with at most `forests` labels.
/// The palette shrinks from `n` (the IDs) to the fixpoint of the schedule;
/// `steps - 1` rounds.
pub fn arb_linial(net: &mut CliqueNetwork, labeling: &ForestLabeling, forests: u64) -> Result<ArbLinialOutcome> {
    let before = net.stats();
    let n = labeling.n();
    if forests == 0 {
        return Ok(ArbLinialOutcome {
            coloring: Coloring::new(vec![1; n], ColoringKind::Proper, 1.min(n as u32)),
            steps: Vec::new(),
            stats: RoundStats::default(),
        });
    }
    let steps = proper_schedule(n as u64, forests);
    let children = children_of(labeling);
    let proto = ArbLinial {
        labeling,
        children: &children,
        steps: &steps,
    };
    let mut states: Vec<ArbState> = labeling
        .parents
        .iter()
        .enumerate()
        .map(|(v, ps)| ArbState {
            color: v as u64,
            parent_colors: ps.iter().map(|&(p, _)| p as u64).collect(),
        })
        .collect();
    let colors = net.run(&proto, &mut states)?;
    let palette = final_palette(n as u64, &steps) as u32;
    Ok(ArbLinialOutcome {
        coloring: Coloring::new(colors.into_iter().map(|c| c as u32 + 1).collect(), ColoringKind::Proper, palette),
        steps,
        stats: net.stats().since(&before),
    })
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub coloring: Coloring,
    pub decomposition: ForestDecomposition,
    pub linial: ArbLinialOutcome,
    pub params: HPartitionParams,
    pub stats: RoundStats,
}

/// Forest decomposition with `params`, then [`arb_linial`] with
/// `params.forest_bound()` forests.
pub fn forests_then_linial(
    net: &mut CliqueNetwork,
    g: &Graph,
    params: &HPartitionParams,
) -> Result<PipelineOutcome> {
    let before = net.stats();
    let decomposition = forests_decomposition_cc(net, g, params)?;
    let linial = arb_linial(net, &decomposition.labeling, params.forest_bound())?;
    Ok(PipelineOutcome {
        coloring: linial.coloring.clone(),
        decomposition,
        linial,
        params: *params,
        stats: net.stats().since(&before),
    })
}

/// O(a^2) coloring: standard H-partition parameters.
pub fn color_a2(net: &mut CliqueNetwork, g: &Graph, a: u32, eps: f64) -> Result<PipelineOutcome> {
    forests_then_linial(net, g, &HPartitionParams::standard(a, eps)?)
}

/// O(a^(2+eps)) coloring: peeling threshold `(2 + a^eps) a`, so the number
/// of peeling iterations does not depend on `a`. For `a = 1` the power is 1
/// and the standard pipeline with `eps_h = 1` is used.
pub fn fast_coloring_a2eps(net: &mut CliqueNetwork, g: &Graph, a: u32, eps: f64) -> Result<PipelineOutcome> {
    let params = if a < 2 {
        HPartitionParams::standard(a, 1.0)?
    } else {
        HPartitionParams::with_power(a, eps)?
    };
    forests_then_linial(net, g, &params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};
    use crate::oracles::{log_star, verify_coloring};

    fn gen(f: GraphFamily, seed: u64) -> Graph {
        generate(&GraphFamilySpec::new(f, seed)).unwrap()
    }

    #[test]
    fn edgeless_collapses_to_one_color() {
        let g = Graph::empty(10);
        let mut net = CliqueNetwork::with_defaults(10);
        let out = color_a2(&mut net, &g, 1, 2.0).unwrap();
        assert!(verify_coloring(&g, &out.coloring).ok);
        let labeling = ForestLabeling { parents: vec![Vec::new(); 10] };
        let out = arb_linial(&mut net, &labeling, 0).unwrap();
        assert_eq!(out.coloring.colors, vec![1; 10]);
        assert_eq!(out.stats.rounds, 0);
    }

    #[test]
    fn path_with_four_forests() {
        let g = Graph::from_edges(64, (1..64).map(|v| (v - 1, v))).unwrap();
        let mut net = CliqueNetwork::with_defaults(64);
        let out = color_a2(&mut net, &g, 1, 2.0).unwrap();
        assert!(verify_coloring(&g, &out.coloring).ok);
        assert!(out.coloring.palette_size <= 256);
        assert_eq!(out.linial.stats.rounds, out.linial.steps.len().saturating_sub(1) as u64);
    }

    #[test]
    fn rounds_follow_log_star() {
        let mut table = Vec::new();
        for n in [16usize, 256, 4096] {
            let g = gen(GraphFamily::ForestUnion { n, k: 2 }, 3);
            let mut net = CliqueNetwork::with_defaults(n);
            let out = color_a2(&mut net, &g, 2, 2.0).unwrap();
            assert!(verify_coloring(&g, &out.coloring).ok);
            assert!(out.coloring.palette_size as u64 <= 16 * 64);
            table.push((out.linial.stats.rounds as i64, log_star(n as u64) as i64));
        }
        let c0 = table[0].0 - table[0].1;
        assert!(table.iter().all(|&(r, l)| (r - l - c0).abs() <= 2), "{table:?}");
    }

    #[test]
    fn fast_coloring_bounds() {
        let g = gen(GraphFamily::ForestUnion { n: 256, k: 4 }, 2);
        let mut net = CliqueNetwork::with_defaults(256);
        let out = fast_coloring_a2eps(&mut net, &g, 4, 1.0).unwrap();
        assert_eq!(out.params.forest_bound(), 24);
        assert!(verify_coloring(&g, &out.coloring).ok);
        assert!(out.coloring.palette_size <= 16 * 576);

        let mut peel = Vec::new();
        for a in [2u32, 4, 8, 16] {
            let g = gen(GraphFamily::ForestUnion { n: 512, k: a }, 9);
            let mut net = CliqueNetwork::with_defaults(512);
            let out = fast_coloring_a2eps(&mut net, &g, a, 1.0).unwrap();
            assert!(verify_coloring(&g, &out.coloring).ok);
            peel.push(out.decomposition.hpartition.peel_rounds);
        }
        assert!(peel.windows(2).all(|w| w[0] == w[1]), "{peel:?}");
    }

    #[test]
    fn fast_coloring_unit_arboricity_matches_standard() {
        let g = gen(GraphFamily::ForestUnion { n: 50, k: 1 }, 4);
        let mut net = CliqueNetwork::with_defaults(50);
        let fast = fast_coloring_a2eps(&mut net, &g, 1, 0.5).unwrap();
        let mut net = CliqueNetwork::with_defaults(50);
        let std = color_a2(&mut net, &g, 1, 1.0).unwrap();
        assert_eq!(fast.coloring, std.coloring);
    }
}
