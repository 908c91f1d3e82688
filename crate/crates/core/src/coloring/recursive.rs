use super::partial::{arbdefective_bound, arbdefective_coloring_cc};
use super::types::{Coloring, ColoringKind};
use crate::decomposition::local::smallest_last_coloring;
use crate::decomposition::{forests_decomposition_cc, learn_graph, solve_locally, Groups, HPartitionParams, KnownGraph};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::sim::{bits_for, CliqueNetwork, Ctx, Outbox, Protocol, RoundStats, Step, Word};

/// Every vertex tells its neighbours in `g` its class in `1..=k`.
struct ClassExchange<'a> {
    g: &'a Graph,
    class: &'a [u32],
    k: u32,
}

impl Protocol for ClassExchange<'_> {
    type State = ();
    type Msg = Word;
    type Output = ();

    fn step(&self, ctx: &Ctx<'_, Word>, _: &mut (), out: &mut Outbox<Word>) -> Step<()> {
        if ctx.round > 0 {
            return Step::Done(());
        }
        let bits = bits_for(self.k as u64 + 1);
        for &w in self.g.neighbors(ctx.id) {
            out.send(w, Word::new(self.class[ctx.id as usize] as u64, bits));
        }
        Step::Continue
    }
}

/// Vertex partition produced by repeated arbdefective splitting.
#[derive(Debug, Clone)]
pub struct Split {
    /// Group of each vertex in `0..p^depth`, the recursion path read as
    /// base-`p` digits.
    pub group: Vec<u32>,
    pub p: u32,
    pub depth: u32,
    /// Arboricity bound before each level, then the bound on every group.
    pub alphas: Vec<u32>,
    pub level_rounds: Vec<u64>,
    pub stats: RoundStats,
}

impl Split {
    pub fn groups(&self) -> u64 {
        (self.p as u64).pow(self.depth)
    }

    pub fn leaf_alpha(&self) -> u32 {
        *self.alphas.last().unwrap()
    }
}

/// While the bound exceeds `stop`, splits every group into `p` classes with
/// arbdefective_coloring_cc(k = t = p) on the union of the groups, so the
/// bound drops to `floor((3 + eps_h) alpha / p)`. One more round tells each
/// neighbour the new class.
pub fn recursive_split(
    net: &mut CliqueNetwork,
    g: &Graph,
    alpha: u32,
    p: u32,
    stop: u32,
    eps_h: f64,
) -> Result<Split> {
    if p < 2 || (p as f64) <= 3.0 + eps_h {
        return invalid(format!("p = {p} must exceed 3 + eps = {}", 3.0 + eps_h));
    }
    if stop < p {
        return invalid(format!("stop threshold {stop} is below p = {p}"));
    }
    let before = net.stats();
    let mut split = Split {
        group: vec![0; g.n()],
        p,
        depth: 0,
        alphas: vec![alpha],
        level_rounds: Vec::new(),
        stats: RoundStats::default(),
    };
    let mut a = alpha;
    while a > stop {
        if (p as u64).pow(split.depth + 1) > u32::MAX as u64 {
            return invalid("too many recursion levels for 32-bit group tags");
        }
        let level_start = net.stats();
        let sub = g.group_union(&split.group);
        let params = HPartitionParams::standard(a, eps_h)?;
        let out = arbdefective_coloring_cc(net, &sub, &params, p, p)?;
        let classes = &out.coloring.colors;
        net.run(&ClassExchange { g: &sub, class: classes, k: p }, &mut vec![(); g.n()])?;
        for (grp, &c) in split.group.iter_mut().zip(classes) {
            *grp = *grp * p + (c - 1);
        }
        debug_assert_eq!(out.bound, arbdefective_bound(a, eps_h, p, p));
        a = out.bound;
        split.depth += 1;
        split.alphas.push(a);
        split.level_rounds.push(net.stats().since(&level_start).rounds);
    }
    split.stats = net.stats().since(&before);
    Ok(split)
}

/// Each group learns its own subgraph through a forest decomposition.
pub fn learn_groups(net: &mut CliqueNetwork, g: &Graph, split: &Split, eps_h: f64) -> Result<(KnownGraph, RoundStats)> {
    let before = net.stats();
    let leaf = g.group_union(&split.group);
    let alpha = split.leaf_alpha();
    let known = if alpha == 0 || leaf.m() == 0 {
        // nothing to learn; one shared empty copy
        let empty = std::sync::Arc::new(Graph::empty(g.n()));
        KnownGraph {
            copies: vec![empty; g.n()],
        }
    } else {
        let params = HPartitionParams::standard(alpha, eps_h)?;
        let fd = forests_decomposition_cc(net, &leaf, &params)?;
        let groups = Groups {
            tag: &split.group,
            bound: split.groups(),
        };
        learn_graph(net, &fd.labeling, params.forest_bound(), Some(groups))?.known
    };
    Ok((known, net.stats().since(&before)))
}

#[derive(Debug, Clone)]
pub struct ProperOutcome {
    pub coloring: Coloring,
    pub split: Split,
    /// Colors available to each leaf group.
    pub leaf_palette: u32,
    pub leaf_rounds: u64,
    pub stats: RoundStats,
}

/// Splits until the bound is at most `stop`, then every leaf group learns its
/// subgraph and colors it smallest-last with at most `2 alpha` colors. Leaf
/// `g` owns colors `g L + 1 ..= (g + 1) L`.
pub fn proper_coloring_cc(
    net: &mut CliqueNetwork,
    g: &Graph,
    alpha: u32,
    p: u32,
    stop: u32,
    eps_h: f64,
) -> Result<ProperOutcome> {
    let before = net.stats();
    let split = recursive_split(net, g, alpha, p, stop, eps_h)?;
    let (known, leaf_stats) = learn_groups(net, g, &split, eps_h)?;
    let local = solve_locally(&known, smallest_last_coloring);
    let leaf_palette = (2 * split.leaf_alpha()).max(1);
    let colors: Vec<u32> = local
        .iter()
        .zip(&split.group)
        .map(|(&c, &grp)| grp * leaf_palette + c.max(1))
        .collect();
    let palette = split.groups() * leaf_palette as u64;
    if palette > u32::MAX as u64 {
        return invalid("palette does not fit 32-bit colors");
    }
    Ok(ProperOutcome {
        coloring: Coloring::new(colors, ColoringKind::Proper, palette as u32),
        split,
        leaf_palette,
        leaf_rounds: leaf_stats.rounds,
        stats: net.stats().since(&before),
    })
}

/// `p = ceil(a^(eps/3))`, stopping once the bound is at most `p`.
pub fn o_a_parameters(a: u32, eps: f64) -> u32 {
    crate::decomposition::ceil_tol((a as f64).powf(eps / 3.0)).max(1) as u32
}

pub fn o_a_coloring(net: &mut CliqueNetwork, g: &Graph, a: u32, eps: f64, eps_h: f64) -> Result<ProperOutcome> {
    if a < 2 {
        return invalid("a must be at least 2");
    }
    let p = o_a_parameters(a, eps);
    proper_coloring_cc(net, g, a, p, p, eps_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};
    use crate::oracles::verify_coloring;

    fn gen(f: GraphFamily, seed: u64) -> Graph {
        generate(&GraphFamilySpec::new(f, seed)).unwrap()
    }

    fn check(g: &Graph, out: &ProperOutcome) {
        let r = verify_coloring(g, &out.coloring);
        assert!(r.ok, "{r}");
    }

    #[test]
    fn guard_rejects_small_p() {
        let g = gen(GraphFamily::Cycle { n: 10 }, 0);
        let mut net = CliqueNetwork::with_defaults(10);
        assert!(matches!(proper_coloring_cc(&mut net, &g, 16, 4, 4, 1.0), Err(Error::InvalidParameters(_))));
        assert!(matches!(proper_coloring_cc(&mut net, &g, 16, 8, 4, 1.0), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn base_case_is_leaf_coloring() {
        let g = gen(GraphFamily::Grid { rows: 10, cols: 10 }, 0);
        let mut net = CliqueNetwork::with_defaults(100);
        let out = proper_coloring_cc(&mut net, &g, 2, 6, 6, 2.0).unwrap();
        assert_eq!(out.split.depth, 0);
        assert_eq!(out.coloring.palette_size, 4);
        assert_eq!(out.split.stats.rounds, 0);
        check(&g, &out);
    }

    #[test]
    fn one_level_on_forest_union() {
        let g = gen(GraphFamily::ForestUnion { n: 512, k: 8 }, 3);
        let mut net = CliqueNetwork::with_defaults(512);
        let out = proper_coloring_cc(&mut net, &g, 8, 8, 8, 1.0).unwrap();
        assert_eq!(out.split.depth, 0);
        check(&g, &out);

        let mut net = CliqueNetwork::with_defaults(512);
        let out = proper_coloring_cc(&mut net, &g, 16, 8, 8, 1.0).unwrap();
        assert_eq!(out.split.depth, 1);
        assert_eq!(out.split.alphas, vec![16, 8]);
        assert_eq!(out.coloring.palette_size, 8 * 16);
        check(&g, &out);
        for (v, &grp) in out.split.group.iter().enumerate() {
            let c = out.coloring.colors[v];
            assert!(c > grp * out.leaf_palette && c <= (grp + 1) * out.leaf_palette);
        }
        assert_eq!(
            out.stats.rounds,
            out.split.level_rounds.iter().sum::<u64>() + out.leaf_rounds
        );
    }

    #[test]
    fn o_a_palettes() {
        assert_eq!(o_a_parameters(16, 1.5), 4);
        assert_eq!(o_a_parameters(4, 3.0), 4);
        assert_eq!(o_a_parameters(16, 2.5), 11);
        let g = gen(GraphFamily::ForestUnion { n: 512, k: 16 }, 1);
        let mut net = CliqueNetwork::with_defaults(512);
        let out = o_a_coloring(&mut net, &g, 16, 2.5, 2.0).unwrap();
        assert_eq!(out.split.depth, 1);
        assert_eq!(out.coloring.palette_size, 11 * 14);
        check(&g, &out);
        let mut net = CliqueNetwork::with_defaults(512);
        assert!(matches!(o_a_coloring(&mut net, &g, 16, 1.5, 2.0), Err(Error::InvalidParameters(_))));
        // p = 4 passes the guard only with a smaller internal eps, and then
        // the bound already meets the stop threshold
        let g4 = gen(GraphFamily::ForestUnion { n: 64, k: 4 }, 1);
        let mut net = CliqueNetwork::with_defaults(64);
        let out = o_a_coloring(&mut net, &g4, 4, 3.0, 0.5).unwrap();
        assert_eq!(out.split.depth, 0);
        check(&g4, &out);
    }

    #[test]
    fn edgeless_uses_one_color() {
        let g = Graph::empty(20);
        let mut net = CliqueNetwork::with_defaults(20);
        let out = o_a_coloring(&mut net, &g, 16, 3.0, 2.0).unwrap();
        assert_eq!(out.coloring.used_colors(), 1);
        assert_eq!(net.stats().rounds, 0);
        let out = proper_coloring_cc(&mut net, &g, 0, 6, 6, 2.0).unwrap();
        assert_eq!(out.coloring.colors, vec![1; 20]);
        assert_eq!(out.coloring.palette_size, 1);
    }
}
