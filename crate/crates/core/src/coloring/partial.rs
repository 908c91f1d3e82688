use super::defective::{defective_coloring, defective_local, DefectivePlan};
use super::types::{Coloring, ColoringKind, PartialOrientation};
use crate::decomposition::{ceil_tol, floor_tol};
use crate::decomposition::{h_partition_cc, HPartitionOutcome, HPartitionParams};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::sim::{bits_for, CliqueNetwork, Ctx, Outbox, Protocol, RoundStats, Step, VertexId, Word};

#[derive(Debug, Clone)]
pub struct PartialOutcome {
    pub orientation: PartialOrientation,
    pub hpartition: HPartitionOutcome,
    /// Defective color of each vertex inside its own level.
    pub defective: Coloring,
    pub plan: DefectivePlan,
    pub t: u32,
    pub stats: RoundStats,
}

impl PartialOutcome {
    /// Sort key along which every arc increases.
    fn key(&self, v: VertexId) -> (u32, u32) {
        (self.hpartition.partition.level[v as usize], self.defective.colors[v as usize])
    }
}

/// H-partition, then a defective coloring of every level with parameter
/// `ceil((2 + eps) t)`. Cross-level edges point to the higher level,
/// same-level edges to the higher defective color, and same-level
/// same-color edges stay unoriented.
///
/// The suffix levels are colored locally by everyone from the residual graph
/// they already hold; the lower levels are colored by the distributed
/// protocol, all levels in the same rounds.
pub fn partial_orientation_cc(
    net: &mut CliqueNetwork,
    g: &Graph,
    params: &HPartitionParams,
    t: u32,
) -> Result<PartialOutcome> {
    if t == 0 {
        return invalid("t must be at least 1");
    }
    let before = net.stats();
    let hpartition = h_partition_cc(net, g, params)?;
    let level = &hpartition.partition.level;
    let same_level = g.filter_edges(|u, v| level[u as usize] == level[v as usize]);
    let p_prime = ceil_tol((2.0 + params.slack) * t as f64);
    let lower: Vec<bool> = g.vertices().map(|v| !hpartition.suffix.contains(v)).collect();
    let upper: Vec<bool> = lower.iter().map(|&b| !b).collect();

    let dist = defective_coloring(net, &same_level, &lower, params.threshold, p_prime)?;
    // every vertex holds the residual graph and hence its same-level edges
    let local = defective_local(&same_level, &dist.plan, &upper);
    let colors: Vec<u32> = g
        .vertices()
        .map(|v| if lower[v as usize] { dist.coloring.color(v) } else { local.color(v) })
        .collect();
    let defective = Coloring::new(colors, dist.coloring.kind, dist.coloring.palette_size);

    let mut out = PartialOutcome {
        orientation: PartialOrientation {
            parents: Vec::new(),
            unoriented: Vec::new(),
            deficit_bound: params.a / t,
            outdeg_bound: params.threshold as u32,
        },
        hpartition,
        defective,
        plan: dist.plan,
        t,
        stats: RoundStats::default(),
    };
    let mut parents = vec![Vec::new(); g.n()];
    let mut unoriented = vec![Vec::new(); g.n()];
    for v in g.vertices() {
        for &w in g.neighbors(v) {
            let (kv, kw) = (out.key(v), out.key(w));
            if kv == kw {
                unoriented[v as usize].push(w);
            } else if kw > kv {
                parents[v as usize].push(w);
            }
        }
    }
    out.orientation.parents = parents;
    out.orientation.unoriented = unoriented;
    out.stats = net.stats().since(&before);
    Ok(out)
}

/// Color in `1..=k` used by the fewest of the given parent colors, the
/// smallest on ties.
pub fn least_used(parent_colors: &[u32], k: u32) -> u32 {
    let mut count = vec![0usize; k as usize + 1];
    for &c in parent_colors {
        count[c as usize] += 1;
    }
    (1..=k).min_by_key(|&c| (count[c as usize], c)).unwrap()
}

/// Vertices wait until all their parents are colored, then pick
/// [`least_used`]. `known[v]` is a color fixed in advance (and known to all
/// children of `v`); such vertices do not take part.
struct SimpleArbdefective<'a> {
    parents: &'a [Vec<VertexId>],
    children: &'a [Vec<VertexId>],
    known: &'a [Option<u32>],
    k: u32,
}

struct SaState {
    parent_colors: Vec<Option<u32>>,
}

impl Protocol for SimpleArbdefective<'_> {
    type State = SaState;
    type Msg = Word;
    type Output = u32;

    fn step(&self, ctx: &Ctx<'_, Word>, st: &mut SaState, out: &mut Outbox<Word>) -> Step<u32> {
        let v = ctx.id as usize;
        if let Some(c) = self.known[v] {
            return Step::Done(c);
        }
        let ps = &self.parents[v];
        for &(from, w) in ctx.inbox.direct() {
            let idx = ps.binary_search(&from).expect("color from a parent");
            st.parent_colors[idx] = Some(w.value as u32);
        }
        if st.parent_colors.iter().any(Option::is_none) {
            return Step::Continue;
        }
        let seen: Vec<u32> = st.parent_colors.iter().map(|c| c.unwrap()).collect();
        let c = least_used(&seen, self.k);
        let bits = bits_for(self.k as u64 + 1);
        for &ch in &self.children[v] {
            if self.known[ch as usize].is_none() {
                out.send(ch, Word::new(c as u64, bits));
            }
        }
        Step::Done(c)
    }

    fn silence_is_stall(&self) -> bool {
        true
    }
}

fn children_of(parents: &[Vec<VertexId>]) -> Vec<Vec<VertexId>> {
    let mut children = vec![Vec::new(); parents.len()];
    for (v, ps) in parents.iter().enumerate() {
        for &p in ps {
            children[p as usize].push(v as VertexId);
        }
    }
    children
}

fn run_simple(
    net: &mut CliqueNetwork,
    o: &PartialOrientation,
    known: &[Option<u32>],
    k: u32,
) -> Result<Vec<u32>> {
    let children = children_of(&o.parents);
    let proto = SimpleArbdefective {
        parents: &o.parents,
        children: &children,
        known,
        k,
    };
    let mut states: Vec<SaState> = o
        .parents
        .iter()
        .map(|ps| SaState {
            parent_colors: ps.iter().map(|&p| known[p as usize]).collect(),
        })
        .collect();
    Ok(net.run(&proto, &mut states)?)
}

/// Arbdefective `k`-coloring from a partial orientation, fully distributed.
pub fn simple_arbdefective(net: &mut CliqueNetwork, o: &PartialOrientation, k: u32) -> Result<Vec<u32>> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    run_simple(net, o, &vec![None; o.n()], k)
}

/// Rule of [`simple_arbdefective`] applied centrally to `vertices`, which
/// must be listed so that parents come first.
fn simple_local(o: &PartialOrientation, vertices: &[VertexId], k: u32, colors: &mut [Option<u32>]) {
    for &v in vertices {
        let seen: Vec<u32> = o.parents[v as usize]
            .iter()
            .map(|&p| colors[p as usize].expect("parents colored first"))
            .collect();
        colors[v as usize] = Some(least_used(&seen, k));
    }
}

pub fn arbdefective_bound(a: u32, slack: f64, k: u32, t: u32) -> u32 {
    floor_tol(a as f64 / t as f64 + (2.0 + slack) * a as f64 / k as f64) as u32
}

#[derive(Debug, Clone)]
pub struct ArbdefectiveOutcome {
    pub coloring: Coloring,
    pub partial: PartialOutcome,
    pub bound: u32,
    pub k: u32,
    pub stats: RoundStats,
}

/// [`partial_orientation_cc`], then the least-used-parent-color rule: on the
/// suffix levels every vertex evaluates it locally, below them it runs
/// distributed.
pub fn arbdefective_coloring_cc(
    net: &mut CliqueNetwork,
    g: &Graph,
    params: &HPartitionParams,
    k: u32,
    t: u32,
) -> Result<ArbdefectiveOutcome> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    let before = net.stats();
    let partial = partial_orientation_cc(net, g, params, t)?;
    let suffix = &partial.hpartition.suffix;
    let mut order: Vec<VertexId> = suffix.vertices.clone();
    order.sort_by_key(|&v| std::cmp::Reverse(partial.key(v)));
    let mut known = vec![None; g.n()];
    simple_local(&partial.orientation, &order, k, &mut known);
    let colors = run_simple(net, &partial.orientation, &known, k)?;
    let bound = arbdefective_bound(params.a, params.slack, k, t);
    Ok(ArbdefectiveOutcome {
        coloring: Coloring::new(colors, ColoringKind::Arbdefective(bound), k),
        partial,
        bound,
        k,
        stats: net.stats().since(&before),
    })
}
