//! Maximal independent set by iterating over the groups of a recursive split.

use crate::coloring::{learn_groups, recursive_split, Split};
use crate::decomposition::local::greedy_mis;
use crate::decomposition::{ceil_tol, KnownGraph};
use crate::error::Result;
use crate::graph::Graph;
use crate::sim::{CliqueNetwork, Ctx, Outbox, Protocol, RoundStats, Step, Word};
use serde::Serialize;

/// How the vertex set is split into groups before the sequential phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MisPlan {
    /// `p = ceil(a^(1/8))`, splitting while the bound exceeds `p^4`.
    EighthRoot,
    /// `p = ceil(sqrt((3 + eps) a))`: one split leaves about `sqrt(a)`
    /// groups of arboricity about `sqrt(a)`.
    SquareRoot,
    /// No usable `p`: the whole graph is one group.
    Single,
}

/// Local MIS rule: greedy by ascending ID over the vertices not removed.
pub fn local_mis(known: &Graph, removed: &[bool]) -> Vec<bool> {
    greedy_mis(known, removed)
}

/// One round in which the flagged vertices broadcast a signal; everyone
/// returns the set of senders.
struct Announce<'a> {
    flag: &'a [bool],
}

impl Protocol for Announce<'_> {
    type State = ();
    type Msg = Word;
    type Output = Vec<u32>;

    fn step(&self, ctx: &Ctx<'_, Word>, _: &mut (), out: &mut Outbox<Word>) -> Step<Vec<u32>> {
        if ctx.round == 0 {
            if self.flag[ctx.id as usize] {
                out.broadcast(Word::signal());
            }
            return Step::Continue;
        }
        // only vertex 0's copy is kept; the others are identical
        if ctx.id == 0 {
            Step::Done(ctx.inbox.broadcasts().iter().map(|&(from, _)| from).collect())
        } else {
            Step::Done(Vec::new())
        }
    }
}

fn announce(net: &mut CliqueNetwork, flag: &[bool]) -> Result<Vec<u32>> {
    let mut out = net.run(&Announce { flag }, &mut vec![(); flag.len()])?;
    Ok(std::mem::take(&mut out[0]))
}

#[derive(Debug, Clone)]
pub struct MisOutcome {
    pub member: Vec<bool>,
    pub plan: MisPlan,
    pub split: Split,
    /// Membership after each iteration, kept when tracing was requested.
    pub trace: Option<Vec<Vec<bool>>>,
    pub iterations: u64,
    pub split_rounds: u64,
    pub learn_rounds: u64,
    pub loop_rounds: u64,
    pub stats: RoundStats,
}

impl MisOutcome {
    pub fn size(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }
}

fn choose_plan(a: u32, eps_h: f64) -> (MisPlan, u32, u32) {
    let limit = 3.0 + eps_h;
    let p = ceil_tol((a as f64).powf(0.125)) as u32;
    if (p as f64) > limit {
        return (MisPlan::EighthRoot, p, p.saturating_pow(4));
    }
    let p = ceil_tol(((3.0 + eps_h) * a as f64).sqrt()) as u32;
    if (p as f64) > limit && a > p {
        return (MisPlan::SquareRoot, p, p);
    }
    (MisPlan::Single, 0, 0)
}

pub fn mis_cc(net: &mut CliqueNetwork, g: &Graph, a: u32, eps_h: f64, trace: bool) -> Result<MisOutcome> {
    let before = net.stats();
    let (plan, p, stop) = choose_plan(a, eps_h);
    let split = match plan {
        MisPlan::Single => Split {
            group: vec![0; g.n()],
            p: 1,
            depth: 0,
            alphas: vec![a],
            level_rounds: Vec::new(),
            stats: RoundStats::default(),
        },
        _ => recursive_split(net, g, a, p, stop, eps_h)?,
    };
    let split_rounds = split.stats.rounds;
    let (known, learn) = learn_groups(net, g, &split, eps_h)?;
    let loop_start = net.stats();
    let (member, snapshots) = sequential_phase(net, g, &known, &split, trace)?;
    Ok(MisOutcome {
        member,
        plan,
        iterations: split.groups(),
        split,
        trace: trace.then_some(snapshots),
        split_rounds,
        learn_rounds: learn.rounds,
        loop_rounds: net.stats().since(&loop_start).rounds,
        stats: net.stats().since(&before),
    })
}

/// Group `i` computes a local MIS of its remaining vertices on its own copy,
/// the winners announce themselves, then their not yet removed neighbours
/// announce their removal. Both announcements reach everyone, so the removal
/// flags are common knowledge.
fn sequential_phase(
    net: &mut CliqueNetwork,
    g: &Graph,
    known: &KnownGraph,
    split: &Split,
    trace: bool,
) -> Result<(Vec<bool>, Vec<Vec<bool>>)> {
    let n = split.group.len();
    let mut member = vec![false; n];
    let mut removed = vec![false; n];
    let mut snapshots = Vec::new();
    let mut by_group: Vec<Vec<u32>> = vec![Vec::new(); split.groups() as usize];
    for (v, &grp) in split.group.iter().enumerate() {
        by_group[grp as usize].push(v as u32);
    }
    for verts in &by_group {
        let mut winner = vec![false; n];
        if let Some(&first) = verts.first() {
            // every vertex of the group holds the same copy
            let copy = known.copy_at(first);
            let mut blocked = vec![true; n];
            for &v in verts {
                blocked[v as usize] = removed[v as usize];
            }
            let mis = local_mis(copy, &blocked);
            for &v in verts {
                winner[v as usize] = mis[v as usize];
            }
        }
        for w in announce(net, &winner)? {
            member[w as usize] = true;
            removed[w as usize] = true;
        }
        // each vertex checks its own adjacency in the input graph
        let leaving: Vec<bool> = (0..n)
            .map(|v| !removed[v] && g.neighbors(v as u32).iter().any(|&w| winner[w as usize]))
            .collect();
        for w in announce(net, &leaving)? {
            removed[w as usize] = true;
        }
        if trace {
            snapshots.push(member.clone());
        }
    }
    Ok((member, snapshots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphFamily, GraphFamilySpec};
    use crate::oracles::verify_mis;

    fn gen(f: GraphFamily, seed: u64) -> Graph {
        generate(&GraphFamilySpec::new(f, seed)).unwrap()
    }

    #[test]
    fn local_rule_examples() {
        let c4 = gen(GraphFamily::Cycle { n: 4 }, 0);
        assert_eq!(local_mis(&c4, &[false; 4]), vec![true, false, true, false]);
        assert_eq!(local_mis(&Graph::empty(1), &[false]), vec![true]);
        assert_eq!(local_mis(&c4, &[true; 4]), vec![false; 4]);
    }

    #[test]
    fn plans() {
        assert_eq!(choose_plan(2, 2.0).0, MisPlan::Single);
        assert_eq!(choose_plan(16, 2.0), (MisPlan::SquareRoot, 9, 9));
        assert_eq!(choose_plan(256, 2.0), (MisPlan::SquareRoot, 36, 36));
        assert_eq!(choose_plan(1 << 24, 2.0).0, MisPlan::EighthRoot);
    }

    #[test]
    fn edgeless_takes_everyone() {
        let g = Graph::empty(10);
        let mut net = CliqueNetwork::with_defaults(10);
        let out = mis_cc(&mut net, &g, 2, 2.0, false).unwrap();
        assert_eq!(out.size(), 10);
        assert_eq!(out.loop_rounds, 2);
    }

    #[test]
    fn path_single_group() {
        let g = Graph::from_edges(5, (1..5).map(|v| (v - 1, v))).unwrap();
        let mut net = CliqueNetwork::with_defaults(5);
        let out = mis_cc(&mut net, &g, 1, 2.0, false).unwrap();
        assert_eq!(out.plan, MisPlan::Single);
        assert_eq!(out.member, vec![true, false, true, false, true]);
        assert!(verify_mis(&g, &out.member).ok);
    }

    #[test]
    fn invariant_after_every_iteration() {
        let g = gen(GraphFamily::ForestUnion { n: 400, k: 16 }, 2);
        let mut net = CliqueNetwork::with_defaults(400);
        let out = mis_cc(&mut net, &g, 16, 2.0, true).unwrap();
        assert_eq!(out.plan, MisPlan::SquareRoot);
        assert_eq!(out.loop_rounds, 2 * out.iterations);
        let trace = out.trace.as_ref().unwrap();
        assert_eq!(trace.len() as u64, out.iterations);
        let mut seen = Vec::new();
        for (i, snap) in trace.iter().enumerate() {
            seen.extend(g.vertices().filter(|&v| out.split.group[v as usize] == i as u32));
            let sub = g.induced(&seen);
            let m: Vec<bool> = seen.iter().map(|&v| snap[v as usize]).collect();
            assert!(verify_mis(&sub, &m).ok, "iteration {i}");
        }
        assert!(verify_mis(&g, &out.member).ok);
        assert_eq!(
            out.stats.rounds,
            out.split_rounds + out.learn_rounds + out.loop_rounds
        );
    }
}
