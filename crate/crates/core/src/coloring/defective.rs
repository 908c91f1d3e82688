use super::linial::{defective_schedule, final_palette, LinialStep};
use super::types::{Coloring, ColoringKind};
use crate::error::Result;
use crate::graph::Graph;
use crate::sim::{bits_for, CliqueNetwork, Ctx, Outbox, Protocol, RoundStats, Step, Word};

/// Schedule shared by every vertex: tolerate `floor(delta_hat / p)` same-color
/// neighbours in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectivePlan {
    pub delta_hat: u64,
    pub p: u64,
    pub defect: u64,
    /// Empty when `defect >= delta_hat`: then one color suffices.
    pub steps: Vec<LinialStep>,
    pub single_color: bool,
    pub palette: u64,
}

impl DefectivePlan {
    pub fn new(n: usize, delta_hat: u64, p: u64) -> Self {
        let p = p.max(1);
        let defect = delta_hat / p;
        if defect >= delta_hat || n <= 1 {
            return DefectivePlan {
                delta_hat,
                p,
                defect,
                steps: Vec::new(),
                single_color: true,
                palette: 1,
            };
        }
        let steps = defective_schedule(n as u64, delta_hat, defect);
        let palette = final_palette(n as u64, &steps);
        DefectivePlan {
            delta_hat,
            p,
            defect,
            steps,
            single_color: false,
            palette,
        }
    }

    /// Communication rounds of the distributed run: one per step, the last
    /// one announcing the final colors to the neighbours.
    pub fn rounds(&self) -> u64 {
        self.steps.len() as u64
    }
}

struct Defective<'a> {
    g: &'a Graph,
    plan: &'a DefectivePlan,
    active: &'a [bool],
}

struct DefState {
    color: u64,
    nbr_colors: Vec<u64>,
}

impl Protocol for Defective<'_> {
    type State = DefState;
    type Msg = Word;
    type Output = u64;

    fn step(&self, ctx: &Ctx<'_, Word>, st: &mut DefState, out: &mut Outbox<Word>) -> Step<u64> {
        let v = ctx.id;
        if !self.active[v as usize] || self.plan.single_color {
            return Step::Done(0);
        }
        let nbrs = self.g.neighbors(v);
        for &(from, w) in ctx.inbox.direct() {
            let idx = nbrs.binary_search(&from).expect("color from a neighbour");
            st.nbr_colors[idx] = w.value;
        }
        let r = ctx.round as usize;
        if r == self.plan.steps.len() {
            return Step::Done(st.color);
        }
        let s = &self.plan.steps[r];
        st.color = s.choose(st.color, &st.nbr_colors).0;
        let bits = bits_for(s.palette());
        for &w in nbrs {
            out.send(w, Word::new(st.color, bits));
        }
        Step::Continue
    }
}

#[derive(Debug, Clone)]
pub struct DefectiveOutcome {
    pub coloring: Coloring,
    pub plan: DefectivePlan,
    pub stats: RoundStats,
}

fn to_coloring(colors: Vec<u64>, plan: &DefectivePlan) -> Coloring {
    Coloring::new(
        colors.into_iter().map(|c| c as u32 + 1).collect(),
        ColoringKind::Defective(plan.defect as u32),
        plan.palette as u32,
    )
}

/// Defective coloring of `g` in which every vertex has at most
/// `floor(delta_hat / p)` neighbours of its own color, where `delta_hat` is a
/// degree bound known to all vertices. Only vertices with `active[v]` take
/// part; `g` must have no edges leaving the active set. The others get color
/// 1 and spend nothing.
pub fn defective_coloring(
    net: &mut CliqueNetwork,
    g: &Graph,
    active: &[bool],
    delta_hat: u64,
    p: u64,
) -> Result<DefectiveOutcome> {
    let before = net.stats();
    let plan = DefectivePlan::new(g.n(), delta_hat, p);
    let proto = Defective {
        g,
        plan: &plan,
        active,
    };
    let mut states: Vec<DefState> = g
        .vertices()
        .map(|v| DefState {
            color: v as u64,
            nbr_colors: g.neighbors(v).iter().map(|&w| w as u64).collect(),
        })
        .collect();
    let colors = net.run(&proto, &mut states)?;
    Ok(DefectiveOutcome {
        coloring: to_coloring(colors, &plan),
        plan,
        stats: net.stats().since(&before),
    })
}

/// The same computation carried out by a vertex that knows all of `g`.
pub fn defective_local(g: &Graph, plan: &DefectivePlan, active: &[bool]) -> Coloring {
    let mut colors: Vec<u64> = g.vertices().map(|v| v as u64).collect();
    if plan.single_color {
        colors.iter_mut().for_each(|c| *c = 0);
    } else {
        for s in &plan.steps {
            colors = g
                .vertices()
                .map(|v| {
                    let nbr: Vec<u64> = g.neighbors(v).iter().map(|&w| colors[w as usize]).collect();
                    s.choose(colors[v as usize], &nbr).0
                })
                .collect();
        }
    }
    for (c, &a) in colors.iter_mut().zip(active) {
        if !a {
            *c = 0;
        }
    }
    to_coloring(colors, plan)
}
