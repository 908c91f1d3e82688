use crate::graph::Graph;
use crate::sim::{Ctx, Outbox, Protocol, Step, VertexId, Word};

/// What a vertex knows when the distributed peeling phase ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelView {
    /// `None` for vertices still active after the last iteration.
    pub level: Option<u32>,
    /// Levels announced by neighbours, in arrival order.
    pub heard: Vec<(VertexId, u32)>,
    /// Neighbours that never announced a level: they joined strictly later
    /// than this vertex, or are still active. Sorted.
    pub silent: Vec<VertexId>,
}

impl PeelView {
    /// A vertex on which no peeling happened.
    pub fn unpeeled(g: &Graph, v: VertexId) -> Self {
        PeelView {
            level: None,
            heard: Vec::new(),
            silent: g.neighbors(v).to_vec(),
        }
    }

    pub fn is_residual(&self) -> bool {
        self.level.is_none()
    }
}

/// Iteration `i` (step `i - 1`): every active vertex with at most `threshold`
/// active neighbours joins `H_i` and tells its active neighbours.
pub(crate) struct Peel<'g> {
    pub g: &'g Graph,
    pub threshold: u64,
    pub iterations: u32,
}

pub(crate) struct PeelState {
    nbrs: Vec<VertexId>,
    alive: Vec<bool>,
    active: usize,
    level: Option<u32>,
    heard: Vec<(VertexId, u32)>,
}

impl<'g> Peel<'g> {
    pub fn states(&self) -> Vec<PeelState> {
        self.g
            .vertices()
            .map(|v| {
                let nbrs = self.g.neighbors(v).to_vec();
                PeelState {
                    alive: vec![true; nbrs.len()],
                    active: nbrs.len(),
                    nbrs,
                    level: None,
                    heard: Vec::new(),
                }
            })
            .collect()
    }
}

impl Protocol for Peel<'_> {
    type State = PeelState;
    type Msg = Word;
    type Output = PeelView;

    fn step(&self, ctx: &Ctx<'_, Word>, st: &mut PeelState, out: &mut Outbox<Word>) -> Step<PeelView> {
        // a message arriving now was sent by a vertex that joined in the
        // previous iteration, whose number equals the rounds completed
        let arrived_level = ctx.round as u32;
        for &(from, _) in ctx.inbox.direct() {
            let idx = st.nbrs.binary_search(&from).expect("signal from a neighbour");
            if st.alive[idx] {
                st.alive[idx] = false;
                st.active -= 1;
            }
            st.heard.push((from, arrived_level));
        }
        if ctx.round == self.iterations as u64 {
            let silent = st
                .nbrs
                .iter()
                .zip(&st.alive)
                .filter(|(_, &a)| a)
                .map(|(&w, _)| w)
                .collect();
            return Step::Done(PeelView {
                level: st.level,
                heard: std::mem::take(&mut st.heard),
                silent,
            });
        }
        if st.level.is_none() && st.active as u64 <= self.threshold {
            st.level = Some(arrived_level + 1);
            for (&w, _) in st.nbrs.iter().zip(&st.alive).filter(|(_, &a)| a) {
                out.send(w, Word::signal());
            }
        }
        Step::Continue
    }
}
