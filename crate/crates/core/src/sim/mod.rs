//! Synchronous round executor for the Congested Clique.
//!
//! Every ordered pair of vertices may exchange one message per round, and each
//! message is limited to `msg_constant * ceil(log2 n)` bits. Protocols are
//! expressed as per-vertex step functions ([`Protocol`]); the engine validates
//! every outbox against the budget before anything is delivered, so an
//! over-budget or duplicate message never reaches an inbox.
//!
//! Bulk routing ([`CliqueNetwork::lenzen_route`]) is a charged primitive: the
//! caller hands over a message multiset whose per-vertex source and destination
//! loads are at most `n`, and the engine delivers it for a fixed round charge.

mod lenzen;
mod message;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

pub use lenzen::{LenzenDelivery, Route};
pub use message::{bits_for, ceil_log2, Bits, Message, Wire, Word};

/// Vertex identifier, an integer in `[0, n)`.
pub type VertexId = u32;

/// Static parameters of a simulated clique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetConfig {
    /// Multiplier `C_msg` in the per-message budget `C_msg * ceil(log2 n)`.
    pub msg_constant: u32,
    /// Rounds charged for one bulk-routing invocation.
    pub lenzen_charge: u64,
    /// A single protocol run aborts after `round_cap_factor * n` rounds.
    pub round_cap_factor: u64,
    /// Evaluate vertex steps of a round on the rayon pool.
    pub parallel: bool,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig {
            msg_constant: 4,
            lenzen_charge: 2,
            round_cap_factor: 64,
            parallel: true,
        }
    }
}

/// Accumulated communication accounting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    /// All rounds consumed: synchronous steps plus bulk-routing charges.
    pub rounds: u64,
    /// Rounds spent in ordinary synchronous steps.
    pub sync_rounds: u64,
    pub lenzen_calls: u64,
    /// Point-to-point deliveries (a broadcast counts `n`).
    pub messages: u64,
    pub total_bits: u64,
    pub max_message_bits: u32,
}

impl RoundStats {
    /// Accounting accumulated after `earlier` was taken.
    pub fn since(&self, earlier: &RoundStats) -> RoundStats {
        RoundStats {
            rounds: self.rounds - earlier.rounds,
            sync_rounds: self.sync_rounds - earlier.sync_rounds,
            lenzen_calls: self.lenzen_calls - earlier.lenzen_calls,
            messages: self.messages - earlier.messages,
            total_bits: self.total_bits - earlier.total_bits,
            max_message_bits: self.max_message_bits,
        }
    }
}

/// Which side of a bulk-routing request exceeded its load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadRole {
    Source,
    Destination,
}

impl fmt::Display for LoadRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadRole::Source => f.write_str("source"),
            LoadRole::Destination => f.write_str("destination"),
        }
    }
}

/// The two ways a round can break the bandwidth rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BudgetViolation {
    /// `to == None` means the offending message was a broadcast.
    Oversized {
        from: VertexId,
        to: Option<VertexId>,
        bits: u32,
        budget: u32,
    },
    DuplicatePair { from: VertexId, to: VertexId },
}

impl fmt::Display for BudgetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetViolation::Oversized {
                from,
                to: Some(to),
                bits,
                budget,
            } => write!(f, "{from} -> {to} carries {bits} bits, budget is {budget}"),
            BudgetViolation::Oversized {
                from,
                to: None,
                bits,
                budget,
            } => write!(f, "broadcast from {from} carries {bits} bits, budget is {budget}"),
            BudgetViolation::DuplicatePair { from, to } => {
                write!(f, "second message on ordered pair {from} -> {to}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("budget violation in round {round}: {violation}")]
    BudgetViolation {
        round: u64,
        violation: BudgetViolation,
    },
    #[error("vertex {from} addressed unknown vertex {to} (n = {n})")]
    UnknownVertex { from: VertexId, to: VertexId, n: usize },
    #[error("bulk-routing load violation: vertex {vertex} is {role} of {load} messages, limit {limit}")]
    LoadViolation {
        vertex: VertexId,
        role: LoadRole,
        load: u64,
        limit: u64,
    },
    #[error("protocol did not terminate within {cap} rounds")]
    NonTermination { cap: u64 },
    #[error("protocol stalled in round {round}: {waiting} vertices waiting, nothing in flight")]
    Stall { round: u64, waiting: usize },
}

/// Result of one vertex step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step<O> {
    Continue,
    Done(O),
}

/// Broadcasts of one round, shared by every receiver.
pub type BroadcastChunk<M> = Arc<[(VertexId, M)]>;

/// Messages delivered to a vertex at the start of a step, ordered by sender.
#[derive(Debug)]
pub struct Inbox<'a, M> {
    direct: &'a [(VertexId, M)],
    broadcast: &'a [(VertexId, M)],
    chunk: Option<&'a BroadcastChunk<M>>,
}

impl<'a, M> Clone for Inbox<'a, M> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<'a, M> Copy for Inbox<'a, M> {}

impl<'a, M> Inbox<'a, M> {
    pub fn new(direct: &'a [(VertexId, M)], broadcast: &'a BroadcastChunk<M>) -> Self {
        Inbox {
            direct,
            broadcast,
            chunk: Some(broadcast),
        }
    }

    pub fn direct_only(direct: &'a [(VertexId, M)]) -> Self {
        Inbox {
            direct,
            broadcast: &[],
            chunk: None,
        }
    }

    pub fn empty() -> Self {
        Self::direct_only(&[])
    }

    /// A handle on this round's broadcasts; keeping it is the same as keeping
    /// a copy of [`Inbox::broadcasts`].
    pub fn broadcast_chunk(&self) -> Option<BroadcastChunk<M>> {
        self.chunk.cloned()
    }

    pub fn direct(&self) -> &'a [(VertexId, M)] {
        self.direct
    }

    /// Broadcasts from every sender of the previous round (the same slice for
    /// all receivers).
    pub fn broadcasts(&self) -> &'a [(VertexId, M)] {
        self.broadcast
    }

    pub fn iter(&self) -> impl Iterator<Item = &'a (VertexId, M)> {
        self.direct.iter().chain(self.broadcast.iter())
    }

    pub fn len(&self) -> usize {
        self.direct.len() + self.broadcast.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// What a vertex sees when it takes a step.
pub struct Ctx<'a, M> {
    pub id: VertexId,
    pub n: usize,
    /// Number of communication rounds of this run completed so far.
    pub round: u64,
    pub wire: Wire,
    pub inbox: Inbox<'a, M>,
}

/// Messages queued by one vertex during one step.
#[derive(Debug)]
pub struct Outbox<M> {
    sends: Vec<(VertexId, M)>,
    broadcast: Option<M>,
    repeated_broadcast: bool,
}

impl<M> Default for Outbox<M> {
    fn default() -> Self {
        Outbox {
            sends: Vec::new(),
            broadcast: None,
            repeated_broadcast: false,
        }
    }
}

impl<M> Outbox<M> {
    pub fn send(&mut self, to: VertexId, msg: M) {
        self.sends.push((to, msg));
    }

    /// Sends `msg` to every vertex, including the sender.
    pub fn broadcast(&mut self, msg: M) {
        if self.broadcast.is_some() {
            self.repeated_broadcast = true;
        }
        self.broadcast = Some(msg);
    }

    pub fn is_empty(&self) -> bool {
        self.sends.is_empty() && self.broadcast.is_none()
    }
}

/// A per-vertex step program.
///
/// The protocol value holds the static knowledge shared by all vertices (n,
/// parameters, each vertex's incident edges). `step` must only look at `ctx`,
/// the vertex's own state, and the static knowledge belonging to `ctx.id`.
pub trait Protocol: Sync {
    type State: Send;
    type Msg: Message;
    type Output: Send;

    fn step(
        &self,
        ctx: &Ctx<'_, Self::Msg>,
        state: &mut Self::State,
        out: &mut Outbox<Self::Msg>,
    ) -> Step<Self::Output>;

    /// When true, a round in which nothing is sent and no vertex terminates is
    /// reported as [`SimError::Stall`] instead of spinning to the round cap.
    fn silence_is_stall(&self) -> bool {
        false
    }
}

/// A simulated clique on `n` vertices with its round accountant.
#[derive(Debug, Clone)]
pub struct CliqueNetwork {
    n: usize,
    config: NetConfig,
    wire: Wire,
    stats: RoundStats,
}

impl CliqueNetwork {
    pub fn new(n: usize, config: NetConfig) -> Self {
        let wire = Wire::new(n, config.msg_constant);
        CliqueNetwork {
            n,
            config,
            wire,
            stats: RoundStats::default(),
        }
    }

    pub fn with_defaults(n: usize) -> Self {
        Self::new(n, NetConfig::default())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn config(&self) -> &NetConfig {
        &self.config
    }

    pub fn wire(&self) -> Wire {
        self.wire
    }

    pub fn budget_bits(&self) -> u32 {
        self.wire.budget_bits()
    }

    pub fn stats(&self) -> RoundStats {
        self.stats
    }

    /// Runs `protocol` until every vertex has returned [`Step::Done`].
    ///
    /// Step 0 happens before any communication; each subsequent step sees the
    /// messages sent in the previous one. A round is charged whenever messages
    /// are in flight or some vertex has not yet terminated.
    pub fn run<P: Protocol>(
        &mut self,
        protocol: &P,
        states: &mut [P::State],
    ) -> Result<Vec<P::Output>, SimError> {
        let n = self.n;
        assert_eq!(states.len(), n, "one state per vertex");
        let cap = self.config.round_cap_factor * (n.max(1) as u64);
        let wire = self.wire;

        let mut outputs: Vec<Option<P::Output>> = (0..n).map(|_| None).collect();
        let mut direct_in: Vec<Vec<(VertexId, P::Msg)>> = (0..n).map(|_| Vec::new()).collect();
        let mut bcast_in: BroadcastChunk<P::Msg> = Arc::from(Vec::new());
        let mut local_rounds = 0u64;

        loop {
            let done: Vec<bool> = outputs.iter().map(Option::is_some).collect();
            let step_one = |(i, st): (usize, &mut P::State)| {
                if done[i] {
                    return None;
                }
                let ctx = Ctx {
                    id: i as VertexId,
                    n,
                    round: local_rounds,
                    wire,
                    inbox: Inbox::new(&direct_in[i], &bcast_in),
                };
                let mut out = Outbox::default();
                let step = protocol.step(&ctx, st, &mut out);
                Some((out, step))
            };
            let results: Vec<Option<(Outbox<P::Msg>, Step<P::Output>)>> =
                if self.config.parallel && n >= 64 {
                    states.par_iter_mut().enumerate().map(step_one).collect()
                } else {
                    states.iter_mut().enumerate().map(step_one).collect()
                };

            let round = self.stats.rounds + 1;
            let mut next_direct: Vec<Vec<(VertexId, P::Msg)>> =
                (0..n).map(|_| Vec::new()).collect();
            let mut next_bcast = Vec::new();
            let mut bits = 0u64;
            let mut messages = 0u64;
            let mut max_bits = 0u32;
            let mut newly_done = 0usize;

            for (i, res) in results.into_iter().enumerate() {
                let Some((mut out, step)) = res else { continue };
                if let Step::Done(o) = step {
                    outputs[i] = Some(o);
                    newly_done += 1;
                }
                let from = i as VertexId;
                self.check_outbox(from, round, &mut out)?;
                for (to, msg) in out.sends {
                    let b = msg.bit_len(&wire);
                    bits += b as u64;
                    messages += 1;
                    max_bits = max_bits.max(b);
                    next_direct[to as usize].push((from, msg));
                }
                if let Some(msg) = out.broadcast {
                    let b = msg.bit_len(&wire);
                    bits += b as u64 * n as u64;
                    messages += n as u64;
                    max_bits = max_bits.max(b);
                    next_bcast.push((from, msg));
                }
            }

            let all_done = outputs.iter().all(Option::is_some);
            if all_done && messages == 0 {
                break;
            }
            if messages == 0 && newly_done == 0 && protocol.silence_is_stall() {
                let waiting = outputs.iter().filter(|o| o.is_none()).count();
                return Err(SimError::Stall {
                    round: self.stats.rounds,
                    waiting,
                });
            }
            local_rounds += 1;
            if local_rounds > cap {
                return Err(SimError::NonTermination { cap });
            }
            self.stats.rounds += 1;
            self.stats.sync_rounds += 1;
            self.stats.messages += messages;
            self.stats.total_bits += bits;
            self.stats.max_message_bits = self.stats.max_message_bits.max(max_bits);
            direct_in = next_direct;
            bcast_in = next_bcast.into();
        }

        Ok(outputs.into_iter().map(|o| o.expect("all done")).collect())
    }

    fn check_outbox<M: Message>(
        &self,
        from: VertexId,
        round: u64,
        out: &mut Outbox<M>,
    ) -> Result<(), SimError> {
        let budget = self.wire.budget_bits();
        let violation = |violation| SimError::BudgetViolation { round, violation };
        if out.repeated_broadcast {
            return Err(violation(BudgetViolation::DuplicatePair { from, to: from }));
        }
        if let Some(msg) = &out.broadcast {
            if let Some(&(to, _)) = out.sends.first() {
                return Err(violation(BudgetViolation::DuplicatePair { from, to }));
            }
            let bits = msg.bit_len(&self.wire);
            if bits > budget {
                return Err(violation(BudgetViolation::Oversized {
                    from,
                    to: None,
                    bits,
                    budget,
                }));
            }
        }
        out.sends.sort_by_key(|&(to, _)| to);
        for (idx, (to, msg)) in out.sends.iter().enumerate() {
            if *to as usize >= self.n {
                return Err(SimError::UnknownVertex {
                    from,
                    to: *to,
                    n: self.n,
                });
            }
            if idx > 0 && out.sends[idx - 1].0 == *to {
                return Err(violation(BudgetViolation::DuplicatePair { from, to: *to }));
            }
            let bits = msg.bit_len(&self.wire);
            if bits > budget {
                return Err(violation(BudgetViolation::Oversized {
                    from,
                    to: Some(*to),
                    bits,
                    budget,
                }));
            }
        }
        Ok(())
    }
}
