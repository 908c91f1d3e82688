use super::{BroadcastChunk, CliqueNetwork, Inbox, LoadRole, Message, SimError, VertexId};
use crate::sim::BudgetViolation;

/// Addressing for one bulk-routed message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route<M> {
    To(VertexId, M),
    /// One copy to every vertex; counts `n` against the source load and one
    /// against every destination.
    ToAll(M),
}

/// Messages handed back by a bulk-routing call, each list ordered by source.
#[derive(Debug, Clone)]
pub struct LenzenDelivery<M> {
    pub direct: Vec<Vec<(VertexId, M)>>,
    pub to_all: BroadcastChunk<M>,
}

impl<M> LenzenDelivery<M> {
    pub fn inbox(&self, v: VertexId) -> Inbox<'_, M> {
        Inbox::new(&self.direct[v as usize], &self.to_all)
    }
}

impl CliqueNetwork {
    /// Delivers a message multiset in `lenzen_charge` rounds.
    ///
    /// Precondition, checked before anything is delivered: every vertex is the
    /// source of at most `n` messages and the destination of at most `n`.
    pub fn lenzen_route<M: Message>(
        &mut self,
        mut messages: Vec<(VertexId, Route<M>)>,
    ) -> Result<LenzenDelivery<M>, SimError> {
        let n = self.n;
        let limit = n as u64;
        let budget = self.wire.budget_bits();
        let round = self.stats.rounds + 1;
        let mut src_load = vec![0u64; n];
        let mut dst_load = vec![0u64; n];
        let mut to_all = 0u64;
        let mut bits = 0u64;
        let mut deliveries = 0u64;
        let mut max_bits = 0u32;

        for (src, route) in &messages {
            let from = *src;
            if from as usize >= n {
                return Err(SimError::UnknownVertex { from, to: from, n });
            }
            let (msg, to, copies) = match route {
                Route::To(to, msg) => {
                    if *to as usize >= n {
                        return Err(SimError::UnknownVertex { from, to: *to, n });
                    }
                    dst_load[*to as usize] += 1;
                    (msg, Some(*to), 1)
                }
                Route::ToAll(msg) => {
                    to_all += 1;
                    (msg, None, limit)
                }
            };
            let b = msg.bit_len(&self.wire);
            if b > budget {
                return Err(SimError::BudgetViolation {
                    round,
                    violation: BudgetViolation::Oversized {
                        from,
                        to,
                        bits: b,
                        budget,
                    },
                });
            }
            src_load[from as usize] += copies;
            bits += b as u64 * copies;
            deliveries += copies;
            max_bits = max_bits.max(b);
        }

        for (v, &load) in src_load.iter().enumerate() {
            if load > limit {
                return Err(SimError::LoadViolation {
                    vertex: v as VertexId,
                    role: LoadRole::Source,
                    load,
                    limit,
                });
            }
        }
        for (v, &load) in dst_load.iter().enumerate() {
            if load + to_all > limit {
                return Err(SimError::LoadViolation {
                    vertex: v as VertexId,
                    role: LoadRole::Destination,
                    load: load + to_all,
                    limit,
                });
            }
        }

        messages.sort_by_key(|(src, _)| *src);
        let mut direct: Vec<Vec<(VertexId, M)>> = (0..n).map(|_| Vec::new()).collect();
        let mut all = Vec::new();
        for (src, route) in messages {
            match route {
                Route::To(to, msg) => direct[to as usize].push((src, msg)),
                Route::ToAll(msg) => all.push((src, msg)),
            }
        }

        self.stats.lenzen_calls += 1;
        self.stats.rounds += self.config.lenzen_charge;
        self.stats.messages += deliveries;
        self.stats.total_bits += bits;
        self.stats.max_message_bits = self.stats.max_message_bits.max(max_bits);
        Ok(LenzenDelivery {
            direct,
            to_all: all.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::Bits;

    #[test]
    fn everyone_to_vertex_zero() {
        let n = 16;
        let mut net = CliqueNetwork::with_defaults(n);
        let msgs = (0..n as u32).map(|v| (v, Route::To(0, Bits::from_value(v as u64, 4)))).collect();
        let d = net.lenzen_route(msgs).unwrap();
        assert_eq!(d.direct[0].len(), n);
        assert_eq!(net.stats().rounds, 2);
        assert_eq!(net.stats().lenzen_calls, 1);
        assert_eq!(net.stats().sync_rounds, 0);
    }

    #[test]
    fn source_overload_is_rejected() {
        let n = 16;
        let mut net = CliqueNetwork::with_defaults(n);
        let msgs = (0..=n as u32)
            .map(|i| (3, Route::To(i % n as u32, Bits::zeros(1))))
            .collect();
        let err = net.lenzen_route(msgs).unwrap_err();
        assert_eq!(
            err,
            SimError::LoadViolation { vertex: 3, role: LoadRole::Source, load: 17, limit: 16 }
        );
        assert_eq!(net.stats().lenzen_calls, 0);
    }

    #[test]
    fn destination_overload_counts_to_all_copies() {
        let n = 4;
        let mut net = CliqueNetwork::with_defaults(n);
        let mut msgs: Vec<_> = (0..4).map(|v| (v, Route::ToAll(Bits::zeros(2)))).collect();
        msgs.push((0, Route::To(2, Bits::zeros(2))));
        // vertex 0 now sources 5 > 4
        assert!(matches!(
            net.lenzen_route(msgs).unwrap_err(),
            SimError::LoadViolation { role: LoadRole::Source, .. }
        ));
        let mut msgs: Vec<_> = (0..4).map(|v| (v, Route::ToAll(Bits::zeros(2)))).collect();
        msgs.pop();
        msgs.push((3, Route::To(2, Bits::zeros(2))));
        msgs.push((3, Route::To(2, Bits::zeros(2))));
        // vertex 2 receives 3 broadcast copies + 2 direct = 5 > 4
        assert!(matches!(
            net.lenzen_route(msgs).unwrap_err(),
            SimError::LoadViolation { vertex: 2, role: LoadRole::Destination, load: 5, .. }
        ));
    }

    #[test]
    fn star_edge_announcement_loads() {
        // K_{1,15} on 16 vertices: both endpoints announce every incident edge,
        // half-edge slot j goes to relay j mod 16. The center sources 15, each
        // leaf sources 1, and every relay receives at most 2.
        let n = 16u32;
        let half_edges: Vec<(u32, u32)> = (1..n).flat_map(|l| [(0, l), (l, 0)]).collect();
        assert_eq!(half_edges.len(), 30);
        let msgs = half_edges
            .iter()
            .enumerate()
            .map(|(slot, &(u, w))| (u, Route::To(slot as u32 % n, Bits::from_value(w as u64, 4))))
            .collect::<Vec<_>>();
        let mut net = CliqueNetwork::with_defaults(n as usize);
        let d = net.lenzen_route(msgs).unwrap();
        let loads: Vec<usize> = d.direct.iter().map(Vec::len).collect();
        assert_eq!(loads.iter().sum::<usize>(), 30);
        assert_eq!(loads.iter().copied().max(), Some(2));
        assert_eq!(net.stats().rounds, 2);

        // relaying every half-edge to all 16 vertices is 480 deliveries, which
        // takes two calls of 15 relays each
        for batch in 0..2u32 {
            let msgs = (0..15u32)
                .map(|r| (r, Route::ToAll(Bits::from_value((batch * 15 + r) as u64, 8))))
                .collect();
            net.lenzen_route(msgs).unwrap();
        }
        assert_eq!(net.stats().lenzen_calls, 3);
    }
}
