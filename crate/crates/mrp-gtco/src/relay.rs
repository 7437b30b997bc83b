//! Inter-cluster relay planning.
//!
//! A head forwards through another head only when doing so provably lowers
//! the modelled radio cost: the source's amplifier saving must exceed the
//! relay's marginal receive-and-forward cost. The comparison collapses the
//! free-space/multipath case analysis into one inequality on per-bit costs.
//! Among the heads that pass the test, the one combining high residual
//! energy, light neighborhood load, and proximity to the base station wins.

use crate::energy::EnergyParams;
use crate::net::{distance, NodeState, Position};

/// Distances and load behind one relay-benefit query, meters/packets.
#[derive(Clone, Copy, Debug)]
pub struct RelayQuery {
    /// Source to candidate relay.
    pub to_relay_m: f64,
    /// Candidate relay to destination.
    pub relay_to_dest_m: f64,
    /// Source straight to destination.
    pub to_dest_m: f64,
    /// Packets the relay would forward for this decision.
    pub forwarded_packets: u32,
}

/// Per-bit saving of relaying versus transmitting direct; positive means the
/// relay route is cheaper.
pub fn relay_saving_j_per_bit(params: &EnergyParams, q: &RelayQuery) -> f64 {
    let via = params.amplifier_cost_j_per_bit(q.to_relay_m)
        + f64::from(q.forwarded_packets)
            * (params.elec_j_per_bit + params.amplifier_cost_j_per_bit(q.relay_to_dest_m));
    params.amplifier_cost_j_per_bit(q.to_dest_m) - via
}

/// Whether relaying strictly reduces the modelled cost.
pub fn relay_beneficial(params: &EnergyParams, q: &RelayQuery) -> bool {
    relay_saving_j_per_bit(params, q) > 0.0
}

/// Sign-variant of the saving that credits, rather than charges, the
/// relay's forwarding cost. Physically the forwarding must be paid for, so
/// the planner never uses this; it is kept for diagnostics only.
pub fn relay_saving_additive_variant_j_per_bit(params: &EnergyParams, q: &RelayQuery) -> f64 {
    params.amplifier_cost_j_per_bit(q.to_dest_m) - params.amplifier_cost_j_per_bit(q.to_relay_m)
        + f64::from(q.forwarded_packets)
            * (params.elec_j_per_bit + params.amplifier_cost_j_per_bit(q.relay_to_dest_m))
}

/// Relay desirability: residual energy over (neighborhood size times
/// distance to the base station). Higher is better.
pub fn relay_score(residual_energy_j: f64, neighbor_count: usize, dist_to_bs_m: f64) -> f64 {
    debug_assert!(dist_to_bs_m > 0.0);
    residual_energy_j / (neighbor_count.max(1) as f64 * dist_to_bs_m)
}

/// Where a head sends its round traffic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NextHop {
    Relay(usize),
    BaseStation,
}

/// Per-head next-hop choices and the forwarding load they imply.
#[derive(Clone, Debug, Default)]
pub struct RelayPlan {
    /// Head ids, ascending.
    pub heads: Vec<usize>,
    /// Next hop per head, aligned with `heads`.
    pub next_hop: Vec<NextHop>,
    /// Packets each head relays for other heads this round, aligned with
    /// `heads`.
    pub forwarding_load: Vec<u32>,
}

impl RelayPlan {
    /// Plan where every head transmits straight to the base station.
    pub fn all_direct(head_ids: &[usize]) -> Self {
        let mut heads = head_ids.to_vec();
        heads.sort_unstable();
        let n = heads.len();
        Self {
            heads,
            next_hop: vec![NextHop::BaseStation; n],
            forwarding_load: vec![0; n],
        }
    }

    pub fn index_of(&self, head: usize) -> Option<usize> {
        self.heads.binary_search(&head).ok()
    }
}

/// Build the round's relay plan.
///
/// Heads are processed from farthest to nearest the base station, so a
/// head's accumulated load is final before it chooses its own hop. Only
/// strictly closer heads qualify as relays, which makes the hop graph a
/// forest rooted at the base station. The benefit test charges the relay's
/// current load plus the one marginal packet unless a fixed forwarding
/// count is configured.
pub fn build_relay_plan(
    head_ids: &[usize],
    nodes: &[NodeState],
    base_station: Position,
    params: &EnergyParams,
    neighbor_radius_m: f64,
    forwarding_override: Option<u32>,
) -> RelayPlan {
    let mut plan = RelayPlan::all_direct(head_ids);
    if plan.heads.len() < 2 {
        return plan;
    }

    let bs_distance: Vec<f64> = plan
        .heads
        .iter()
        .map(|&h| distance(nodes[h].position, base_station))
        .collect();
    // alive nodes within the interaction radius of each head
    let neighbor_count: Vec<usize> = plan
        .heads
        .iter()
        .map(|&h| {
            nodes
                .iter()
                .filter(|n| {
                    n.alive
                        && n.id != h
                        && distance(n.position, nodes[h].position) <= neighbor_radius_m
                })
                .count()
        })
        .collect();

    let mut order: Vec<usize> = (0..plan.heads.len()).collect();
    order.sort_by(|&a, &b| bs_distance[b].total_cmp(&bs_distance[a]).then(plan.heads[a].cmp(&plan.heads[b])));

    for &i in &order {
        let my_dist = bs_distance[i];
        let my_pos = nodes[plan.heads[i]].position;
        let mut best: Option<(f64, usize)> = None;
        for j in 0..plan.heads.len() {
            if bs_distance[j] >= my_dist {
                continue;
            }
            let query = RelayQuery {
                to_relay_m: distance(my_pos, nodes[plan.heads[j]].position),
                relay_to_dest_m: bs_distance[j],
                to_dest_m: my_dist,
                forwarded_packets: forwarding_override
                    .unwrap_or(plan.forwarding_load[j] + 1),
            };
            if !relay_beneficial(params, &query) {
                continue;
            }
            let score = relay_score(
                nodes[plan.heads[j]].residual_energy_j,
                neighbor_count[j],
                bs_distance[j],
            );
            let better = match best {
                None => true,
                Some((s, bj)) => {
                    score > s || (score == s && plan.heads[j] < plan.heads[bj])
                }
            };
            if better {
                best = Some((score, j));
            }
        }
        if let Some((_, j)) = best {
            plan.next_hop[i] = NextHop::Relay(plan.heads[j]);
            plan.forwarding_load[j] += 1 + plan.forwarding_load[i];
        }
    }
    plan
}
