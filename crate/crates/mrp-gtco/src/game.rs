//! Candidate cluster-head election as a local volunteering game.
//!
//! Each node weighs the cost of serving as a cluster head against the
//! discounted payoff of staying a member. The discount is a penalty
//! coefficient driven by how the node's residual energy and degree rank
//! within its neighborhood: locally energy-rich, well-connected nodes are
//! punished for refusing, which pushes the volunteering probability toward
//! them. The mixed-strategy equilibrium probability is evaluated per node
//! and a coin flip decides candidacy.

use crate::net::{distance, NetworkConfig, NeighborView, NodeState, Position};
use rand::Rng;

/// Everything a node needs to evaluate its own volunteering probability.
#[derive(Clone, Debug)]
pub struct GameContext {
    pub node: usize,
    pub residual_energy_j: f64,
    pub degree: usize,
    /// Energy extrema over the node's neighborhood pool (itself included).
    pub energy_max_j: f64,
    pub energy_min_j: f64,
    /// Degree extrema over the same pool.
    pub degree_max: usize,
    pub degree_min: usize,
    /// Estimated one-round cost of serving as head / staying member.
    pub head_cost_j: f64,
    pub member_cost_j: f64,
}

/// Outcome of one node's candidacy coin flip.
#[derive(Clone, Copy, Debug)]
pub struct CandidateDraw {
    pub node: usize,
    pub probability: f64,
    pub draw: f64,
}

/// One round's candidate set with the full audit trail of draws.
#[derive(Clone, Debug, Default)]
pub struct CandidateSet {
    pub round: u32,
    /// Ids of candidate heads, ascending.
    pub candidates: Vec<usize>,
    pub draws: Vec<CandidateDraw>,
}

/// Penalty coefficient in `[0, 1]`.
///
/// Ranks the node's residual energy and degree against its neighborhood
/// extrema; each term falls back to the neutral 0.5 when the whole pool
/// ties on that attribute.
pub fn penalty(ctx: &GameContext, energy_weight: f64, degree_weight: f64) -> f64 {
    let energy_term = {
        let span = ctx.energy_max_j - ctx.energy_min_j;
        if span > 0.0 {
            (ctx.energy_max_j - ctx.residual_energy_j) / span
        } else {
            0.5
        }
    };
    let degree_term = {
        let span = ctx.degree_max as f64 - ctx.degree_min as f64;
        if span > 0.0 {
            (ctx.degree_max as f64 - ctx.degree as f64) / span
        } else {
            0.5
        }
    };
    (energy_weight * energy_term + degree_weight * degree_term).clamp(0.0, 1.0)
}

/// Pre-clustering estimates of the per-round head and member costs.
///
/// The head estimate assumes an average-sized cluster plus the configured
/// forwarding burden, sent to the nearer of the base station and the
/// configured destination-distance guess; the member estimate uses the
/// expected member-to-head distance for `k` clusters.
pub fn estimate_costs(
    node: &NodeState,
    base_station: Position,
    alive_count: usize,
    k: usize,
    config: &NetworkConfig,
) -> (f64, f64) {
    let k = k.max(1);
    let cluster_size = alive_count.div_ceil(k);
    let dest = distance(node.position, base_station).min(config.dest_distance_estimate_m);
    let head = config.energy.ch_round_energy_j(
        cluster_size,
        config.forwarding_estimate,
        dest,
        config.packet_bits,
    );
    let member_distance =
        crate::energy::expected_sq_member_distance_m2(config.area_side_m, k).sqrt();
    let member = config
        .energy
        .cm_round_energy_j(member_distance, config.packet_bits);
    (head, member)
}

/// Equilibrium probability of volunteering as cluster head.
///
/// Total on all inputs: a non-positive base (the penalty already makes
/// refusing strictly dominated) and the no-opponent case both pin the
/// probability to 1.
pub fn nash_probability(penalty: f64, head_cost_j: f64, member_cost_j: f64, degree: usize) -> f64 {
    debug_assert!(head_cost_j > 0.0 && member_cost_j > 0.0);
    if degree <= 1 {
        return 1.0;
    }
    let discounted = penalty * head_cost_j;
    if discounted <= member_cost_j {
        return 1.0;
    }
    let base = (discounted - member_cost_j) / discounted;
    let p = 1.0 - base.powf(1.0 / (degree as f64 - 1.0));
    p.clamp(0.0, 1.0)
}

/// Build per-node game contexts from a network snapshot.
///
/// Extremum pools include the node itself, so its own attributes always lie
/// within the pool's range. `k` is the cluster-head target used by the cost
/// estimates.
pub fn build_contexts(
    nodes: &[NodeState],
    views: &[NeighborView],
    base_station: Position,
    k: usize,
    config: &NetworkConfig,
) -> Vec<GameContext> {
    let alive_count = views.len();
    let mut degree_of = vec![0usize; nodes.len()];
    for v in views {
        degree_of[v.node] = v.degree();
    }
    views
        .iter()
        .map(|v| {
            let node = &nodes[v.node];
            let mut energy_max = node.residual_energy_j;
            let mut energy_min = node.residual_energy_j;
            let mut deg_max = v.degree();
            let mut deg_min = v.degree();
            for &nbr in &v.neighbors {
                let e = nodes[nbr].residual_energy_j;
                energy_max = energy_max.max(e);
                energy_min = energy_min.min(e);
                deg_max = deg_max.max(degree_of[nbr]);
                deg_min = deg_min.min(degree_of[nbr]);
            }
            let (head_cost_j, member_cost_j) =
                estimate_costs(node, base_station, alive_count, k, config);
            GameContext {
                node: v.node,
                residual_energy_j: node.residual_energy_j,
                degree: v.degree(),
                energy_max_j: energy_max,
                energy_min_j: energy_min,
                degree_max: deg_max,
                degree_min: deg_min,
                head_cost_j,
                member_cost_j,
            }
        })
        .collect()
}

/// Run the volunteering game for every alive node.
///
/// Draws are consumed in ascending node-id order; a node is a candidate iff
/// its probability is at least its draw. An empty outcome is legal and left
/// to the caller (that round every node reports straight to the base
/// station).
pub fn select_candidates<R: Rng>(
    nodes: &[NodeState],
    views: &[NeighborView],
    base_station: Position,
    k: usize,
    config: &NetworkConfig,
    round: u32,
    rng: &mut R,
) -> CandidateSet {
    let contexts = build_contexts(nodes, views, base_station, k, config);
    let mut set = CandidateSet {
        round,
        ..CandidateSet::default()
    };
    for ctx in &contexts {
        let phi = penalty(ctx, config.energy_penalty_weight, config.degree_penalty_weight);
        let p = nash_probability(phi, ctx.head_cost_j, ctx.member_cost_j, ctx.degree);
        let draw = rng.random_range(0.0..=1.0);
        set.draws.push(CandidateDraw {
            node: ctx.node,
            probability: p,
            draw,
        });
        if p >= draw {
            set.candidates.push(ctx.node);
        }
    }
    set
}
