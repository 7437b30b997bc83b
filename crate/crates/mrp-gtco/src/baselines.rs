//! The three comparison protocols: RLEACH, LGCA, and ECAGT.
//!
//! All three share the radio model and the round engine with the primary
//! protocol but elect heads their own way and always transmit head-to-base
//! single hop. LGCA and ECAGT play a localized volunteering game followed
//! by a contention pass that keeps at most one head per contention radius;
//! RLEACH is threshold rotation scaled by residual energy.

use crate::net::{distance, NodeState};
use rand::Rng;

/// How ECAGT's energy factor enters the volunteering probability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EcagtInterpretation {
    /// Energy ratio as printed in the source formula; penalizes rich nodes.
    AsPrinted,
    /// Inverted ratio so high-energy nodes volunteer more; matches the
    /// formula's stated intent and is the default.
    EnergyForward,
}

/// Knobs of the baseline protocols.
#[derive(Clone, Copy, Debug)]
pub struct BaselineParams {
    /// Payoff parameter of the localized games.
    pub payoff_w: f64,
    /// Exponent of ECAGT's energy factor.
    pub ecagt_alpha: f64,
    /// Desired head fraction for RLEACH's rotation threshold.
    pub rleach_p: f64,
    pub ecagt_interpretation: EcagtInterpretation,
}

impl Default for BaselineParams {
    fn default() -> Self {
        Self {
            payoff_w: 0.05,
            ecagt_alpha: 8.0,
            rleach_p: 0.1,
            ecagt_interpretation: EcagtInterpretation::EnergyForward,
        }
    }
}

impl BaselineParams {
    pub(crate) fn validate(&self) -> Result<(), String> {
        if !(self.payoff_w > 0.0 && self.payoff_w < 1.0) {
            return Err("payoff_w must lie in (0, 1)".into());
        }
        if !(self.ecagt_alpha > 0.0) {
            return Err("ecagt_alpha must be > 0".into());
        }
        if !(self.rleach_p > 0.0 && self.rleach_p < 1.0) {
            return Err("rleach_p must lie in (0, 1)".into());
        }
        Ok(())
    }
}

/// LGCA volunteering probability `1 - w^(1/(degree-1))`.
///
/// A node with at most one neighbor has nobody to share the duty with and
/// volunteers outright.
pub fn lgca_probability(degree: usize, payoff_w: f64) -> f64 {
    if degree <= 1 {
        return 1.0;
    }
    (1.0 - payoff_w.powf(1.0 / (degree as f64 - 1.0))).clamp(0.0, 1.0)
}

/// ECAGT volunteering probability: the LGCA term scaled by an energy factor.
pub fn ecagt_probability(
    degree: usize,
    payoff_w: f64,
    energy_j: f64,
    avg_energy_j: f64,
    alpha: f64,
    interpretation: EcagtInterpretation,
) -> f64 {
    debug_assert!(energy_j > 0.0 && avg_energy_j > 0.0);
    if degree <= 1 {
        return 1.0;
    }
    let ratio = match interpretation {
        EcagtInterpretation::AsPrinted => energy_j / avg_energy_j,
        EcagtInterpretation::EnergyForward => avg_energy_j / energy_j,
    };
    let p = 1.0 - payoff_w.powf(1.0 / (degree as f64 - 1.0)) * ratio.powf(alpha);
    p.clamp(0.0, 1.0)
}

/// RLEACH election threshold: the classic rotation term scaled by the
/// node's remaining energy fraction. Ineligible nodes get 0.
pub fn rleach_threshold(
    round: u32,
    head_fraction: f64,
    residual_j: f64,
    initial_j: f64,
    eligible: bool,
) -> f64 {
    if !eligible || residual_j <= 0.0 {
        return 0.0;
    }
    let cycle = (1.0 / head_fraction).floor().max(1.0);
    let phase = f64::from(round % cycle as u32);
    let base = head_fraction / (1.0 - head_fraction * phase);
    (base * residual_j / initial_j).clamp(0.0, 1.0)
}

/// Rounds a node must wait after serving before RLEACH eligibility returns.
pub fn rleach_cycle_rounds(head_fraction: f64) -> u32 {
    (1.0 / head_fraction).floor().max(1.0) as u32
}

/// LGCA's backoff contention: candidates claim head status in backoff order
/// and a claim stands only when no standing head is within the radius.
///
/// The result is a maximal independent set of the radius graph restricted
/// to the candidates, deterministic given the generator stream.
pub fn lgca_final_contention<R: Rng>(
    candidates: &[usize],
    nodes: &[NodeState],
    radius_m: f64,
    rng: &mut R,
) -> Vec<usize> {
    let mut sorted = candidates.to_vec();
    sorted.sort_unstable();
    let mut backoffs: Vec<(f64, usize)> = sorted
        .iter()
        .map(|&id| (rng.random_range(0.0..1.0), id))
        .collect();
    backoffs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    select_independent(backoffs.into_iter().map(|(_, id)| id), nodes, radius_m)
}

/// ECAGT's final selection: highest residual energy wins within the radius,
/// ties to the lower id.
pub fn ecagt_final_selection(
    candidates: &[usize],
    nodes: &[NodeState],
    radius_m: f64,
) -> Vec<usize> {
    let mut order = candidates.to_vec();
    order.sort_by(|&a, &b| {
        nodes[b]
            .residual_energy_j
            .total_cmp(&nodes[a].residual_energy_j)
            .then(a.cmp(&b))
    });
    select_independent(order.into_iter(), nodes, radius_m)
}

fn select_independent(
    order: impl Iterator<Item = usize>,
    nodes: &[NodeState],
    radius_m: f64,
) -> Vec<usize> {
    let mut heads: Vec<usize> = Vec::new();
    for id in order {
        let blocked = heads
            .iter()
            .any(|&h| distance(nodes[id].position, nodes[h].position) <= radius_m);
        if !blocked {
            heads.push(id);
        }
    }
    heads.sort_unstable();
    heads
}
