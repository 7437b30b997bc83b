//! Radio and fusion energy costs, plus the closed-form cluster-head count.
//!
//! Transmission follows the first-order radio model: a fixed electronics
//! cost per bit plus an amplifier term that switches from `d^2` (free space)
//! to `d^4` (multipath) at the crossover distance `d_o = sqrt(fs / mp)`.
//! Both branches agree at `d_o`, so the cost is continuous in distance.
//! All functions here are pure; the simulation engine owns the debiting.

use std::f64::consts::PI;

/// Radio and data-fusion energy coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyParams {
    /// Transceiver electronics cost, J/bit.
    pub elec_j_per_bit: f64,
    /// Free-space amplifier coefficient, J/bit/m^2.
    pub fs_j_per_bit_m2: f64,
    /// Multipath amplifier coefficient, J/bit/m^4.
    pub mp_j_per_bit_m4: f64,
    /// Data-fusion cost, J/bit.
    pub fusion_j_per_bit: f64,
}

impl Default for EnergyParams {
    /// Standard desk-scale radio constants: 50 nJ/bit electronics,
    /// 10 pJ/bit/m^2 free space, 0.0013 pJ/bit/m^4 multipath, 5 nJ/bit fusion.
    fn default() -> Self {
        Self {
            elec_j_per_bit: 50e-9,
            fs_j_per_bit_m2: 10e-12,
            mp_j_per_bit_m4: 0.0013e-12,
            fusion_j_per_bit: 5e-9,
        }
    }
}

impl EnergyParams {
    pub(crate) fn validate(&self) -> Result<(), String> {
        for (name, v) in [
            ("elec_j_per_bit", self.elec_j_per_bit),
            ("fs_j_per_bit_m2", self.fs_j_per_bit_m2),
            ("mp_j_per_bit_m4", self.mp_j_per_bit_m4),
            ("fusion_j_per_bit", self.fusion_j_per_bit),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(format!("{name} must be a positive finite number"));
            }
        }
        Ok(())
    }

    /// Distance at which the amplifier switches regimes, meters.
    pub fn crossover_distance_m(&self) -> f64 {
        (self.fs_j_per_bit_m2 / self.mp_j_per_bit_m4).sqrt()
    }

    /// Amplifier cost per bit at distance `d_m`, J/bit.
    pub fn amplifier_cost_j_per_bit(&self, d_m: f64) -> f64 {
        if d_m <= self.crossover_distance_m() {
            self.fs_j_per_bit_m2 * d_m * d_m
        } else {
            self.mp_j_per_bit_m4 * d_m.powi(4)
        }
    }

    /// Energy to transmit `bits` over distance `d_m`, joules.
    pub fn tx_energy_j(&self, bits: u64, d_m: f64) -> f64 {
        let bits = bits as f64;
        bits * self.elec_j_per_bit + bits * self.amplifier_cost_j_per_bit(d_m)
    }

    /// Energy to receive `bits`, joules.
    pub fn rx_energy_j(&self, bits: u64) -> f64 {
        bits as f64 * self.elec_j_per_bit
    }

    /// One round of cluster-head duty, joules.
    ///
    /// `cluster_size` counts the head itself plus the members whose packets
    /// arrived; `forwarded` is the number of packets relayed for other
    /// heads. The head receives `cluster_size - 1 + forwarded` packets,
    /// fuses its own cluster's `cluster_size` packets, and transmits
    /// `1 + forwarded` packets to `dest_distance_m`.
    pub fn ch_round_energy_j(
        &self,
        cluster_size: usize,
        forwarded: u32,
        dest_distance_m: f64,
        bits: u64,
    ) -> f64 {
        debug_assert!(cluster_size >= 1);
        let received = (cluster_size - 1) as f64 + f64::from(forwarded);
        let fused = cluster_size as f64;
        let sent = 1.0 + f64::from(forwarded);
        received * self.rx_energy_j(bits)
            + fused * bits as f64 * self.fusion_j_per_bit
            + sent * self.tx_energy_j(bits, dest_distance_m)
    }

    /// One round of cluster-member duty: a single packet to the head.
    pub fn cm_round_energy_j(&self, head_distance_m: f64, bits: u64) -> f64 {
        self.tx_energy_j(bits, head_distance_m)
    }
}

/// Expected squared member-to-head distance when the area is split into `k`
/// equal clusters: `M^2 / (2 pi k)`, square meters.
pub fn expected_sq_member_distance_m2(area_side_m: f64, k: usize) -> f64 {
    debug_assert!(k >= 1);
    area_side_m * area_side_m / (2.0 * PI * k as f64)
}

/// Analytic per-round energy of a network partitioned into `k` clusters.
///
/// Used for reasoning about the optimal head count, not for simulation
/// accounting.
pub fn network_round_energy_j(
    params: &EnergyParams,
    node_count: usize,
    k: usize,
    area_side_m: f64,
    forwarded: u32,
    dest_distance_m: f64,
    bits: u64,
) -> f64 {
    debug_assert!(k >= 1 && k <= node_count);
    let n = node_count as f64;
    let k_f = k as f64;
    let nc = f64::from(forwarded);
    let l = bits as f64;
    n * l * params.fusion_j_per_bit
        + params.fs_j_per_bit_m2 * l * n * area_side_m * area_side_m / (2.0 * PI * k_f)
        + (2.0 * n + k_f * nc) * l * params.elec_j_per_bit
        + k_f * l * (nc + 1.0) * params.fs_j_per_bit_m2 * dest_distance_m * dest_distance_m
}

/// Real-valued minimizer of [`network_round_energy_j`] over the head count.
pub fn optimal_cluster_count_unrounded(
    params: &EnergyParams,
    alive_count: usize,
    area_side_m: f64,
    forwarded: u32,
    dest_distance_m: f64,
) -> f64 {
    let nc = f64::from(forwarded);
    let denom = 2.0
        * PI
        * (params.elec_j_per_bit * nc
            + params.fs_j_per_bit_m2 * (nc + 1.0) * dest_distance_m * dest_distance_m);
    area_side_m * (params.fs_j_per_bit_m2 * alive_count as f64 / denom).sqrt()
}

/// Optimal cluster-head count for the current alive population.
///
/// Rounds half up, then clamps to `[1, alive_count]`.
pub fn optimal_cluster_count(
    params: &EnergyParams,
    alive_count: usize,
    area_side_m: f64,
    forwarded: u32,
    dest_distance_m: f64,
) -> usize {
    debug_assert!(alive_count >= 1);
    let raw = optimal_cluster_count_unrounded(
        params,
        alive_count,
        area_side_m,
        forwarded,
        dest_distance_m,
    );
    (raw.round() as usize).clamp(1, alive_count)
}
