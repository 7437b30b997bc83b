//! Network topology: deployment, node state, and neighbor queries.
//!
//! The base station is a distinguished endpoint with unlimited energy at the
//! center of the monitoring area; it is never represented as a `NodeState`.

use crate::baselines::BaselineParams;
use crate::coverage::PsoParams;
use crate::energy::EnergyParams;
use crate::rng::{self, stream_rng};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Configuration rejected before a run starts.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// A point in the monitoring area, meters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Position {
    pub x_m: f64,
    pub y_m: f64,
}

impl Position {
    pub fn new(x_m: f64, y_m: f64) -> Self {
        Self { x_m, y_m }
    }

    pub fn distance_to(&self, other: Position) -> f64 {
        distance(*self, other)
    }
}

/// Euclidean distance between two points, meters.
pub fn distance(a: Position, b: Position) -> f64 {
    (a.x_m - b.x_m).hypot(a.y_m - b.y_m)
}

/// Role a node holds within the current round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Role {
    #[default]
    Member,
    Candidate,
    ClusterHead,
}

/// Per-node mutable state. Position is fixed after deployment.
#[derive(Clone, Debug)]
pub struct NodeState {
    pub id: usize,
    pub position: Position,
    pub residual_energy_j: f64,
    pub alive: bool,
    pub role: Role,
    pub death_round: Option<u32>,
}

impl NodeState {
    pub fn is_active(&self) -> bool {
        self.alive && self.residual_energy_j > 0.0
    }
}

/// The clustering protocol a run executes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Protocol {
    MrpGtco,
    MrpGtcoNoRelay,
    Rleach,
    Lgca,
    Ecagt,
}

impl Protocol {
    pub const ALL: [Protocol; 5] = [
        Protocol::MrpGtco,
        Protocol::MrpGtcoNoRelay,
        Protocol::Rleach,
        Protocol::Lgca,
        Protocol::Ecagt,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Protocol::MrpGtco => "MRP-GTCO",
            Protocol::MrpGtcoNoRelay => "MRP-GTCO-noRelay",
            Protocol::Rleach => "RLEACH",
            Protocol::Lgca => "LGCA",
            Protocol::Ecagt => "ECAGT",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mrp-gtco" => Ok(Protocol::MrpGtco),
            "mrp-gtco-norelay" => Ok(Protocol::MrpGtcoNoRelay),
            "rleach" => Ok(Protocol::Rleach),
            "lgca" => Ok(Protocol::Lgca),
            "ecagt" => Ok(Protocol::Ecagt),
            other => Err(ConfigError::Invalid(format!("unknown protocol `{other}`"))),
        }
    }
}

/// Immutable parameters of one simulation run.
#[derive(Clone, Debug)]
pub struct NetworkConfig {
    /// Side length of the square monitoring area, meters.
    pub area_side_m: f64,
    pub node_count: usize,
    pub initial_energy_j: f64,
    pub packet_bits: u64,
    pub energy: EnergyParams,
    /// Weight of the coverage term in the cluster-head objective.
    pub coverage_weight: f64,
    /// Weight of the residual-energy term in the cluster-head objective.
    pub energy_weight: f64,
    /// Weight of the residual-energy term in the penalty coefficient.
    pub energy_penalty_weight: f64,
    /// Weight of the node-degree term in the penalty coefficient.
    pub degree_penalty_weight: f64,
    /// Assumed per-head relay forwarding count used by the analytic model
    /// and the pre-clustering cost estimates.
    pub forwarding_estimate: u32,
    /// Assumed head-to-destination distance for the same estimates, meters.
    pub dest_distance_estimate_m: f64,
    /// Fixed cluster-head target; `None` derives it from the alive count.
    pub k_override: Option<usize>,
    pub rng_seed: u64,
    pub protocol: Protocol,
    /// Interaction radius for neighbor queries and baseline contention,
    /// meters.
    pub neighbor_radius_m: f64,
    /// Radius of the clustering game's interaction neighborhood (also used
    /// for relay scoring), meters; `None` falls back to
    /// `neighbor_radius_m`.
    pub game_radius_m: Option<f64>,
    pub baseline: BaselineParams,
    /// Coverage-disk radius for the objective; `None` uses the cluster-disk
    /// radius `M / sqrt(pi * K)` of the current round.
    pub coverage_radius_m: Option<f64>,
    pub pso: PsoParams,
    pub round_cap: u32,
    /// Flat per-node energy debited each round before traffic; default 0.
    pub per_round_overhead_j: f64,
    /// Fixed forwarding count for the relay predicate instead of the
    /// relay's marginal load; diagnostic knob.
    pub relay_forwarding_override: Option<u32>,
}

impl Default for NetworkConfig {
    /// 200 m x 200 m / 100-node reference setup.
    fn default() -> Self {
        Self {
            area_side_m: 200.0,
            node_count: 100,
            initial_energy_j: 0.5,
            packet_bits: 4000,
            energy: EnergyParams::default(),
            coverage_weight: 0.5,
            energy_weight: 0.5,
            energy_penalty_weight: 0.7,
            degree_penalty_weight: 0.3,
            forwarding_estimate: 3,
            dest_distance_estimate_m: 50.0,
            k_override: None,
            rng_seed: 1,
            protocol: Protocol::MrpGtco,
            neighbor_radius_m: 30.0,
            game_radius_m: None,
            baseline: BaselineParams::default(),
            coverage_radius_m: None,
            pso: PsoParams::default(),
            round_cap: 5000,
            per_round_overhead_j: 0.0,
            relay_forwarding_override: None,
        }
    }
}

impl NetworkConfig {
    /// The base station sits at the center of the area.
    pub fn base_station(&self) -> Position {
        Position::new(self.area_side_m / 2.0, self.area_side_m / 2.0)
    }

    /// Interaction radius of the clustering game, meters.
    pub fn game_radius(&self) -> f64 {
        self.game_radius_m.unwrap_or(self.neighbor_radius_m)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        fn fail(msg: impl Into<String>) -> Result<(), ConfigError> {
            Err(ConfigError::Invalid(msg.into()))
        }
        if !(self.area_side_m > 0.0) {
            return fail("area_side_m must be > 0");
        }
        if self.node_count < 2 {
            return fail("node_count must be >= 2");
        }
        if !(self.initial_energy_j > 0.0) {
            return fail("initial_energy_j must be > 0");
        }
        self.energy.validate().map_err(ConfigError::Invalid)?;
        if (self.coverage_weight + self.energy_weight - 1.0).abs() > 1e-9
            || self.coverage_weight < 0.0
            || self.energy_weight < 0.0
        {
            return fail("coverage_weight + energy_weight must equal 1 with both >= 0");
        }
        if (self.energy_penalty_weight + self.degree_penalty_weight - 1.0).abs() > 1e-9
            || self.energy_penalty_weight < 0.0
            || self.degree_penalty_weight < 0.0
        {
            return fail("energy_penalty_weight + degree_penalty_weight must equal 1 with both >= 0");
        }
        if !(self.dest_distance_estimate_m > 0.0) {
            return fail("dest_distance_estimate_m must be > 0");
        }
        if !(self.neighbor_radius_m > 0.0) {
            return fail("neighbor_radius_m must be > 0");
        }
        if let Some(r) = self.game_radius_m {
            if !(r > 0.0) {
                return fail("game_radius_m must be > 0");
            }
        }
        if let Some(k) = self.k_override {
            if k < 1 {
                return fail("k_override must be >= 1");
            }
        }
        if let Some(r) = self.coverage_radius_m {
            if !(r > 0.0) {
                return fail("coverage_radius_m must be > 0");
            }
        }
        if self.per_round_overhead_j < 0.0 {
            return fail("per_round_overhead_j must be >= 0");
        }
        self.baseline.validate().map_err(ConfigError::Invalid)?;
        self.pso.validate().map_err(ConfigError::Invalid)?;
        Ok(())
    }
}

/// Symmetric neighbor lists within the interaction radius.
#[derive(Clone, Debug)]
pub struct NeighborView {
    pub node: usize,
    /// Ids of alive nodes within the radius, ascending; never contains `node`.
    pub neighbors: Vec<usize>,
}

impl NeighborView {
    pub fn degree(&self) -> usize {
        self.neighbors.len()
    }
}

/// Place `node_count` nodes uniformly at random in the area.
///
/// Reproducible from `rng_seed`; every node starts alive at full energy.
pub fn deploy(config: &NetworkConfig) -> Result<Vec<NodeState>, ConfigError> {
    config.validate()?;
    let mut rng = stream_rng(config.rng_seed, rng::stream::DEPLOY);
    let nodes = (0..config.node_count)
        .map(|id| NodeState {
            id,
            position: Position::new(
                rng.random_range(0.0..=config.area_side_m),
                rng.random_range(0.0..=config.area_side_m),
            ),
            residual_energy_j: config.initial_energy_j,
            alive: true,
            role: Role::Member,
            death_round: None,
        })
        .collect();
    Ok(nodes)
}

/// Adjacency by Euclidean distance `<= radius` among alive nodes.
///
/// Views are returned for alive nodes only, in ascending id order.
pub fn neighbor_view(nodes: &[NodeState], radius_m: f64) -> Vec<NeighborView> {
    let alive: Vec<&NodeState> = nodes.iter().filter(|n| n.alive).collect();
    let mut views: Vec<NeighborView> = alive
        .iter()
        .map(|n| NeighborView {
            node: n.id,
            neighbors: Vec::new(),
        })
        .collect();
    for i in 0..alive.len() {
        for j in (i + 1)..alive.len() {
            if distance(alive[i].position, alive[j].position) <= radius_m {
                views[i].neighbors.push(alive[j].id);
                views[j].neighbors.push(alive[i].id);
            }
        }
    }
    for v in &mut views {
        v.neighbors.sort_unstable();
    }
    views
}
