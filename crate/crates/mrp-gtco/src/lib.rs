//! Round-based wireless-sensor-network lifetime simulator.
//!
//! The crate models a battery-powered sensor field reporting to a central
//! base station through elected cluster heads. The primary protocol,
//! MRP-GTCO, elects candidate heads through a penalized volunteering game,
//! trims them to a coverage/energy-optimal subset with a particle swarm,
//! and forwards between heads only where a closed-form energy test proves
//! a relay saves radio energy. Three comparison protocols (RLEACH, LGCA,
//! ECAGT) share the same radio model and round engine.
//!
//! # Quick start
//!
//! ```
//! use mrp_gtco::net::NetworkConfig;
//! use mrp_gtco::sim::run_simulation;
//!
//! let config = NetworkConfig {
//!     node_count: 20,
//!     area_side_m: 100.0,
//!     initial_energy_j: 0.05,
//!     k_override: Some(3),
//!     ..NetworkConfig::default()
//! };
//! let result = run_simulation(&config).unwrap();
//! assert!(result.summary.first_death_round.is_some());
//! ```
//!
//! # Runnable examples
//!
//! One example per major capability, under `examples/`:
//!
//! - `deploy_topology` — seeded deployment and neighbor statistics
//! - `radio_energy` — transmit/receive cost curves and the optimal head count
//! - `clustering_game` — penalty coefficients and volunteering probabilities
//! - `coverage_pso` — swarm-optimized final head selection
//! - `relay_planning` — the relay benefit test and a round's relay forest
//! - `lifetime_single_run` — one full run with lifetime milestones
//! - `protocol_comparison` — all protocols on shared seeds
//! - `cluster_head_sweep` — network energy versus fixed head count
//!
//! ```text
//! cargo run --release -p mrp-gtco --example lifetime_single_run
//! ```
//!
//! The `mrp-gtco` binary exposes the same machinery as `run`, `sweep`, and
//! `compare` subcommands over key=value config files.

pub mod baselines;
pub mod config;
pub mod coverage;
pub mod energy;
pub mod experiment;
pub mod game;
pub mod net;
pub mod relay;
pub mod report;
pub mod rng;
pub mod sim;

pub use net::{NetworkConfig, Protocol};
pub use sim::{run_simulation, LifetimeSummary, RoundMetrics, Simulation, SimulationResult};
