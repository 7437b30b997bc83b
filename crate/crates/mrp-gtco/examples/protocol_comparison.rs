//! All five protocol variants on shared seeds and topologies.

use mrp_gtco::net::{NetworkConfig, Protocol};
use mrp_gtco::sim::run_simulation;

fn main() {
    let seeds = [1u64, 2, 3];
    println!("protocol           seed  fdn   hdn   ldn");
    for protocol in Protocol::ALL {
        for seed in seeds {
            let config = NetworkConfig {
                protocol,
                rng_seed: seed,
                k_override: Some(10),
                game_radius_m: Some(15.0),
                coverage_radius_m: Some(60.0),
                ..NetworkConfig::default()
            };
            let s = run_simulation(&config).unwrap().summary;
            println!(
                "{:<18} {seed:>4}  {:<5} {:<5} {:<5}",
                protocol.name(),
                s.first_death_round.unwrap_or(0),
                s.half_death_round.unwrap_or(0),
                s.last_death_round.unwrap_or(0)
            );
        }
    }
}
