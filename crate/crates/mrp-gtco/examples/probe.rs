// Scratch instrumentation for calibrating defaults. Not part of the
// documented example set.

use mrp_gtco::net::{NetworkConfig, Protocol};
use mrp_gtco::sim::{Simulation, StopCondition};

fn table_config(seed: u64, protocol: Protocol) -> NetworkConfig {
    NetworkConfig {
        rng_seed: seed,
        protocol,
        k_override: Some(10),
        ..NetworkConfig::default()
    }
}

fn fdn_of(config: NetworkConfig) -> u32 {
    let mut sim = Simulation::new(config).unwrap();
    sim.run_until(StopCondition::FirstDeath)
        .summary
        .first_death_round
        .unwrap_or(0)
}

fn median(mut v: Vec<u32>) -> u32 {
    v.sort();
    v[v.len() / 2]
}

fn main() {
    println!("-- (game radius, coverage radius) scan: MRP-GTCO fdn medians, 5 seeds --");
    for game_r in [12.0, 15.0, 18.0, 20.0] {
        for cov_r in [None, Some(50.0), Some(55.0), Some(60.0), Some(65.0), Some(70.0)] {
            let fdns: Vec<u32> = (1..=5u64)
                .map(|seed| {
                    let mut config = table_config(seed, Protocol::MrpGtco);
                    config.game_radius_m = Some(game_r);
                    config.coverage_radius_m = cov_r;
                    fdn_of(config)
                })
                .collect();
            println!(
                "game {game_r:>4} cov {:>4}: fdn {fdns:?} median {}",
                cov_r.map_or("dflt".to_string(), |r| format!("{r}")),
                median(fdns.clone())
            );
        }
    }

    println!("\n-- lambda1 sensitivity at candidate cells (seed-median fdn/ldn, 3 seeds) --");
    for (game_r, cov_r) in [(15.0, 60.0), (15.0, 65.0), (12.0, 60.0)] {
        for lambda in [0.1, 0.5, 0.9] {
            let mut fdns = Vec::new();
            let mut ldns = Vec::new();
            for seed in 1..=3u64 {
                let mut config = table_config(seed, Protocol::MrpGtco);
                config.game_radius_m = Some(game_r);
                config.coverage_radius_m = Some(cov_r);
                config.coverage_weight = lambda;
                config.energy_weight = 1.0 - lambda;
                let mut sim = Simulation::new(config).unwrap();
                let r = sim.run_until(StopCondition::AllDead);
                fdns.push(r.summary.first_death_round.unwrap_or(0));
                ldns.push(r.summary.last_death_round.unwrap_or(0));
            }
            println!(
                "game {game_r} cov {cov_r} lambda1 {lambda}: fdn median {} ldn median {}",
                median(fdns),
                median(ldns)
            );
        }
    }
}
