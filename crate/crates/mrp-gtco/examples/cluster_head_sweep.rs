//! Network energy as a function of the fixed head count.
//!
//! Replicates the head-count experiment: for each k the mean per-round
//! network energy before the first death, averaged over seeds.

use mrp_gtco::net::NetworkConfig;
use mrp_gtco::sim::{Simulation, StopCondition};

fn main() {
    let seeds: Vec<u64> = (1..=5).collect();
    println!("   k   mean pre-first-death round energy (J)");
    for k in 2..=14usize {
        let mut means = Vec::new();
        for &seed in &seeds {
            let config = NetworkConfig {
                rng_seed: seed,
                k_override: Some(k),
                game_radius_m: Some(15.0),
                coverage_radius_m: Some(60.0),
                ..NetworkConfig::default()
            };
            let mut sim = Simulation::new(config).unwrap();
            let initial = sim.audit().initial_total_j;
            let result = sim.run_until(StopCondition::FirstDeath);
            if let Some(fdn) = result.summary.first_death_round {
                if fdn > 1 {
                    let residual = result.rounds[(fdn - 2) as usize].total_residual_j;
                    means.push((initial - residual) / f64::from(fdn - 1));
                }
            }
        }
        let mean = means.iter().sum::<f64>() / means.len().max(1) as f64;
        let bar = "#".repeat((mean * 2000.0) as usize);
        println!("  {k:>2}   {mean:.5}  {bar}");
    }
}
