//! One full lifetime run with the reference configuration.

use mrp_gtco::net::NetworkConfig;
use mrp_gtco::sim::run_simulation;

fn main() {
    let config = NetworkConfig {
        rng_seed: 1,
        k_override: Some(10),
        game_radius_m: Some(15.0),
        coverage_radius_m: Some(60.0),
        ..NetworkConfig::default()
    };
    let result = run_simulation(&config).unwrap();
    let s = result.summary;
    println!(
        "lifetime: first death {:?}, half dead {:?}, last death {:?} ({} rounds run)",
        s.first_death_round, s.half_death_round, s.last_death_round, s.rounds_run
    );

    for probe in [1usize, 100, 400, 800] {
        if let Some(r) = result.rounds.get(probe - 1) {
            println!(
                "round {:>4}: alive {:>3}, residual {:>7.3} J, heads {:>2}, packets so far {}",
                r.round, r.alive, r.total_residual_j, r.ch_count, r.packets_cumulative
            );
        }
    }

    let audit = result.audit;
    println!(
        "ledger: {:.6} J deployed, {:.6} J debited, {:.2e} J imbalance",
        audit.initial_total_j,
        audit.total_debited_j,
        (audit.initial_total_j - audit.final_total_j - audit.total_debited_j).abs()
    );
}
