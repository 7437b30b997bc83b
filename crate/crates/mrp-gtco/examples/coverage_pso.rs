//! Swarm-optimized final head selection.
//!
//! Takes a synthetic candidate set, runs the particle swarm, and compares
//! its head set against the best of 500 random subsets.

use mrp_gtco::coverage::{cluster_disk_radius_m, objective, pso_select, CoverageParams, PsoParams};
use mrp_gtco::net::{deploy, NetworkConfig};
use mrp_gtco::rng::stream_rng;
use rand::Rng;

fn main() {
    let config = NetworkConfig {
        rng_seed: 23,
        ..NetworkConfig::default()
    };
    let mut nodes = deploy(&config).unwrap();
    let mut wear = stream_rng(23, "wear");
    for n in &mut nodes {
        n.residual_energy_j *= wear.random_range(0.3..1.0);
    }

    let candidates: Vec<usize> = (0..nodes.len()).step_by(3).collect(); // 34 candidates
    let k = 10;
    let cov = CoverageParams {
        radius_m: cluster_disk_radius_m(config.area_side_m, k),
        coverage_weight: config.coverage_weight,
        energy_weight: config.energy_weight,
    };
    let pso = PsoParams::default();

    let mut rng = stream_rng(23, "pso-demo");
    let run = pso_select(
        &candidates,
        &nodes,
        k,
        &cov,
        &pso,
        config.initial_energy_j,
        config.area_side_m,
        &mut rng,
    );
    let pso_fitness = objective(&run.selected, &nodes, &cov, config.initial_energy_j);
    println!("selected heads: {:?}", run.selected);
    println!(
        "fitness {:.4} (initial swarm best {:.4}, {} iterations, monotone: {})",
        pso_fitness,
        run.best_fitness_by_iteration.first().unwrap(),
        run.best_fitness_by_iteration.len() - 1,
        run.best_fitness_by_iteration
            .windows(2)
            .all(|w| w[1] >= w[0])
    );

    let mut best_random = f64::NEG_INFINITY;
    let mut rrng = stream_rng(23, "random-baseline");
    for _ in 0..500 {
        let mut pool = candidates.clone();
        for i in 0..k {
            let j = rrng.random_range(i..pool.len());
            pool.swap(i, j);
        }
        best_random = best_random.max(objective(
            &pool[..k],
            &nodes,
            &cov,
            config.initial_energy_j,
        ));
    }
    println!("best of 500 random {k}-subsets: {best_random:.4}");
}
