//! Penalty coefficients and volunteering probabilities for one snapshot.
//!
//! Shows how the equilibrium pressure shifts onto locally energy-rich,
//! well-connected nodes: the five highest and lowest volunteering
//! probabilities of a mid-life network snapshot.

use mrp_gtco::game::{build_contexts, nash_probability, penalty, select_candidates};
use mrp_gtco::net::{deploy, neighbor_view, NetworkConfig};
use mrp_gtco::rng::{stream, stream_rng};

fn main() {
    let config = NetworkConfig {
        rng_seed: 11,
        ..NetworkConfig::default()
    };
    let mut nodes = deploy(&config).unwrap();

    // pretend the network has been running for a while
    let mut wear = stream_rng(99, "wear");
    for n in &mut nodes {
        use rand::Rng;
        n.residual_energy_j *= wear.random_range(0.4..1.0);
    }

    let views = neighbor_view(&nodes, config.game_radius());
    let contexts = build_contexts(&nodes, &views, config.base_station(), 10, &config);

    let mut rows: Vec<(usize, f64, f64)> = contexts
        .iter()
        .map(|ctx| {
            let phi = penalty(ctx, config.energy_penalty_weight, config.degree_penalty_weight);
            let p = nash_probability(phi, ctx.head_cost_j, ctx.member_cost_j, ctx.degree);
            (ctx.node, phi, p)
        })
        .collect();
    rows.sort_by(|a, b| b.2.total_cmp(&a.2));

    println!("node  penalty  p(volunteer)");
    for &(id, phi, p) in rows.iter().take(5) {
        println!("{id:>4}  {phi:>7.3}  {p:.4}");
    }
    println!(" ...");
    for &(id, phi, p) in rows.iter().rev().take(5).rev() {
        println!("{id:>4}  {phi:>7.3}  {p:.4}");
    }

    let mut rng = stream_rng(config.rng_seed, stream::CANDIDATE);
    let set = select_candidates(
        &nodes,
        &views,
        config.base_station(),
        10,
        &config,
        1,
        &mut rng,
    );
    println!(
        "\ncandidate heads this round: {} of {} alive",
        set.candidates.len(),
        views.len()
    );
}
