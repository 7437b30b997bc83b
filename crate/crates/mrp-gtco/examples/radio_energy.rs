//! Radio cost curves and the closed-form optimal head count.

use mrp_gtco::energy::{optimal_cluster_count, EnergyParams};

fn main() {
    let params = EnergyParams::default();
    let bits = 4000;

    println!(
        "crossover distance d_o = {:.4} m (free space below, multipath above)",
        params.crossover_distance_m()
    );
    println!("\n   d (m)    tx (J)        rx (J)");
    for d in [0.0, 25.0, 50.0, 87.7, 100.0, 150.0, 200.0] {
        println!(
            "  {d:>6.1}   {:.6e}   {:.6e}",
            params.tx_energy_j(bits, d),
            params.rx_energy_j(bits)
        );
    }

    println!("\nhead-duty cost for a 10-node cluster at 50 m: {:.3e} J", {
        params.ch_round_energy_j(10, 0, 50.0, bits)
    });

    println!("\noptimal head count for 100 alive nodes in a 200 m square:");
    for (forwarding, dist) in [(2u32, 25.0), (3, 50.0), (5, 100.0)] {
        let k = optimal_cluster_count(&params, 100, 200.0, forwarding, dist);
        println!("  forwarding {forwarding}, destination {dist:>5.1} m -> k = {k}");
    }
}
