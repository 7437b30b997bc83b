//! The relay benefit test and a round's relay forest.
//!
//! Evaluates the closed-form saving of a relay route for a few geometries,
//! then builds a relay plan for ten heads in a 400 m field and prints the
//! hop structure.

use mrp_gtco::energy::EnergyParams;
use mrp_gtco::net::{deploy, distance, NetworkConfig};
use mrp_gtco::relay::{build_relay_plan, relay_beneficial, relay_saving_j_per_bit, NextHop, RelayQuery};

fn main() {
    let params = EnergyParams::default();

    println!("source->dest  source->relay  relay->dest  saving (J/bit)  relay?");
    for (to_dest, to_relay, relay_to_dest) in
        [(150.0, 75.0, 80.0), (80.0, 40.0, 40.0), (200.0, 100.0, 100.0)]
    {
        let q = RelayQuery {
            to_relay_m: to_relay,
            relay_to_dest_m: relay_to_dest,
            to_dest_m: to_dest,
            forwarded_packets: 1,
        };
        println!(
            "   {to_dest:>7.1}      {to_relay:>7.1}      {relay_to_dest:>7.1}     {:>+.3e}   {}",
            relay_saving_j_per_bit(&params, &q),
            relay_beneficial(&params, &q)
        );
    }

    let config = NetworkConfig {
        area_side_m: 400.0,
        rng_seed: 31,
        ..NetworkConfig::default()
    };
    let nodes = deploy(&config).unwrap();
    let heads: Vec<usize> = (0..nodes.len()).step_by(10).collect();
    let bs = config.base_station();
    let plan = build_relay_plan(&heads, &nodes, bs, &params, config.game_radius(), None);

    println!("\nrelay plan for {} heads (base station at the center):", plan.heads.len());
    for (i, &head) in plan.heads.iter().enumerate() {
        let d = distance(nodes[head].position, bs);
        match plan.next_hop[i] {
            NextHop::BaseStation => {
                println!("  head {head:>3} ({d:>5.1} m out) -> base station, forwards {}", plan.forwarding_load[i])
            }
            NextHop::Relay(r) => {
                println!(
                    "  head {head:>3} ({d:>5.1} m out) -> head {r} ({:.1} m hop), forwards {}",
                    distance(nodes[head].position, nodes[r].position),
                    plan.forwarding_load[i]
                )
            }
        }
    }
}
