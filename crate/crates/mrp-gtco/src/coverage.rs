//! Final cluster-head selection by coverage/energy optimization.
//!
//! A particle swarm explores `k` virtual head positions in the plane. Each
//! particle is scored by first snapping its virtual positions to distinct
//! nearest candidates and then evaluating the realized candidate subset, so
//! the optimizer only ever compares head sets that actually exist. The
//! swarm's global best therefore directly yields the final head set.

use crate::net::{distance, NodeState, Position};
use rand::Rng;

/// Radius of the idealized cluster disk for `k` clusters.
pub fn cluster_disk_radius_m(area_side_m: f64, k: usize) -> f64 {
    area_side_m / (std::f64::consts::PI * k.max(1) as f64).sqrt()
}

/// Weights and radius of the head-selection objective.
#[derive(Clone, Copy, Debug)]
pub struct CoverageParams {
    pub radius_m: f64,
    pub coverage_weight: f64,
    pub energy_weight: f64,
}

/// Swarm hyperparameters.
#[derive(Clone, Copy, Debug)]
pub struct PsoParams {
    pub population: usize,
    pub iterations: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Per-component velocity cap, meters; `None` uses a quarter of the area
    /// side.
    pub velocity_cap_m: Option<f64>,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            population: 30,
            iterations: 50,
            inertia: 0.72,
            cognitive: 1.49,
            social: 1.49,
            velocity_cap_m: None,
        }
    }
}

impl PsoParams {
    pub(crate) fn validate(&self) -> Result<(), String> {
        if self.population == 0 {
            return Err("pso_population must be >= 1".into());
        }
        if self.inertia < 0.0 || self.cognitive < 0.0 || self.social < 0.0 {
            return Err("pso coefficients must be >= 0".into());
        }
        if let Some(v) = self.velocity_cap_m {
            if !(v > 0.0) {
                return Err("pso_velocity_cap_m must be > 0".into());
            }
        }
        Ok(())
    }
}

/// 1 if the head covers the node (distance at most the radius), else 0.
pub fn coverage_value(head: Position, node: Position, radius_m: f64) -> bool {
    distance(head, node) <= radius_m
}

/// Whether any head in the set covers the node; an empty set covers nothing.
pub fn joint_coverage(heads: &[Position], node: Position, radius_m: f64) -> bool {
    heads.iter().any(|&h| coverage_value(h, node, radius_m))
}

/// Fraction of nodes covered by at least one head.
///
/// Returns `None` for an empty node set, which leaves the rate undefined.
pub fn coverage_rate(heads: &[Position], nodes: &[Position], radius_m: f64) -> Option<f64> {
    if nodes.is_empty() {
        return None;
    }
    let covered = nodes
        .iter()
        .filter(|&&n| joint_coverage(heads, n, radius_m))
        .count();
    Some(covered as f64 / nodes.len() as f64)
}

/// Head-set fitness: weighted coverage rate plus the heads' pooled residual
/// energy normalized by the full network budget.
pub fn objective(
    head_ids: &[usize],
    nodes: &[NodeState],
    params: &CoverageParams,
    initial_energy_j: f64,
) -> f64 {
    debug_assert!(!head_ids.is_empty());
    let alive: Vec<Position> = nodes.iter().filter(|n| n.alive).map(|n| n.position).collect();
    if alive.is_empty() {
        return 0.0;
    }
    let head_positions: Vec<Position> = head_ids.iter().map(|&id| nodes[id].position).collect();
    let rate = coverage_rate(&head_positions, &alive, params.radius_m).unwrap_or(0.0);
    let energy_sum: f64 = head_ids.iter().map(|&id| nodes[id].residual_energy_j).sum();
    params.coverage_weight * rate
        + params.energy_weight * energy_sum / (initial_energy_j * alive.len() as f64)
}

/// Outcome of one swarm run.
#[derive(Clone, Debug, Default)]
pub struct PsoRun {
    /// Selected head ids, ascending. Size `min(k, candidate count)`.
    pub selected: Vec<usize>,
    /// Global-best fitness after initialization and after each iteration.
    pub best_fitness_by_iteration: Vec<f64>,
}

// Precomputed per-candidate coverage bitmask over the alive nodes, so a
// fitness evaluation is a handful of word ORs instead of a full distance
// scan.
struct FitnessTable {
    words: usize,
    alive_count: usize,
    masks: Vec<u64>,    // candidate-major, `words` u64 each
    energies: Vec<f64>, // candidate residual energy
    total_budget_j: f64,
}

impl FitnessTable {
    fn build(
        candidates: &[usize],
        nodes: &[NodeState],
        params: &CoverageParams,
        initial_energy_j: f64,
    ) -> Self {
        let alive: Vec<Position> = nodes.iter().filter(|n| n.alive).map(|n| n.position).collect();
        let words = alive.len().div_ceil(64).max(1);
        let mut masks = vec![0u64; candidates.len() * words];
        for (ci, &cid) in candidates.iter().enumerate() {
            let head = nodes[cid].position;
            for (ni, &pos) in alive.iter().enumerate() {
                if coverage_value(head, pos, params.radius_m) {
                    masks[ci * words + ni / 64] |= 1u64 << (ni % 64);
                }
            }
        }
        Self {
            words,
            alive_count: alive.len(),
            masks,
            energies: candidates.iter().map(|&id| nodes[id].residual_energy_j).collect(),
            total_budget_j: initial_energy_j * alive.len() as f64,
        }
    }

    /// Fitness of a subset given by candidate indices.
    fn fitness(&self, subset: &[usize], params: &CoverageParams, scratch: &mut [u64]) -> f64 {
        scratch.fill(0);
        let mut energy = 0.0;
        for &ci in subset {
            let row = &self.masks[ci * self.words..(ci + 1) * self.words];
            for (w, &m) in scratch.iter_mut().zip(row) {
                *w |= m;
            }
            energy += self.energies[ci];
        }
        let covered: u32 = scratch.iter().map(|w| w.count_ones()).sum();
        let rate = if self.alive_count == 0 {
            0.0
        } else {
            f64::from(covered) / self.alive_count as f64
        };
        params.coverage_weight * rate + params.energy_weight * energy / self.total_budget_j
    }
}

/// Snap `k` virtual positions to distinct nearest candidates, in order; a
/// position whose nearest candidate is taken falls back to the next-nearest
/// unused one.
fn map_to_candidates(
    virtual_positions: &[(f64, f64)],
    candidate_positions: &[Position],
    used: &mut [bool],
    out: &mut Vec<usize>,
) {
    used.fill(false);
    out.clear();
    for &(x, y) in virtual_positions {
        let mut best: Option<(f64, usize)> = None;
        for (ci, &cp) in candidate_positions.iter().enumerate() {
            if used[ci] {
                continue;
            }
            let d = (cp.x_m - x).hypot(cp.y_m - y);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, ci));
            }
        }
        if let Some((_, ci)) = best {
            used[ci] = true;
            out.push(ci);
        }
    }
}

/// Pick `min(k, |candidates|)` final heads maximizing the objective.
///
/// With at most `k` candidates there is only one realizable head set and it
/// is returned directly. The swarm consumes the generator in fixed particle
/// order, so results are reproducible regardless of evaluation strategy.
pub fn pso_select<R: Rng>(
    candidates: &[usize],
    nodes: &[NodeState],
    k: usize,
    cov: &CoverageParams,
    pso: &PsoParams,
    initial_energy_j: f64,
    area_side_m: f64,
    rng: &mut R,
) -> PsoRun {
    if candidates.is_empty() || k == 0 {
        return PsoRun::default();
    }
    if candidates.len() <= k {
        let mut selected = candidates.to_vec();
        selected.sort_unstable();
        let fitness = objective(&selected, nodes, cov, initial_energy_j);
        return PsoRun {
            selected,
            best_fitness_by_iteration: vec![fitness],
        };
    }

    let table = FitnessTable::build(candidates, nodes, cov, initial_energy_j);
    let candidate_positions: Vec<Position> =
        candidates.iter().map(|&id| nodes[id].position).collect();
    let dims = k;
    let velocity_cap = pso.velocity_cap_m.unwrap_or(area_side_m / 4.0);

    let mut positions: Vec<Vec<(f64, f64)>> = (0..pso.population)
        .map(|_| {
            (0..dims)
                .map(|_| {
                    (
                        rng.random_range(0.0..=area_side_m),
                        rng.random_range(0.0..=area_side_m),
                    )
                })
                .collect()
        })
        .collect();
    let mut velocities: Vec<Vec<(f64, f64)>> = vec![vec![(0.0, 0.0); dims]; pso.population];

    let mut scratch = vec![0u64; table.words];
    let mut used = vec![false; candidates.len()];
    let mut mapped = Vec::with_capacity(dims);

    let eval = |virtual_positions: &[(f64, f64)],
                    used: &mut [bool],
                    mapped: &mut Vec<usize>,
                    scratch: &mut [u64]| {
        map_to_candidates(virtual_positions, &candidate_positions, used, mapped);
        table.fitness(mapped, cov, scratch)
    };

    let mut personal_best = positions.clone();
    let mut personal_fitness: Vec<f64> = positions
        .iter()
        .map(|p| eval(p, &mut used, &mut mapped, &mut scratch))
        .collect();
    let mut global_best_idx = personal_fitness
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut global_best = personal_best[global_best_idx].clone();
    let mut global_fitness = personal_fitness[global_best_idx];
    let mut history = vec![global_fitness];

    for _ in 0..pso.iterations {
        for pi in 0..pso.population {
            for d in 0..dims {
                let r1: f64 = rng.random_range(0.0..1.0);
                let r2: f64 = rng.random_range(0.0..1.0);
                let r3: f64 = rng.random_range(0.0..1.0);
                let r4: f64 = rng.random_range(0.0..1.0);
                let (px, py) = positions[pi][d];
                let (vx, vy) = velocities[pi][d];
                let (bx, by) = personal_best[pi][d];
                let (gx, gy) = global_best[d];
                let mut nvx = pso.inertia * vx
                    + pso.cognitive * r1 * (bx - px)
                    + pso.social * r2 * (gx - px);
                let mut nvy = pso.inertia * vy
                    + pso.cognitive * r3 * (by - py)
                    + pso.social * r4 * (gy - py);
                nvx = nvx.clamp(-velocity_cap, velocity_cap);
                nvy = nvy.clamp(-velocity_cap, velocity_cap);
                let (nx, nvx) = reflect(px + nvx, nvx, area_side_m);
                let (ny, nvy) = reflect(py + nvy, nvy, area_side_m);
                positions[pi][d] = (nx, ny);
                velocities[pi][d] = (nvx, nvy);
            }
            let fitness = eval(&positions[pi], &mut used, &mut mapped, &mut scratch);
            if fitness > personal_fitness[pi] {
                personal_fitness[pi] = fitness;
                personal_best[pi] = positions[pi].clone();
            }
            if fitness > global_fitness {
                global_fitness = fitness;
                global_best_idx = pi;
                global_best = positions[pi].clone();
            }
        }
        history.push(global_fitness);
    }

    let _ = global_best_idx;
    map_to_candidates(&global_best, &candidate_positions, &mut used, &mut mapped);
    let mut selected: Vec<usize> = mapped.iter().map(|&ci| candidates[ci]).collect();
    selected.sort_unstable();
    selected.dedup();
    PsoRun {
        selected,
        best_fitness_by_iteration: history,
    }
}

// Reflect a coordinate into [0, side], flipping the velocity when it bounces.
fn reflect(mut x: f64, mut v: f64, side: f64) -> (f64, f64) {
    loop {
        if x < 0.0 {
            x = -x;
            v = -v;
        } else if x > side {
            x = 2.0 * side - x;
            v = -v;
        } else {
            return (x, v);
        }
    }
}

/// Per-node cluster membership for one round.
#[derive(Clone, Debug)]
pub struct ClusterAssignment {
    /// Final head ids, ascending.
    pub cluster_heads: Vec<usize>,
    /// For each node id: the head it reports to. Heads, dead nodes, and all
    /// nodes in a head-less round map to `None`.
    pub member_of: Vec<Option<usize>>,
    /// Assigned member count per head, aligned with `cluster_heads`
    /// (excluding the head itself).
    pub member_counts: Vec<usize>,
}

impl ClusterAssignment {
    /// In a head-less round every alive node reports straight to the base
    /// station.
    pub fn is_direct_round(&self) -> bool {
        self.cluster_heads.is_empty()
    }
}

/// Attach every alive non-head node to its nearest head (the proxy for
/// strongest received signal); ties go to the lower head id.
pub fn form_clusters(head_ids: &[usize], nodes: &[NodeState]) -> ClusterAssignment {
    let mut cluster_heads = head_ids.to_vec();
    cluster_heads.sort_unstable();
    let mut member_of = vec![None; nodes.len()];
    let mut member_counts = vec![0usize; cluster_heads.len()];
    if !cluster_heads.is_empty() {
        for node in nodes.iter().filter(|n| n.alive) {
            if cluster_heads.binary_search(&node.id).is_ok() {
                continue;
            }
            let mut best = (f64::INFINITY, usize::MAX);
            for (hi, &head) in cluster_heads.iter().enumerate() {
                let d = distance(node.position, nodes[head].position);
                if d < best.0 {
                    best = (d, hi);
                }
            }
            member_of[node.id] = Some(cluster_heads[best.1]);
            member_counts[best.1] += 1;
        }
    }
    ClusterAssignment {
        cluster_heads,
        member_of,
        member_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{deploy, NetworkConfig, Role};
    use crate::rng::stream_rng;

    fn node(id: usize, x: f64, y: f64, energy: f64) -> NodeState {
        NodeState {
            id,
            position: Position::new(x, y),
            residual_energy_j: energy,
            alive: true,
            role: Role::Member,
            death_round: None,
        }
    }

    #[test]
    fn coverage_value_boundary() {
        let head = Position::new(0.0, 0.0);
        assert!(coverage_value(head, Position::new(30.0, 0.0), 30.0));
        assert!(!coverage_value(head, Position::new(30.0001, 0.0), 30.0));
        assert!(coverage_value(head, head, 30.0));
    }

    #[test]
    fn joint_coverage_or_semantics() {
        let heads = [Position::new(0.0, 0.0), Position::new(5.0, 0.0)];
        assert!(joint_coverage(&heads, Position::new(2.0, 0.0), 10.0));
        assert!(!joint_coverage(&[], Position::new(2.0, 0.0), 10.0));
    }

    #[test]
    fn joint_coverage_matches_brute_force() {
        let mut rng = stream_rng(21, "test-joint");
        for _ in 0..300 {
            let heads: Vec<Position> = (0..rng.random_range(0..6usize))
                .map(|_| Position::new(rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)))
                .collect();
            let node = Position::new(rng.random_range(0.0..100.0), rng.random_range(0.0..100.0));
            let r = rng.random_range(5.0..40.0);
            let any = heads.iter().any(|&h| distance(h, node) <= r);
            assert_eq!(joint_coverage(&heads, node, r), any);
        }
    }

    #[test]
    fn coverage_rate_examples() {
        let heads = [Position::new(0.0, 0.0)];
        let nodes = [
            Position::new(1.0, 0.0),
            Position::new(2.0, 0.0),
            Position::new(3.0, 0.0),
            Position::new(50.0, 0.0),
        ];
        assert_eq!(coverage_rate(&heads, &nodes, 10.0), Some(0.75));
        assert_eq!(coverage_rate(&heads, &nodes, 100.0), Some(1.0));
        assert_eq!(coverage_rate(&heads, &nodes, 0.5), Some(0.0));
        assert_eq!(coverage_rate(&heads, &[], 10.0), None);
    }

    #[test]
    fn objective_weighted_example() {
        // full coverage, 10 heads at full 0.5 J, 100 alive nodes
        let mut nodes: Vec<NodeState> = (0..100).map(|i| node(i, 0.0, 0.0, 0.5)).collect();
        for n in &mut nodes {
            n.position = Position::new(100.0, 100.0);
        }
        let heads: Vec<usize> = (0..10).collect();
        let params = CoverageParams {
            radius_m: 10.0,
            coverage_weight: 0.5,
            energy_weight: 0.5,
        };
        let f = objective(&heads, &nodes, &params, 0.5);
        assert!((f - 0.55).abs() < 1e-12, "f = {f}");
    }

    #[test]
    fn objective_weight_collapse() {
        let nodes: Vec<NodeState> = (0..4).map(|i| node(i, i as f64, 0.0, 0.5)).collect();
        let params = CoverageParams {
            radius_m: 1.5,
            coverage_weight: 1.0,
            energy_weight: 0.0,
        };
        let f = objective(&[0], &nodes, &params, 0.5);
        let heads = [nodes[0].position];
        let alive: Vec<Position> = nodes.iter().map(|n| n.position).collect();
        assert_eq!(f, coverage_rate(&heads, &alive, 1.5).unwrap());
    }

    #[test]
    fn objective_zero_when_energy_only_and_drained() {
        let mut nodes: Vec<NodeState> = (0..4).map(|i| node(i, i as f64, 0.0, 0.5)).collect();
        nodes[0].residual_energy_j = 0.0;
        let params = CoverageParams {
            radius_m: 1.5,
            coverage_weight: 0.0,
            energy_weight: 1.0,
        };
        assert_eq!(objective(&[0], &nodes, &params, 0.5), 0.0);
    }

    fn quality_instance(seed: u64) -> (Vec<NodeState>, Vec<usize>) {
        let config = NetworkConfig {
            node_count: 15,
            rng_seed: seed,
            ..NetworkConfig::default()
        };
        let mut nodes = deploy(&config).unwrap();
        let mut rng = stream_rng(seed, "quality-energies");
        for n in &mut nodes {
            n.residual_energy_j = rng.random_range(0.05..0.5);
        }
        // first 12 nodes are the candidates
        (nodes, (0..12).collect())
    }

    #[test]
    fn pso_returns_all_candidates_when_few() {
        let (nodes, _) = quality_instance(3);
        let cov = CoverageParams {
            radius_m: cluster_disk_radius_m(200.0, 4),
            coverage_weight: 0.5,
            energy_weight: 0.5,
        };
        let pso = PsoParams::default();
        let mut rng = stream_rng(3, "pso");
        let run = pso_select(&[4, 2, 9], &nodes, 4, &cov, &pso, 0.5, 200.0, &mut rng);
        assert_eq!(run.selected, vec![2, 4, 9]);
        let run = pso_select(&[7], &nodes, 3, &cov, &pso, 0.5, 200.0, &mut rng);
        assert_eq!(run.selected, vec![7]);
        let run = pso_select(&[], &nodes, 3, &cov, &pso, 0.5, 200.0, &mut rng);
        assert!(run.selected.is_empty());
    }

    #[test]
    fn pso_beats_random_subsets_and_is_monotone() {
        let cov_weights = CoverageParams {
            radius_m: cluster_disk_radius_m(200.0, 4),
            coverage_weight: 0.5,
            energy_weight: 0.5,
        };
        let pso_params = PsoParams::default();
        let mut wins = 0;
        let seeds = 5u64;
        for seed in 0..seeds {
            let (nodes, candidates) = quality_instance(seed);
            let mut rng = stream_rng(seed, "pso-quality");
            let run = pso_select(
                &candidates,
                &nodes,
                4,
                &cov_weights,
                &pso_params,
                0.5,
                200.0,
                &mut rng,
            );
            assert_eq!(run.selected.len(), 4);
            assert!(run.selected.iter().all(|id| candidates.contains(id)));
            for pair in run.best_fitness_by_iteration.windows(2) {
                assert!(pair[1] >= pair[0], "global best regressed");
            }
            let pso_fitness = objective(&run.selected, &nodes, &cov_weights, 0.5);
            // last history entry is the fitness of the returned set
            assert!(
                (pso_fitness - run.best_fitness_by_iteration.last().unwrap()).abs() < 1e-12
            );

            let mut best_random = f64::NEG_INFINITY;
            let mut rrng = stream_rng(seed, "random-subsets");
            for _ in 0..200 {
                let mut pool = candidates.clone();
                for i in 0..4 {
                    let j = rrng.random_range(i..pool.len());
                    pool.swap(i, j);
                }
                let subset = &pool[..4];
                best_random = best_random.max(objective(subset, &nodes, &cov_weights, 0.5));
            }
            if pso_fitness >= best_random - 1e-12 {
                wins += 1;
            }
        }
        assert!(wins >= 4, "pso beat random subsets in only {wins}/{seeds} seeds");
    }

    #[test]
    fn pso_fast_fitness_matches_objective() {
        let (nodes, candidates) = quality_instance(11);
        let cov = CoverageParams {
            radius_m: 40.0,
            coverage_weight: 0.5,
            energy_weight: 0.5,
        };
        let table = FitnessTable::build(&candidates, &nodes, &cov, 0.5);
        let mut scratch = vec![0u64; table.words];
        let mut rng = stream_rng(11, "fitness-eq");
        for _ in 0..100 {
            let mut subset_idx: Vec<usize> = Vec::new();
            while subset_idx.len() < 4 {
                let c = rng.random_range(0..candidates.len());
                if !subset_idx.contains(&c) {
                    subset_idx.push(c);
                }
            }
            let ids: Vec<usize> = subset_idx.iter().map(|&ci| candidates[ci]).collect();
            let fast = table.fitness(&subset_idx, &cov, &mut scratch);
            let slow = objective(&ids, &nodes, &cov, 0.5);
            assert!((fast - slow).abs() < 1e-12);
        }
    }

    #[test]
    fn pso_selection_invariant_under_weight_scaling() {
        let (nodes, candidates) = quality_instance(7);
        let pso_params = PsoParams::default();
        let base = CoverageParams {
            radius_m: 40.0,
            coverage_weight: 0.5,
            energy_weight: 0.5,
        };
        let scaled = CoverageParams {
            radius_m: 40.0,
            coverage_weight: 1.5,
            energy_weight: 1.5,
        };
        let run_a = pso_select(
            &candidates,
            &nodes,
            4,
            &base,
            &pso_params,
            0.5,
            200.0,
            &mut stream_rng(7, "scale"),
        );
        let run_b = pso_select(
            &candidates,
            &nodes,
            4,
            &scaled,
            &pso_params,
            0.5,
            200.0,
            &mut stream_rng(7, "scale"),
        );
        assert_eq!(run_a.selected, run_b.selected);
    }

    #[test]
    fn coverage_rate_monotone_under_added_head() {
        let mut rng = stream_rng(31, "rate-monotone");
        for _ in 0..100 {
            let nodes: Vec<Position> = (0..20)
                .map(|_| Position::new(rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)))
                .collect();
            let mut heads: Vec<Position> = (0..3)
                .map(|_| Position::new(rng.random_range(0.0..100.0), rng.random_range(0.0..100.0)))
                .collect();
            let before = coverage_rate(&heads, &nodes, 20.0).unwrap();
            heads.push(Position::new(
                rng.random_range(0.0..100.0),
                rng.random_range(0.0..100.0),
            ));
            let after = coverage_rate(&heads, &nodes, 20.0).unwrap();
            assert!(after >= before);
        }
    }

    #[test]
    fn form_clusters_single_head() {
        let nodes: Vec<NodeState> = (0..5).map(|i| node(i, i as f64 * 10.0, 0.0, 0.5)).collect();
        let assignment = form_clusters(&[2], &nodes);
        for n in &nodes {
            if n.id == 2 {
                assert_eq!(assignment.member_of[n.id], None);
            } else {
                assert_eq!(assignment.member_of[n.id], Some(2));
            }
        }
        assert_eq!(assignment.member_counts, vec![4]);
    }

    #[test]
    fn form_clusters_tie_goes_to_lower_id() {
        let nodes = vec![
            node(0, 0.0, 0.0, 0.5),  // member, equidistant to 3 and 7
            node(1, 100.0, 0.0, 0.5),
            node(2, 0.0, 100.0, 0.5),
            node(3, -10.0, 0.0, 0.5),
            node(4, 50.0, 50.0, 0.5),
            node(5, 60.0, 60.0, 0.5),
            node(6, 70.0, 70.0, 0.5),
            node(7, 10.0, 0.0, 0.5),
        ];
        let assignment = form_clusters(&[7, 3], &nodes);
        assert_eq!(assignment.member_of[0], Some(3));
    }

    #[test]
    fn form_clusters_empty_head_set_is_direct_round() {
        let nodes: Vec<NodeState> = (0..3).map(|i| node(i, i as f64, 0.0, 0.5)).collect();
        let assignment = form_clusters(&[], &nodes);
        assert!(assignment.is_direct_round());
        assert!(assignment.member_of.iter().all(Option::is_none));
    }

    #[test]
    fn form_clusters_matches_nearest_scan() {
        let config = NetworkConfig {
            node_count: 40,
            rng_seed: 77,
            ..NetworkConfig::default()
        };
        let mut nodes = deploy(&config).unwrap();
        nodes[5].alive = false;
        let heads = vec![1, 9, 23];
        let assignment = form_clusters(&heads, &nodes);
        for n in &nodes {
            if !n.alive {
                assert_eq!(assignment.member_of[n.id], None);
                continue;
            }
            if heads.contains(&n.id) {
                assert_eq!(assignment.member_of[n.id], None);
                continue;
            }
            let expected = heads
                .iter()
                .map(|&h| (distance(n.position, nodes[h].position), h))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .map(|(_, h)| h);
            assert_eq!(assignment.member_of[n.id], expected);
        }
    }
}
