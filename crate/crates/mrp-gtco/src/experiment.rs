//! Experiment orchestration: single runs, parameter sweeps, and protocol
//! comparisons over shared seeds.
//!
//! Every (configuration, seed) cell is an independent simulation, so cells
//! run in parallel and results are merged in a fixed order; artifacts are
//! byte-stable across reruns of the same spec.

use crate::net::{ConfigError, NetworkConfig, Protocol};
use crate::report::{self, quartiles, series_csv, summary_csv, write_atomic, SummaryRow};
use crate::sim::{Simulation, SimulationResult, StopCondition};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// What to run: a base configuration, the seeds to repeat it over, and
/// where artifacts go.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub base: NetworkConfig,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    /// Bad configuration or arguments; maps to exit code 2.
    #[error("{0}")]
    Config(String),
    /// Filesystem failure; maps to exit code 3.
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ConfigError> for ExperimentError {
    fn from(e: ConfigError) -> Self {
        ExperimentError::Config(e.to_string())
    }
}

/// Sweepable parameter axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    /// Fixed cluster-head count.
    K,
    /// Coverage weight (the energy weight follows as its complement).
    Lambda1,
    /// Monitoring-area side length, with a per-area head count.
    Area,
}

impl FromStr for SweepAxis {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Ok(SweepAxis::K),
            "lambda1" => Ok(SweepAxis::Lambda1),
            "area" => Ok(SweepAxis::Area),
            other => Err(ExperimentError::Config(format!(
                "unknown sweep axis `{other}` (expected k, lambda1, or area)"
            ))),
        }
    }
}

struct Cell {
    protocol: Protocol,
    seed: u64,
    config: NetworkConfig,
    stop: StopCondition,
}

struct CellResult {
    protocol: Protocol,
    seed: u64,
    initial_total_j: f64,
    result: SimulationResult,
}

fn run_cells(cells: Vec<Cell>) -> Result<Vec<CellResult>, ExperimentError> {
    cells
        .into_par_iter()
        .map(|cell| {
            let mut sim = Simulation::new(cell.config)?;
            let initial_total_j = sim.audit().initial_total_j;
            let result = sim.run_until(cell.stop);
            Ok(CellResult {
                protocol: cell.protocol,
                seed: cell.seed,
                initial_total_j,
                result,
            })
        })
        .collect()
}

fn ensure_spec(spec: &ExperimentSpec) -> Result<(), ExperimentError> {
    if spec.seeds.is_empty() {
        return Err(ExperimentError::Config("at least one seed is required".into()));
    }
    spec.base.validate()?;
    Ok(())
}

fn ensure_out_dir(dir: &Path) -> Result<(), ExperimentError> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

fn cell_config(base: &NetworkConfig, protocol: Protocol, seed: u64) -> NetworkConfig {
    NetworkConfig {
        protocol,
        rng_seed: seed,
        ..base.clone()
    }
}

/// Mean per-round network energy over the rounds before the first death.
fn pre_fdn_mean_round_energy(initial_total_j: f64, result: &SimulationResult) -> Option<f64> {
    let fdn = result.summary.first_death_round?;
    if fdn <= 1 {
        return None;
    }
    let last_whole_round = (fdn - 2) as usize;
    let residual = result.rounds.get(last_whole_round)?.total_residual_j;
    Some((initial_total_j - residual) / f64::from(fdn - 1))
}

fn pooled_head_energy_quartiles(result: &SimulationResult) -> Option<[f64; 3]> {
    let pooled: Vec<f64> = result
        .rounds
        .iter()
        .flat_map(|r| r.ch_energy_spent_j.iter().copied())
        .filter(|&e| e > 0.0)
        .collect();
    quartiles(&pooled)
}

/// Artifacts of `run` and `compare`: summary rows plus the files written.
#[derive(Debug)]
pub struct RunArtifacts {
    pub rows: Vec<SummaryRow>,
    pub files: Vec<PathBuf>,
}

/// One full-lifetime simulation per seed; writes one series file per seed
/// and a summary file with per-seed rows plus median/mean aggregates.
pub fn cmd_run(spec: &ExperimentSpec) -> Result<RunArtifacts, ExperimentError> {
    ensure_spec(spec)?;
    let protocol = spec.base.protocol;
    let cells = spec
        .seeds
        .iter()
        .map(|&seed| Cell {
            protocol,
            seed,
            config: cell_config(&spec.base, protocol, seed),
            stop: StopCondition::AllDead,
        })
        .collect();
    let results = run_cells(cells)?;
    ensure_out_dir(&spec.out_dir)?;

    let description = run_description(&spec.base);
    let mut files = Vec::new();
    let mut rows = Vec::new();
    for cell in &results {
        let path = spec
            .out_dir
            .join(format!("series_{}_{}.csv", cell.protocol, cell.seed));
        write_atomic(&path, &series_csv(cell.protocol, cell.seed, &description, &cell.result.rounds))?;
        files.push(path);
        rows.push(SummaryRow {
            protocol: cell.protocol,
            seed: cell.seed,
            summary: cell.result.summary,
            head_energy_quartiles_j: None,
        });
    }
    let summary_path = spec.out_dir.join("summary.csv");
    write_atomic(&summary_path, &summary_csv(&description, &rows))?;
    files.push(summary_path);
    Ok(RunArtifacts { rows, files })
}

/// Run every listed protocol over the same seeds (hence identical
/// topologies) and emit aligned series plus a joint summary with per-head
/// energy quartiles.
pub fn cmd_compare(
    spec: &ExperimentSpec,
    protocols: &[Protocol],
) -> Result<RunArtifacts, ExperimentError> {
    ensure_spec(spec)?;
    if protocols.len() < 2 {
        return Err(ExperimentError::Config(
            "compare needs at least two protocols".into(),
        ));
    }
    let mut cells = Vec::new();
    for &protocol in protocols {
        for &seed in &spec.seeds {
            cells.push(Cell {
                protocol,
                seed,
                config: cell_config(&spec.base, protocol, seed),
                stop: StopCondition::AllDead,
            });
        }
    }
    let results = run_cells(cells)?;
    ensure_out_dir(&spec.out_dir)?;

    let description = run_description(&spec.base);
    let mut files = Vec::new();
    let mut rows = Vec::new();
    for cell in &results {
        let path = spec
            .out_dir
            .join(format!("series_{}_{}.csv", cell.protocol, cell.seed));
        write_atomic(&path, &series_csv(cell.protocol, cell.seed, &description, &cell.result.rounds))?;
        files.push(path);
        rows.push(SummaryRow {
            protocol: cell.protocol,
            seed: cell.seed,
            summary: cell.result.summary,
            head_energy_quartiles_j: pooled_head_energy_quartiles(&cell.result),
        });
    }
    let summary_path = spec.out_dir.join("compare_summary.csv");
    write_atomic(&summary_path, &summary_csv(&description, &rows))?;
    files.push(summary_path);
    Ok(RunArtifacts { rows, files })
}

/// One aggregated line of a sweep output.
#[derive(Clone, Debug)]
pub struct SweepPoint {
    pub label: String,
    pub fields: Vec<(String, String)>,
}

/// Sweep artifacts: the table emitted, plus the file it went to.
#[derive(Debug)]
pub struct SweepArtifacts {
    pub points: Vec<SweepPoint>,
    pub file: PathBuf,
}

/// Sweep one axis, averaging each point over the spec's seeds.
pub fn cmd_sweep(
    spec: &ExperimentSpec,
    axis: SweepAxis,
    values: Option<&[String]>,
) -> Result<SweepArtifacts, ExperimentError> {
    ensure_spec(spec)?;
    match axis {
        SweepAxis::K => sweep_k(spec, values),
        SweepAxis::Lambda1 => sweep_lambda1(spec, values),
        SweepAxis::Area => sweep_area(spec, values),
    }
}

fn parse_values<T: FromStr>(values: &[String], what: &str) -> Result<Vec<T>, ExperimentError> {
    values
        .iter()
        .map(|v| {
            v.trim()
                .parse::<T>()
                .map_err(|_| ExperimentError::Config(format!("bad {what} value `{v}`")))
        })
        .collect()
}

fn sweep_k(
    spec: &ExperimentSpec,
    values: Option<&[String]>,
) -> Result<SweepArtifacts, ExperimentError> {
    let ks: Vec<usize> = match values {
        Some(v) => parse_values(v, "cluster-count")?,
        None => (2..=14).collect(),
    };
    if ks.is_empty() {
        return Err(ExperimentError::Config("empty sweep value list".into()));
    }
    let mut cells = Vec::new();
    for &k in &ks {
        for &seed in &spec.seeds {
            let mut config = cell_config(&spec.base, spec.base.protocol, seed);
            config.k_override = Some(k);
            cells.push(Cell {
                protocol: config.protocol,
                seed,
                config,
                // the reported metric only covers rounds before the first
                // death, so the run can stop there
                stop: StopCondition::FirstDeath,
            });
        }
    }
    let results = run_cells(cells)?;
    ensure_out_dir(&spec.out_dir)?;

    let mut out = String::new();
    out.push_str(
        "# cluster-count sweep; mean per-round network energy over rounds [1, first-death), averaged across seeds\n",
    );
    out.push_str("k,round_energy_mean_j,round_energy_median_j,seeds\n");
    let mut points = Vec::new();
    for (ki, &k) in ks.iter().enumerate() {
        let cells = &results[ki * spec.seeds.len()..(ki + 1) * spec.seeds.len()];
        let energies: Vec<f64> = cells
            .iter()
            .filter_map(|c| pre_fdn_mean_round_energy(c.initial_total_j, &c.result))
            .collect();
        let mean = (!energies.is_empty())
            .then(|| energies.iter().sum::<f64>() / energies.len() as f64);
        let med = report::median(&energies);
        let fmt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.9}"));
        out.push_str(&format!(
            "{},{},{},{}\n",
            k,
            fmt(mean),
            fmt(med),
            energies.len()
        ));
        points.push(SweepPoint {
            label: format!("k={k}"),
            fields: vec![
                ("round_energy_mean_j".into(), fmt(mean)),
                ("round_energy_median_j".into(), fmt(med)),
            ],
        });
    }
    let file = spec.out_dir.join("sweep_k.csv");
    write_atomic(&file, &out)?;
    Ok(SweepArtifacts { points, file })
}

fn sweep_lambda1(
    spec: &ExperimentSpec,
    values: Option<&[String]>,
) -> Result<SweepArtifacts, ExperimentError> {
    let lambdas: Vec<f64> = match values {
        Some(v) => parse_values(v, "coverage-weight")?,
        None => (0..=10).map(|i| f64::from(i) / 10.0).collect(),
    };
    if lambdas.is_empty() {
        return Err(ExperimentError::Config("empty sweep value list".into()));
    }
    if lambdas.iter().any(|&l| !(0.0..=1.0).contains(&l)) {
        return Err(ExperimentError::Config(
            "coverage weights must lie in [0, 1]".into(),
        ));
    }
    let mut cells = Vec::new();
    for &lambda in &lambdas {
        for &seed in &spec.seeds {
            let mut config = cell_config(&spec.base, spec.base.protocol, seed);
            config.coverage_weight = lambda;
            config.energy_weight = 1.0 - lambda;
            cells.push(Cell {
                protocol: config.protocol,
                seed,
                config,
                stop: StopCondition::AllDead,
            });
        }
    }
    let results = run_cells(cells)?;
    ensure_out_dir(&spec.out_dir)?;

    let mut out = String::new();
    out.push_str("# coverage-weight sweep; lifetime milestones (seed medians) and mean per-round energy over rounds [1, first-death)\n");
    out.push_str("lambda1,fdn_median,hdn_median,ldn_median,round_energy_median_j,round_energy_mean_j\n");
    let mut points = Vec::new();
    for (li, &lambda) in lambdas.iter().enumerate() {
        let cells = &results[li * spec.seeds.len()..(li + 1) * spec.seeds.len()];
        let milestone = |f: fn(&SimulationResult) -> Option<u32>| -> Option<f64> {
            let v: Vec<f64> = cells
                .iter()
                .filter_map(|c| f(&c.result).map(f64::from))
                .collect();
            report::median(&v)
        };
        let fdn = milestone(|r| r.summary.first_death_round);
        let hdn = milestone(|r| r.summary.half_death_round);
        let ldn = milestone(|r| r.summary.last_death_round);
        let energies: Vec<f64> = cells
            .iter()
            .filter_map(|c| pre_fdn_mean_round_energy(c.initial_total_j, &c.result))
            .collect();
        let e_med = report::median(&energies);
        let e_mean = (!energies.is_empty())
            .then(|| energies.iter().sum::<f64>() / energies.len() as f64);
        let fmt_r = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x}"));
        let fmt_e = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.9}"));
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            lambda,
            fmt_r(fdn),
            fmt_r(hdn),
            fmt_r(ldn),
            fmt_e(e_med),
            fmt_e(e_mean)
        ));
        points.push(SweepPoint {
            label: format!("lambda1={lambda}"),
            fields: vec![
                ("fdn_median".into(), fmt_r(fdn)),
                ("ldn_median".into(), fmt_r(ldn)),
                ("round_energy_median_j".into(), fmt_e(e_med)),
            ],
        });
    }
    let file = spec.out_dir.join("sweep_lambda1.csv");
    write_atomic(&file, &out)?;
    Ok(SweepArtifacts { points, file })
}

/// Area values are `side` or `side:k`; the default pairs 300 m with 12
/// heads and 400 m with 15.
fn parse_area_value(value: &str) -> Result<(f64, usize), ExperimentError> {
    let (side_text, k_text) = match value.split_once(':') {
        Some((s, k)) => (s, Some(k)),
        None => (value, None),
    };
    let side: f64 = side_text
        .trim()
        .parse()
        .map_err(|_| ExperimentError::Config(format!("bad area value `{value}`")))?;
    let k = match k_text {
        Some(k) => k
            .trim()
            .parse()
            .map_err(|_| ExperimentError::Config(format!("bad head count in `{value}`")))?,
        None => match side as u64 {
            200 => 10,
            300 => 12,
            400 => 15,
            _ => {
                return Err(ExperimentError::Config(format!(
                    "no default head count for area {side}; use `side:k`"
                )))
            }
        },
    };
    Ok((side, k))
}

fn sweep_area(
    spec: &ExperimentSpec,
    values: Option<&[String]>,
) -> Result<SweepArtifacts, ExperimentError> {
    let areas: Vec<(f64, usize)> = match values {
        Some(v) => v
            .iter()
            .map(|s| parse_area_value(s))
            .collect::<Result<_, _>>()?,
        None => vec![(300.0, 12), (400.0, 15)],
    };
    let protocols = [Protocol::MrpGtco, Protocol::MrpGtcoNoRelay];
    let mut cells = Vec::new();
    for &(side, k) in &areas {
        for &protocol in &protocols {
            for &seed in &spec.seeds {
                let mut config = cell_config(&spec.base, protocol, seed);
                config.area_side_m = side;
                config.k_override = Some(k);
                cells.push(Cell {
                    protocol,
                    seed,
                    config,
                    stop: StopCondition::AllDead,
                });
            }
        }
    }
    let results = run_cells(cells)?;
    ensure_out_dir(&spec.out_dir)?;

    let mut out = String::new();
    out.push_str("# area sweep; relay-enabled versus relay-free lifetimes (seed medians)\n");
    out.push_str("area_side_m,protocol,fdn_median,hdn_median,ldn_median\n");
    let mut points = Vec::new();
    let per_area = protocols.len() * spec.seeds.len();
    for (ai, &(side, _)) in areas.iter().enumerate() {
        for (pi, &protocol) in protocols.iter().enumerate() {
            let start = ai * per_area + pi * spec.seeds.len();
            let cells = &results[start..start + spec.seeds.len()];
            let milestone = |f: fn(&SimulationResult) -> Option<u32>| -> Option<f64> {
                let v: Vec<f64> = cells
                    .iter()
                    .filter_map(|c| f(&c.result).map(f64::from))
                    .collect();
                report::median(&v)
            };
            let fmt_r =
                |v: Option<f64>| v.map_or(String::new(), |x: f64| format!("{x}"));
            let fdn = fmt_r(milestone(|r| r.summary.first_death_round));
            let hdn = fmt_r(milestone(|r| r.summary.half_death_round));
            let ldn = fmt_r(milestone(|r| r.summary.last_death_round));
            out.push_str(&format!("{side},{protocol},{fdn},{hdn},{ldn}\n"));
            points.push(SweepPoint {
                label: format!("area={side} {protocol}"),
                fields: vec![
                    ("fdn_median".into(), fdn.clone()),
                    ("hdn_median".into(), hdn.clone()),
                    ("ldn_median".into(), ldn.clone()),
                ],
            });
        }
    }
    let file = spec.out_dir.join("sweep_area.csv");
    write_atomic(&file, &out)?;
    Ok(SweepArtifacts { points, file })
}

fn run_description(config: &NetworkConfig) -> String {
    format!(
        "area={}m nodes={} energy={}J k={} columns: round,alive,residual_j,ch_count,pkts_round,pkts_cum",
        config.area_side_m,
        config.node_count,
        config.initial_energy_j,
        config
            .k_override
            .map_or("adaptive".to_string(), |k| k.to_string())
    )
}
