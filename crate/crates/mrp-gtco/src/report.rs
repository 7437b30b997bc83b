//! CSV artifacts: per-round series and run summaries.
//!
//! Files are written whole and renamed into place, so a crash never leaves
//! a partial artifact, and re-running an identical experiment reproduces
//! byte-identical files.

use crate::net::Protocol;
use crate::sim::{LifetimeSummary, RoundMetrics};
use std::fmt::Write as _;
use std::path::Path;

/// Write `contents` to `path` atomically (write to a sibling temp file,
/// then rename).
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

fn fmt_round(value: Option<u32>) -> String {
    value.map_or(String::new(), |v| v.to_string())
}

/// Render one run's per-round series.
///
/// The leading comment line records what the run was; columns are
/// `round,alive,residual_j,ch_count,pkts_round,pkts_cum`.
pub fn series_csv(protocol: Protocol, seed: u64, description: &str, rounds: &[RoundMetrics]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# per-round series; protocol={protocol} seed={seed}; {description}");
    out.push_str("round,alive,residual_j,ch_count,pkts_round,pkts_cum\n");
    for r in rounds {
        let _ = writeln!(
            out,
            "{},{},{:.9},{},{},{}",
            r.round, r.alive, r.total_residual_j, r.ch_count, r.packets_delivered, r.packets_cumulative
        );
    }
    out
}

/// One summary row: a (protocol, seed) cell's lifetime milestones plus
/// optional head-energy quartiles.
#[derive(Clone, Debug)]
pub struct SummaryRow {
    pub protocol: Protocol,
    pub seed: u64,
    pub summary: LifetimeSummary,
    /// Quartiles of per-head round energy, joules, when requested.
    pub head_energy_quartiles_j: Option<[f64; 3]>,
}

/// Render summary rows grouped by protocol, each group followed by its
/// median and mean aggregate rows.
pub fn summary_csv(description: &str, rows: &[SummaryRow]) -> String {
    let with_quartiles = rows.iter().any(|r| r.head_energy_quartiles_j.is_some());
    let mut out = String::new();
    let _ = writeln!(out, "# run summary; {description}");
    out.push_str(if with_quartiles {
        "protocol,seed,fdn,hdn,ldn,ch_energy_q1_j,ch_energy_median_j,ch_energy_q3_j\n"
    } else {
        "protocol,seed,fdn,hdn,ldn\n"
    });

    let mut protocols: Vec<Protocol> = Vec::new();
    for r in rows {
        if !protocols.contains(&r.protocol) {
            protocols.push(r.protocol);
        }
    }
    for protocol in protocols {
        let group: Vec<&SummaryRow> = rows.iter().filter(|r| r.protocol == protocol).collect();
        for r in &group {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                r.protocol,
                r.seed,
                fmt_round(r.summary.first_death_round),
                fmt_round(r.summary.half_death_round),
                fmt_round(r.summary.last_death_round)
            );
            if with_quartiles {
                match r.head_energy_quartiles_j {
                    Some([q1, q2, q3]) => {
                        let _ = write!(out, ",{q1:.9e},{q2:.9e},{q3:.9e}");
                    }
                    None => out.push_str(",,,"),
                }
            }
            out.push('\n');
        }
        for (stat, agg) in [
            ("median", aggregate(&group, median_u32, median_f64)),
            ("mean", aggregate(&group, mean_u32, mean_f64)),
        ] {
            let _ = write!(
                out,
                "{},{},{},{},{}",
                protocol, stat, agg.0, agg.1, agg.2
            );
            if with_quartiles {
                match agg.3 {
                    Some([q1, q2, q3]) => {
                        let _ = write!(out, ",{q1:.9e},{q2:.9e},{q3:.9e}");
                    }
                    None => out.push_str(",,,"),
                }
            }
            out.push('\n');
        }
    }
    out
}

type Agg = (String, String, String, Option<[f64; 3]>);

fn aggregate(
    group: &[&SummaryRow],
    stat_u32: fn(&mut Vec<u32>) -> Option<f64>,
    stat_f64: fn(&mut Vec<f64>) -> Option<f64>,
) -> Agg {
    let pick = |f: fn(&LifetimeSummary) -> Option<u32>| -> String {
        let mut values: Vec<u32> = group.iter().filter_map(|r| f(&r.summary)).collect();
        stat_u32(&mut values).map_or(String::new(), |v| format!("{v}"))
    };
    let fdn = pick(|s| s.first_death_round);
    let hdn = pick(|s| s.half_death_round);
    let ldn = pick(|s| s.last_death_round);
    let quart = if group.iter().any(|r| r.head_energy_quartiles_j.is_some()) {
        let mut qs: [Vec<f64>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for r in group {
            if let Some(q) = r.head_energy_quartiles_j {
                for i in 0..3 {
                    qs[i].push(q[i]);
                }
            }
        }
        let agg: Vec<f64> = qs
            .iter_mut()
            .filter_map(|v| stat_f64(v))
            .collect();
        (agg.len() == 3).then(|| [agg[0], agg[1], agg[2]])
    } else {
        None
    };
    (fdn, hdn, ldn, quart)
}

fn median_u32(values: &mut Vec<u32>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable();
    let n = values.len();
    Some(if n % 2 == 1 {
        f64::from(values[n / 2])
    } else {
        f64::from(values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

fn mean_u32(values: &mut Vec<u32>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().map(|&v| f64::from(v)).sum::<f64>() / values.len() as f64)
}

fn median_f64(values: &mut Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len();
    Some(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    })
}

fn mean_f64(values: &mut Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().sum::<f64>() / values.len() as f64)
}

/// Median of a sample, `None` when empty.
pub fn median(values: &[f64]) -> Option<f64> {
    let mut v = values.to_vec();
    median_f64(&mut v)
}

/// Linear-interpolation quartiles (q1, median, q3) of a sample.
pub fn quartiles(values: &[f64]) -> Option<[f64; 3]> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let q = |p: f64| -> f64 {
        let idx = p * (v.len() - 1) as f64;
        let lo = idx.floor() as usize;
        let hi = idx.ceil() as usize;
        if lo == hi {
            v[lo]
        } else {
            v[lo] + (idx - lo as f64) * (v[hi] - v[lo])
        }
    };
    Some([q(0.25), q(0.5), q(0.75)])
}
