//! Flat key=value experiment configuration files.
//!
//! One `key = value` pair per line, `#` starts a comment. Unknown keys are
//! rejected outright: a typo in an experiment config must fail the run, not
//! silently fall back to a default. Omitted keys keep their defaults;
//! optional knobs also accept the literal `none`.

use crate::baselines::EcagtInterpretation;
use crate::net::{ConfigError, NetworkConfig, Protocol};
use std::path::Path;

/// Failure while reading or interpreting a config file.
#[derive(Debug, thiserror::Error)]
pub enum ConfigFileError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] ConfigError),
}

fn parse_err(line: usize, message: impl Into<String>) -> ConfigFileError {
    ConfigFileError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse config text into a validated [`NetworkConfig`].
pub fn parse_config_str(text: &str) -> Result<NetworkConfig, ConfigFileError> {
    let mut config = NetworkConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(parse_err(line_no, format!("expected `key = value`, got `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(parse_err(line_no, format!("key `{key}` has no value")));
        }
        apply(&mut config, key, value).map_err(|message| parse_err(line_no, message))?;
    }
    config.validate()?;
    Ok(config)
}

/// Load and validate a config file.
pub fn load_config(path: &Path) -> Result<NetworkConfig, ConfigFileError> {
    let text = std::fs::read_to_string(path)?;
    parse_config_str(&text)
}

fn apply(config: &mut NetworkConfig, key: &str, value: &str) -> Result<(), String> {
    fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
        value
            .parse::<T>()
            .map_err(|_| format!("key `{key}`: cannot parse `{value}`"))
    }
    fn opt<T: std::str::FromStr>(key: &str, value: &str) -> Result<Option<T>, String> {
        if value.eq_ignore_ascii_case("none") {
            Ok(None)
        } else {
            num::<T>(key, value).map(Some)
        }
    }

    match key {
        "protocol" => config.protocol = value.parse::<Protocol>().map_err(|e| e.to_string())?,
        "area_side_m" => config.area_side_m = num(key, value)?,
        "node_count" => config.node_count = num(key, value)?,
        "initial_energy_j" => config.initial_energy_j = num(key, value)?,
        "packet_bits" => config.packet_bits = num(key, value)?,
        "elec_j_per_bit" => config.energy.elec_j_per_bit = num(key, value)?,
        "fs_j_per_bit_m2" => config.energy.fs_j_per_bit_m2 = num(key, value)?,
        "mp_j_per_bit_m4" => config.energy.mp_j_per_bit_m4 = num(key, value)?,
        "fusion_j_per_bit" => config.energy.fusion_j_per_bit = num(key, value)?,
        "coverage_weight" => config.coverage_weight = num(key, value)?,
        "energy_weight" => config.energy_weight = num(key, value)?,
        "energy_penalty_weight" => config.energy_penalty_weight = num(key, value)?,
        "degree_penalty_weight" => config.degree_penalty_weight = num(key, value)?,
        "forwarding_estimate" => config.forwarding_estimate = num(key, value)?,
        "dest_distance_estimate_m" => config.dest_distance_estimate_m = num(key, value)?,
        "k_override" => config.k_override = opt(key, value)?,
        "rng_seed" => config.rng_seed = num(key, value)?,
        "neighbor_radius_m" => config.neighbor_radius_m = num(key, value)?,
        "game_radius_m" => config.game_radius_m = opt(key, value)?,
        "payoff_w" => config.baseline.payoff_w = num(key, value)?,
        "ecagt_alpha" => config.baseline.ecagt_alpha = num(key, value)?,
        "rleach_p" => config.baseline.rleach_p = num(key, value)?,
        "ecagt_interpretation" => {
            config.baseline.ecagt_interpretation = match value.to_ascii_lowercase().as_str() {
                "as-printed" => EcagtInterpretation::AsPrinted,
                "energy-forward" => EcagtInterpretation::EnergyForward,
                other => {
                    return Err(format!(
                        "key `ecagt_interpretation`: expected `as-printed` or `energy-forward`, got `{other}`"
                    ))
                }
            }
        }
        "coverage_radius_m" => config.coverage_radius_m = opt(key, value)?,
        "pso_population" => config.pso.population = num(key, value)?,
        "pso_iterations" => config.pso.iterations = num(key, value)?,
        "pso_inertia" => config.pso.inertia = num(key, value)?,
        "pso_cognitive" => config.pso.cognitive = num(key, value)?,
        "pso_social" => config.pso.social = num(key, value)?,
        "pso_velocity_cap_m" => config.pso.velocity_cap_m = opt(key, value)?,
        "round_cap" => config.round_cap = num(key, value)?,
        "per_round_overhead_j" => config.per_round_overhead_j = num(key, value)?,
        "relay_forwarding_override" => config.relay_forwarding_override = opt(key, value)?,
        other => return Err(format!("unknown key `{other}`")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_config() {
        let text = "\
# reference setup
protocol = MRP-GTCO
area_side_m = 200
node_count = 100
initial_energy_j = 0.5
packet_bits = 4000
k_override = 10
rng_seed = 42   # trailing comment
";
        let config = parse_config_str(text).unwrap();
        assert_eq!(config.protocol, Protocol::MrpGtco);
        assert_eq!(config.k_override, Some(10));
        assert_eq!(config.rng_seed, 42);
        assert_eq!(config.node_count, 100);
    }

    #[test]
    fn rejects_unknown_keys() {
        let err = parse_config_str("node_cont = 100\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("unknown key"), "{msg}");
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn rejects_bad_values() {
        assert!(parse_config_str("node_count = many\n").is_err());
        assert!(parse_config_str("protocol = FOO\n").is_err());
        assert!(parse_config_str("node_count\n").is_err());
    }

    #[test]
    fn rejects_invalid_combinations() {
        // weights must still sum to one after overrides
        let err = parse_config_str("coverage_weight = 0.9\n").unwrap_err();
        assert!(matches!(err, ConfigFileError::Invalid(_)));
        let ok = parse_config_str("coverage_weight = 0.9\nenergy_weight = 0.1\n");
        assert!(ok.is_ok());
    }

    #[test]
    fn optional_keys_accept_none() {
        let config = parse_config_str("k_override = none\ncoverage_radius_m = 35.0\n").unwrap();
        assert_eq!(config.k_override, None);
        assert_eq!(config.coverage_radius_m, Some(35.0));
    }
}
