//! Contract tests for the `mrp-gtco` binary: exit codes, artifacts, and
//! reproducibility.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mrp-gtco"))
}

const SMALL_CONFIG: &str = "\
# small, fast configuration for interface tests
protocol = MRP-GTCO
area_side_m = 100
node_count = 20
initial_energy_j = 0.02
k_override = 3
pso_population = 8
pso_iterations = 8
rng_seed = 5
";

fn write_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("config.txt");
    std::fs::write(&path, SMALL_CONFIG).unwrap();
    path
}

#[test]
fn run_single_seed_writes_series_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = dir.path().join("out");
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    assert!(out.join("series_MRP-GTCO_5.csv").exists());
    assert!(out.join("summary.csv").exists());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("fdn="), "{stdout}");
    assert!(stdout.contains("hdn="), "{stdout}");
    assert!(stdout.contains("ldn="), "{stdout}");
}

#[test]
fn malformed_config_exits_2_without_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.txt");
    std::fs::write(&config, "node_cont = 100\n").unwrap();
    let out = dir.path().join("out");
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "{output:?}");
    assert!(!out.exists(), "no partial artifacts on config errors");
}

#[test]
fn missing_config_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let output = bin()
        .args(["run", "--config"])
        .arg(dir.path().join("nope.txt"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn unwritable_out_dir_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let blocker = dir.path().join("blocked");
    std::fs::write(&blocker, "a file, not a directory").unwrap();
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(blocker.join("sub"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "{output:?}");
}

#[test]
fn five_seeds_summary_has_seed_rows_plus_aggregates() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = dir.path().join("out");
    let output = bin()
        .args(["run", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(["--seeds", "1,2,3,4,5"])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    let seed_rows = summary
        .lines()
        .filter(|l| {
            l.starts_with("MRP-GTCO,")
                && l.split(',').nth(1).unwrap().parse::<u64>().is_ok()
        })
        .count();
    assert_eq!(seed_rows, 5, "{summary}");
    assert!(summary.contains("MRP-GTCO,median,"), "{summary}");
    assert!(summary.contains("MRP-GTCO,mean,"), "{summary}");
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let output = bin()
            .args(["run", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .args(["--seeds", "1,2"])
            .output()
            .unwrap();
        assert!(output.status.success(), "{output:?}");
    }
    for name in ["series_MRP-GTCO_1.csv", "series_MRP-GTCO_2.csv", "summary.csv"] {
        assert_eq!(
            std::fs::read(out_a.join(name)).unwrap(),
            std::fs::read(out_b.join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn sweep_k_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = dir.path().join("out");
    let output = bin()
        .args(["sweep", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(["--axis", "k", "--values", "2,3", "--seeds", "1,2"])
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    let table = std::fs::read_to_string(out.join("sweep_k.csv")).unwrap();
    assert!(table.starts_with("# cluster-count sweep"), "{table}");
    assert!(table.lines().any(|l| l.starts_with("2,")), "{table}");
    assert!(table.lines().any(|l| l.starts_with("3,")), "{table}");
}

#[test]
fn sweep_rejects_unknown_axis() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let output = bin()
        .args(["sweep", "--config"])
        .arg(&config)
        .args(["--axis", "voltage"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}

#[test]
fn compare_produces_aligned_outputs_and_respects_env_out() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let out = dir.path().join("from-env");
    let output = bin()
        .args(["compare", "--config"])
        .arg(&config)
        .args(["--protocol", "RLEACH,LGCA", "--seeds", "1,2"])
        .env("MRP_GTCO_OUT", &out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    for name in [
        "series_RLEACH_1.csv",
        "series_RLEACH_2.csv",
        "series_LGCA_1.csv",
        "series_LGCA_2.csv",
        "compare_summary.csv",
    ] {
        assert!(out.join(name).exists(), "{name}");
    }
    let summary = std::fs::read_to_string(out.join("compare_summary.csv")).unwrap();
    assert!(summary.contains("ch_energy_median_j"), "{summary}");
}

#[test]
fn compare_requires_at_least_two_protocols() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path());
    let output = bin()
        .args(["compare", "--config"])
        .arg(&config)
        .args(["--protocol", "RLEACH"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "{output:?}");
}
