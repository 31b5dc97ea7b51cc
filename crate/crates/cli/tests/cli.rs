//! End-to-end checks of the command-line surface: exit codes, config
//! validation, manifest echo and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_compfront"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn front_on_symmetric_parameters_records_zero_speed() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["front", "--out", "run"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read_to_string(dir.path().join("run/manifest.toml")).unwrap();
    let table: toml::Value = manifest.parse().unwrap();
    let value = table["results"]["c_uv"].as_float().expect("manifest records c_uv");
    assert!(value.abs() < 1e-6, "c_uv = {value}");
    assert!(dir.path().join("run/profile.csv").exists());
}

#[test]
fn unknown_config_key_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "[params]\ndiffusionn = 1.0\n").unwrap();
    let out = run_in(dir.path(), &["front", "--config", "bad.toml", "--out", "run"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("diffusionn"), "{stderr}");
}

#[test]
fn zones_without_trajectory_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["zones", "--trajectory", "nowhere", "--out", "run"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("missing trajectory"), "{stderr}");
}

#[test]
fn simulate_outputs_are_bit_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"
[grid]
extent = 40.0

[scenario]
kind = "compact-pair"
[[scenario.u_support]]
shape = "ball"
center = [0.0]
radius = 4.0

[simulate]
t_final = 5.0
snapshot_every = 1.0
"#;
    std::fs::write(dir.path().join("sim.toml"), config).unwrap();
    for name in ["one", "two"] {
        let out = run_in(
            dir.path(),
            &["simulate", "--config", "sim.toml", "--out", name],
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for k in 0..=5 {
        let a = std::fs::read(dir.path().join(format!("one/snapshots/snap_{k:05}.csv"))).unwrap();
        let b = std::fs::read(dir.path().join(format!("two/snapshots/snap_{k:05}.csv"))).unwrap();
        assert_eq!(a, b, "snapshot {k} differs between identical runs");
    }
}

#[test]
fn speed_consumes_a_stored_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"
[grid]
extent = 60.0

[scenario]
kind = "compact-pair"
[[scenario.u_support]]
shape = "ball"
center = [0.0]
radius = 5.0

[simulate]
t_final = 15.0
snapshot_every = 1.0
"#;
    std::fs::write(dir.path().join("sim.toml"), config).unwrap();
    let out = run_in(
        dir.path(),
        &["simulate", "--config", "sim.toml", "--out", "traj"],
    );
    assert!(out.status.success());
    let out = run_in(
        dir.path(),
        &["speed", "--trajectory", "traj", "--out", "sp"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let manifest = std::fs::read_to_string(dir.path().join("sp/manifest.toml")).unwrap();
    assert!(manifest.contains("speed ="));
    assert!(dir.path().join("sp/track.csv").exists());
}

#[test]
fn certify_chains_the_front_solve_when_no_profile_is_given() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["certify", "--a", "2", "--b", "3", "--out", "cert"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(
        dir.path().join("cert/profile.csv").exists(),
        "chained front solve exports the profile"
    );
    let manifest = std::fs::read_to_string(dir.path().join("cert/manifest.toml")).unwrap();
    assert!(manifest.contains("scan_verdict = \"Pass\""), "{manifest}");
    // Flag overrides are echoed for reproducibility.
    assert!(manifest.contains("--a 2"));
}

#[test]
fn certify_rejects_sub_kind_without_a_winner() {
    // Symmetric parameters give a zero-speed front: no admissible margin.
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["certify", "--out", "cert"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn geometry_emits_classification_csv() {
    let dir = tempfile::tempdir().unwrap();
    let config = r#"
[geometry]
dim = 2
m = 128
c_uv = 0.7
[[geometry.set]]
shape = "half-space"
normal = [1.0, 0.0]
offset = 0.0
"#;
    std::fs::write(dir.path().join("geo.toml"), config).unwrap();
    let out = run_in(
        dir.path(),
        &["geometry", "--config", "geo.toml", "--out", "geo"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("geo/geometry.csv")).unwrap();
    assert!(csv.starts_with("# c_uv,0.7\nangle,ratio,bounded,w\n"));
    assert_eq!(csv.lines().count(), 128 + 2);
}
