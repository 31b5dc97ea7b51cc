//! Run directory plumbing: manifest emission and trajectory store/reload.

use crate::config::ConfigFile;
use crate::CliError;
use compfront_core::io as csvio;
use compfront_core::sim::{Grid, GridKind, GridState, Trajectory};
use compfront_core::ModelParams;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Per-run context: collects outputs and result values, then writes the
/// manifest.
pub struct Ctx {
    pub cfg: ConfigFile,
    pub out_dir: PathBuf,
    pub overrides: Vec<String>,
    started: Instant,
    outputs: Vec<String>,
    pub results: toml::value::Table,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    /// Post-default configuration; rerunning from this block reproduces the
    /// outputs byte for byte.
    effective_config: &'a ConfigFile,
    overrides: &'a [String],
    /// No randomness anywhere in the pipeline.
    seeds: &'a str,
    wall_time_seconds: f64,
    outputs: &'a [String],
    results: &'a toml::value::Table,
}

impl Ctx {
    pub fn new(cfg: ConfigFile, out_dir: PathBuf, overrides: Vec<String>) -> Result<Self, CliError> {
        std::fs::create_dir_all(&out_dir)
            .map_err(|e| CliError::config(format!("cannot create {}: {e}", out_dir.display())))?;
        Ok(Ctx {
            cfg,
            out_dir,
            overrides,
            started: Instant::now(),
            outputs: Vec::new(),
            results: toml::value::Table::new(),
        })
    }

    pub fn write_file(&mut self, rel: &str, content: &str) -> Result<(), CliError> {
        let path = self.out_dir.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::numeric(format!("mkdir {}: {e}", parent.display())))?;
        }
        std::fs::write(&path, content)
            .map_err(|e| CliError::numeric(format!("write {}: {e}", path.display())))?;
        self.outputs.push(rel.to_string());
        Ok(())
    }

    pub fn record(&mut self, key: &str, value: impl Into<toml::Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn finish(mut self, command: &str) -> Result<(), CliError> {
        let manifest = Manifest {
            command,
            effective_config: &self.cfg,
            overrides: &self.overrides,
            seeds: "none (deterministic)",
            wall_time_seconds: self.started.elapsed().as_secs_f64(),
            outputs: &self.outputs,
            results: &self.results,
        };
        let text = toml::to_string_pretty(&manifest)
            .map_err(|e| CliError::numeric(format!("manifest serialization: {e}")))?;
        let path = self.out_dir.join("manifest.toml");
        std::fs::write(&path, text)
            .map_err(|e| CliError::numeric(format!("write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Metadata needed to reload a stored trajectory.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryMeta {
    pub kind: String,
    pub dim: usize,
    pub spacing: f64,
    pub extent: f64,
    pub d: f64,
    pub r: f64,
    pub a: f64,
    pub b: f64,
    pub dt: f64,
    pub shell_deviation: f64,
    pub n_snapshots: usize,
}

pub fn store_trajectory(ctx: &mut Ctx, traj: &Trajectory) -> Result<(), CliError> {
    let meta = TrajectoryMeta {
        kind: match traj.grid.kind {
            GridKind::Line => "line".into(),
            GridKind::Radial { .. } => "radial".into(),
            GridKind::Plane => "plane".into(),
        },
        dim: match traj.grid.kind {
            GridKind::Radial { dim } => dim,
            _ => 2,
        },
        spacing: traj.grid.spacing,
        extent: traj.grid.extent,
        d: traj.params.d,
        r: traj.params.r,
        a: traj.params.a,
        b: traj.params.b,
        dt: traj.dt,
        shell_deviation: traj.shell_deviation,
        n_snapshots: traj.snapshots.len(),
    };
    let text = toml::to_string_pretty(&meta)
        .map_err(|e| CliError::numeric(format!("trajectory meta: {e}")))?;
    ctx.write_file("trajectory.toml", &text)?;
    for (k, snap) in traj.snapshots.iter().enumerate() {
        match traj.grid.kind {
            GridKind::Plane => {
                ctx.write_file(
                    &format!("snapshots/u_{k:05}.csv"),
                    &csvio::field_matrix_csv(&traj.grid, &snap.u, snap.time),
                )?;
                ctx.write_file(
                    &format!("snapshots/v_{k:05}.csv"),
                    &csvio::field_matrix_csv(&traj.grid, &snap.v, snap.time),
                )?;
            }
            _ => {
                ctx.write_file(
                    &format!("snapshots/snap_{k:05}.csv"),
                    &csvio::snapshot_csv(&traj.grid, snap),
                )?;
            }
        }
    }
    Ok(())
}

fn read_matrix_csv(path: &Path) -> Result<(f64, Vec<f64>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("read {}: {e}", path.display())))?;
    let mut time = None;
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once(',') {
                if k.trim() == "t" {
                    time = v.trim().parse::<f64>().ok();
                }
            }
            continue;
        }
        for field in line.split(',') {
            values.push(
                field
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::config(format!("bad number in {}", path.display())))?,
            );
        }
    }
    let time = time.ok_or_else(|| CliError::config(format!("{} lacks `# t`", path.display())))?;
    Ok((time, values))
}

pub fn load_trajectory(dir: &Path) -> Result<Trajectory, CliError> {
    let meta_path = dir.join("trajectory.toml");
    let text = std::fs::read_to_string(&meta_path).map_err(|_| {
        CliError::config(format!(
            "missing trajectory: {} not found (run `simulate` first)",
            meta_path.display()
        ))
    })?;
    let meta: TrajectoryMeta =
        toml::from_str(&text).map_err(|e| CliError::config(format!("trajectory meta: {e}")))?;
    let kind = match meta.kind.as_str() {
        "line" => GridKind::Line,
        "radial" => GridKind::Radial { dim: meta.dim },
        "plane" => GridKind::Plane,
        other => return Err(CliError::config(format!("unknown grid kind `{other}`"))),
    };
    let grid = Grid::new(kind, meta.spacing, meta.extent)
        .map_err(|e| CliError::config(e.to_string()))?;
    let params = ModelParams::new(meta.d, meta.r, meta.a, meta.b)
        .map_err(|e| CliError::config(e.to_string()))?;

    let mut snapshots = Vec::with_capacity(meta.n_snapshots);
    for k in 0..meta.n_snapshots {
        match kind {
            GridKind::Plane => {
                let (tu, u) = read_matrix_csv(&dir.join(format!("snapshots/u_{k:05}.csv")))?;
                let (tv, v) = read_matrix_csv(&dir.join(format!("snapshots/v_{k:05}.csv")))?;
                if (tu - tv).abs() > 1e-12 {
                    return Err(CliError::config(format!("snapshot {k}: u/v time mismatch")));
                }
                snapshots.push(GridState { time: tu, u, v });
            }
            _ => {
                let path = dir.join(format!("snapshots/snap_{k:05}.csv"));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::config(format!("read {}: {e}", path.display())))?;
                let (time, _, u, v) = csvio::parse_snapshot_csv(&text)
                    .map_err(|e| CliError::config(e.to_string()))?;
                snapshots.push(GridState { time, u, v });
            }
        }
    }
    Ok(Trajectory {
        grid,
        params,
        dt: meta.dt,
        snapshots,
        shell_deviation: meta.shell_deviation,
    })
}
