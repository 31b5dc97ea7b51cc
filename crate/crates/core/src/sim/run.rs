//! Deterministic trajectory recording with a boundary-contamination monitor.

use super::grid::Grid;
use super::scenario::{init_state, Scenario};
use super::stepper::{default_dt, max_stable_dt, step_into, GridState};
use crate::error::{Error, Result};
use crate::model::ModelParams;

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub t_final: f64,
    pub snapshot_every: f64,
    /// Explicit step; defaults to the largest stable step that divides the
    /// snapshot cadence.
    pub dt: Option<f64>,
}

/// A recorded run: snapshots at the requested cadence (the initial state
/// included) plus boundary-shell diagnostics.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: Grid,
    pub params: ModelParams,
    pub dt: f64,
    pub snapshots: Vec<GridState>,
    /// Largest deviation from the initial data seen within ten spacings of
    /// the outer boundary; a value near 1/2 means a front reached the
    /// monitoring shell.
    pub shell_deviation: f64,
}

impl Trajectory {
    pub fn final_state(&self) -> &GridState {
        self.snapshots.last().expect("at least the initial snapshot")
    }

    /// Max field values at the end of the run; near-zero values flag the
    /// extinction of a species.
    pub fn final_maxima(&self) -> (f64, f64) {
        let s = self.final_state();
        (
            s.u.iter().cloned().fold(0.0, f64::max),
            s.v.iter().cloned().fold(0.0, f64::max),
        )
    }
}

/// Steps the scenario to `t_final`, recording snapshots at multiples of
/// `snapshot_every`. Escalates the contamination warning to an error when a
/// half-level crossing reaches the monitoring shell.
pub fn run(
    grid: &Grid,
    scenario: &Scenario,
    params: &ModelParams,
    opts: &RunOptions,
) -> Result<Trajectory> {
    let initial = init_state(grid, scenario)?;
    run_from(grid, initial, params, opts)
}

/// Same as [`run`] but starting from a caller-provided state.
pub fn run_from(
    grid: &Grid,
    initial: GridState,
    params: &ModelParams,
    opts: &RunOptions,
) -> Result<Trajectory> {
    params.validate()?;
    if !(opts.t_final > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "t_final",
            value: opts.t_final,
        });
    }
    if !(opts.snapshot_every > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "snapshot_every",
            value: opts.snapshot_every,
        });
    }
    let bound = max_stable_dt(grid, params);
    let dt = match opts.dt {
        Some(dt) => {
            if dt > bound * (1.0 + 1e-12) {
                return Err(Error::UnstableTimeStep { dt, bound });
            }
            dt
        }
        None => {
            let base = default_dt(grid, params);
            opts.snapshot_every / (opts.snapshot_every / base).ceil()
        }
    };
    let substeps = (opts.snapshot_every / dt).round() as usize;
    if substeps == 0 || (substeps as f64 * dt - opts.snapshot_every).abs() > 1e-9 {
        return Err(Error::ScenarioConfig(format!(
            "dt {dt} does not divide snapshot cadence {}",
            opts.snapshot_every
        )));
    }
    let n_snapshots = (opts.t_final / opts.snapshot_every).ceil() as usize;

    // Monitoring shell: nodes within ten spacings of the outer boundary.
    let shell: Vec<usize> = (0..grid.len())
        .filter(|&i| grid.boundary_distance(i) <= 10.0 * grid.spacing)
        .collect();
    let shell_u0: Vec<f64> = shell.iter().map(|&i| initial.u[i]).collect();
    let shell_v0: Vec<f64> = shell.iter().map(|&i| initial.v[i]).collect();

    let mut snapshots = Vec::with_capacity(n_snapshots + 1);
    let mut current = initial.clone();
    let mut scratch = initial;
    snapshots.push(current.clone());
    let mut shell_deviation = 0.0f64;

    for snap in 1..=n_snapshots {
        for _ in 0..substeps {
            step_into(grid, &current, params, dt, &mut scratch)?;
            std::mem::swap(&mut current, &mut scratch);
        }
        // Keep recorded times exact multiples of the cadence.
        current.time = snap as f64 * opts.snapshot_every;

        for (k, &idx) in shell.iter().enumerate() {
            let dev = (current.u[idx] - shell_u0[k])
                .abs()
                .max((current.v[idx] - shell_v0[k]).abs());
            shell_deviation = shell_deviation.max(dev);
        }
        if shell_deviation >= 0.5 {
            return Err(Error::FrontContamination {
                time: current.time,
                deviation: shell_deviation,
            });
        }
        snapshots.push(current.clone());
        if current.time >= opts.t_final - 1e-9 {
            break;
        }
    }

    Ok(Trajectory {
        grid: *grid,
        params: *params,
        dt,
        snapshots,
        shell_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::IndicatorSet;
    use crate::sim::grid::GridKind;

    #[test]
    fn empty_u_support_keeps_u_zero_and_v_grows() {
        // A species that starts empty stays empty; the other fills space.
        let grid = Grid::new(GridKind::Line, 0.25, 30.0).unwrap();
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let scenario = Scenario::CompactPair {
            u_support: IndicatorSet::empty(1),
            v_support: IndicatorSet::ball(vec![0.0], 4.0).unwrap(),
        };
        let traj = run(
            &grid,
            &scenario,
            &params,
            &RunOptions {
                t_final: 8.0,
                snapshot_every: 2.0,
                dt: None,
            },
        )
        .unwrap();
        let (max_u, _) = traj.final_maxima();
        assert_eq!(max_u, 0.0);
        // Hair-trigger growth toward 1 at the center.
        let center = (grid.len() - 1) / 2;
        assert!(traj.final_state().v[center] > 0.95);
    }

    #[test]
    fn box_invariant_holds_on_every_snapshot() {
        let grid = Grid::new(GridKind::Radial { dim: 2 }, 0.25, 25.0).unwrap();
        let params = ModelParams::new(1.0, 1.0, 1.5, 5.0).unwrap();
        let scenario = Scenario::Complement {
            u_support: IndicatorSet::ball(vec![0.0, 0.0], 6.0).unwrap(),
        };
        let traj = run(
            &grid,
            &scenario,
            &params,
            &RunOptions {
                t_final: 5.0,
                snapshot_every: 1.0,
                dt: None,
            },
        )
        .unwrap();
        for s in &traj.snapshots {
            assert!(s.u.iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)));
            assert!(s.v.iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)));
        }
    }

    #[test]
    fn front_reaching_the_shell_is_an_error() {
        // A fast-growing u front on a short domain must trip the monitor.
        let grid = Grid::new(GridKind::Line, 0.25, 15.0).unwrap();
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let scenario = Scenario::CompactPair {
            u_support: IndicatorSet::ball(vec![0.0], 5.0).unwrap(),
            v_support: IndicatorSet::empty(1),
        };
        let err = run(
            &grid,
            &scenario,
            &params,
            &RunOptions {
                t_final: 30.0,
                snapshot_every: 1.0,
                dt: None,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::FrontContamination { .. }), "{err}");
    }

    #[test]
    fn snapshots_are_deterministic() {
        let grid = Grid::new(GridKind::Plane, 0.5, 12.0).unwrap();
        let params = ModelParams::new(1.0, 1.0, 1.5, 5.0).unwrap();
        let scenario = Scenario::CompactPair {
            u_support: IndicatorSet::ball(vec![-2.0, 0.0], 2.0).unwrap(),
            v_support: IndicatorSet::ball(vec![3.0, 0.0], 2.0).unwrap(),
        };
        let opts = RunOptions {
            t_final: 2.0,
            snapshot_every: 1.0,
            dt: None,
        };
        let a = run(&grid, &scenario, &params, &opts).unwrap();
        let b = run(&grid, &scenario, &params, &opts).unwrap();
        assert_eq!(a.snapshots.len(), b.snapshots.len());
        for (x, y) in a.snapshots.iter().zip(&b.snapshots) {
            assert_eq!(x.u, y.u, "bit-identical fields");
            assert_eq!(x.v, y.v);
        }
    }

    #[test]
    fn small_support_extinction_is_visible() {
        // Strong competition with v filling the complement: a small u seed
        // dies out, and the final maxima flag it.
        let grid = Grid::new(GridKind::Radial { dim: 2 }, 0.25, 20.0).unwrap();
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let scenario = Scenario::Complement {
            u_support: IndicatorSet::ball(vec![0.0, 0.0], 0.5).unwrap(),
        };
        let traj = run(
            &grid,
            &scenario,
            &params,
            &RunOptions {
                t_final: 30.0,
                snapshot_every: 5.0,
                dt: None,
            },
        )
        .unwrap();
        let (max_u, _) = traj.final_maxima();
        assert!(max_u < 0.01, "u persisted with max {max_u}");
    }
}
