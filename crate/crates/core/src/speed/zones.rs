//! Zone-convergence checks over the tail of a trajectory.
//!
//! A spreading run partitions space-time into cones `|x| ≤ c·t`. Depending
//! on the speed ordering the solution settles to different exclusion states
//! on the inner cone, a middle annulus and the outer region; these checks
//! measure the worst deviation over the last quarter of the snapshots and
//! compare it with a declared finite-horizon tolerance. The limiting
//! statements are asymptotic; any finite-time tolerance is an artifact
//! choice and is recorded in the report.

use crate::error::{Error, Result};
use crate::sim::{Grid, GridState, Trajectory};

/// Which deviation a zone measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZoneTarget {
    /// Near (1, 0): `|u - 1| + |v|`.
    UWins,
    /// Near (0, 1): `|u| + |v - 1|`.
    VWins,
    /// Near (0, 0): `|u| + |v|`.
    Empty,
    /// `|v|` alone (global extinction of v).
    VGone,
}

impl ZoneTarget {
    fn deviation(&self, u: f64, v: f64) -> f64 {
        match self {
            ZoneTarget::UWins => (u - 1.0).abs() + v.abs(),
            ZoneTarget::VWins => u.abs() + (v - 1.0).abs(),
            ZoneTarget::Empty => u.abs() + v.abs(),
            ZoneTarget::VGone => v.abs(),
        }
    }
}

/// One zone: radii `lo_speed·t <= |x| <= hi_speed·t` (either bound may be
/// absent) with an expected limit state.
#[derive(Debug, Clone)]
pub struct ZoneSpec {
    pub name: String,
    pub lo_speed: Option<f64>,
    pub hi_speed: Option<f64>,
    pub target: ZoneTarget,
}

#[derive(Debug, Clone)]
pub struct ZoneCheck {
    pub name: String,
    pub sup_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ZoneReport {
    /// Finite-horizon tolerance the suprema are compared against; the
    /// underlying statements are exact only as t -> ∞.
    pub tolerance: f64,
    /// Time window actually evaluated (last quarter of snapshots).
    pub window: (f64, f64),
    pub zones: Vec<ZoneCheck>,
    pub pass: bool,
}

/// Supremum of the target deviation over the annulus `lo <= |x| <= hi`.
/// Returns `None` when no grid node falls inside.
pub fn zone_sup(grid: &Grid, state: &GridState, lo: f64, hi: f64, target: ZoneTarget) -> Option<f64> {
    let mut sup: Option<f64> = None;
    for idx in 0..grid.len() {
        let r = grid.radius(idx);
        if r >= lo && r <= hi {
            let d = target.deviation(state.u[idx], state.v[idx]);
            sup = Some(sup.map_or(d, |s: f64| s.max(d)));
        }
    }
    sup
}

/// Evaluates every zone over the last quarter of the snapshots.
pub fn check_zones(traj: &Trajectory, zones: &[ZoneSpec], tolerance: f64) -> Result<ZoneReport> {
    let t_final = traj.final_state().time;
    let t_start = 0.75 * t_final;
    let eval: Vec<&GridState> = traj
        .snapshots
        .iter()
        .filter(|s| s.time >= t_start && s.time > 0.0)
        .collect();
    if eval.is_empty() {
        return Err(Error::ScenarioConfig("no snapshots in the tail window".into()));
    }

    // Zones must be meaningfully wide on the grid when first evaluated.
    let h = traj.grid.spacing;
    let t0 = eval[0].time;
    for z in zones {
        let lo = z.lo_speed.map_or(0.0, |c| c * t0);
        let hi = z.hi_speed.map_or(traj.grid.extent, |c| c * t0);
        if hi - lo < 20.0 * h {
            return Err(Error::ZoneCollapsed {
                zone: z.name.clone(),
                time: t0,
            });
        }
    }

    let mut checks = Vec::with_capacity(zones.len());
    for z in zones {
        let mut sup = 0.0f64;
        let mut seen = false;
        for s in &eval {
            let lo = z.lo_speed.map_or(0.0, |c| c * s.time);
            let hi = z.hi_speed.map_or(f64::INFINITY, |c| c * s.time);
            if let Some(v) = zone_sup(&traj.grid, s, lo, hi.min(traj.grid.extent), z.target) {
                sup = sup.max(v);
                seen = true;
            }
        }
        if !seen {
            return Err(Error::ZoneCollapsed {
                zone: z.name.clone(),
                time: t0,
            });
        }
        checks.push(ZoneCheck {
            name: z.name.clone(),
            sup_deviation: sup,
            pass: sup <= tolerance,
        });
    }

    Ok(ZoneReport {
        tolerance,
        window: (t0, t_final),
        pass: checks.iter().all(|c| c.pass),
        zones: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::sim::GridKind;

    fn flat_state(grid: &Grid, u: f64, v: f64, time: f64) -> GridState {
        GridState {
            time,
            u: vec![u; grid.len()],
            v: vec![v; grid.len()],
        }
    }

    #[test]
    fn zone_sup_is_monotone_under_inclusion() {
        let grid = Grid::new(GridKind::Radial { dim: 2 }, 0.5, 30.0).unwrap();
        let mut state = flat_state(&grid, 0.0, 0.0, 1.0);
        for idx in 0..grid.len() {
            let r = grid.radius(idx);
            state.u[idx] = (r / 30.0).min(1.0);
        }
        let wide = zone_sup(&grid, &state, 5.0, 25.0, ZoneTarget::Empty).unwrap();
        let narrow = zone_sup(&grid, &state, 8.0, 20.0, ZoneTarget::Empty).unwrap();
        assert!(narrow <= wide);
    }

    #[test]
    fn empty_zone_returns_none() {
        let grid = Grid::new(GridKind::Line, 0.5, 10.0).unwrap();
        let state = flat_state(&grid, 0.0, 0.0, 1.0);
        assert!(zone_sup(&grid, &state, 20.0, 30.0, ZoneTarget::Empty).is_none());
    }

    fn synthetic_trajectory(grid: Grid) -> Trajectory {
        // u holds |x| <= 2t, v holds 3t <= |x| <= 6t, empty beyond.
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let snapshots = (0..=10)
            .map(|k| {
                let t = k as f64;
                let mut s = flat_state(&grid, 0.0, 0.0, t);
                for idx in 0..grid.len() {
                    let r = grid.radius(idx);
                    if r <= 2.0 * t {
                        s.u[idx] = 1.0;
                    } else if r >= 3.0 * t && r <= 6.0 * t {
                        s.v[idx] = 1.0;
                    }
                }
                s
            })
            .collect();
        Trajectory {
            grid,
            params,
            dt: 0.1,
            snapshots,
            shell_deviation: 0.0,
        }
    }

    #[test]
    fn three_zone_report_passes_on_synthetic_data() {
        let grid = Grid::new(GridKind::Line, 0.25, 100.0).unwrap();
        let traj = synthetic_trajectory(grid);
        let zones = vec![
            ZoneSpec {
                name: "inner".into(),
                lo_speed: None,
                hi_speed: Some(1.5),
                target: ZoneTarget::UWins,
            },
            ZoneSpec {
                name: "middle".into(),
                lo_speed: Some(3.5),
                hi_speed: Some(5.5),
                target: ZoneTarget::VWins,
            },
            ZoneSpec {
                name: "outer".into(),
                lo_speed: Some(7.0),
                hi_speed: None,
                target: ZoneTarget::Empty,
            },
        ];
        let report = check_zones(&traj, &zones, 0.05).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.zones.len(), 3);
        assert!(report.window.0 >= 7.0);
    }

    #[test]
    fn failing_zone_is_reported() {
        let grid = Grid::new(GridKind::Line, 0.25, 100.0).unwrap();
        let traj = synthetic_trajectory(grid);
        let zones = vec![ZoneSpec {
            name: "wrong".into(),
            lo_speed: Some(3.5),
            hi_speed: Some(5.5),
            target: ZoneTarget::UWins, // v holds this annulus, not u
        }];
        let report = check_zones(&traj, &zones, 0.05).unwrap();
        assert!(!report.pass);
        assert!(report.zones[0].sup_deviation > 1.5);
    }

    #[test]
    fn collapsed_zone_is_a_configuration_error() {
        let grid = Grid::new(GridKind::Line, 0.25, 100.0).unwrap();
        let traj = synthetic_trajectory(grid);
        let zones = vec![ZoneSpec {
            name: "sliver".into(),
            lo_speed: Some(3.0),
            hi_speed: Some(3.1), // 0.1·t wide: under 20h at t = 8
            target: ZoneTarget::VWins,
        }];
        let err = check_zones(&traj, &zones, 0.05).unwrap_err();
        assert!(matches!(err, Error::ZoneCollapsed { .. }), "{err}");
    }
}
