//! Bisection search for the critical invasion radius.
//!
//! The probe starts `u` on a centered ball of radius ρ with `v` filling the
//! complement — the least favorable admissible environment — and declares
//! success when `u` holds the origin at a high level after a fixed probing
//! time. By the comparison principle success is monotone in ρ, so bisection
//! brackets the smallest invading radius to grid resolution.

use super::grid::{Grid, GridKind};
use super::run::{run, RunOptions, Trajectory};
use super::scenario::Scenario;
use crate::error::{Error, Result};
use crate::geometry::IndicatorSet;
use crate::model::ModelParams;

#[derive(Debug, Clone)]
pub struct RadiusSearchOptions {
    /// Radial grid used for every probe run.
    pub grid: Grid,
    /// Upper end of the search interval.
    pub rho_max: f64,
    /// Bisection iterations after the initial bracket.
    pub n_bisect: usize,
    /// Probe horizon.
    pub t_probe: f64,
    /// Success criterion: `u(t_probe, 0) >= success_level`.
    pub success_level: f64,
}

#[derive(Debug, Clone)]
pub struct RadiusSearchResult {
    /// Smallest radius found to invade, within grid resolution.
    pub rho_star: f64,
    /// Largest radius found to fail (0 when every probe succeeded).
    pub rho_fail: f64,
    /// All probed radii with their outcomes, in probe order.
    pub evaluations: Vec<(f64, bool)>,
}

/// Runs one probe and reports whether `u` captured the origin.
pub fn probe_invasion(
    params: &ModelParams,
    opts: &RadiusSearchOptions,
    rho: f64,
) -> Result<(bool, Trajectory)> {
    let dim = match opts.grid.kind {
        GridKind::Radial { dim } => dim,
        _ => {
            return Err(Error::ScenarioConfig(
                "invasion search needs a radial grid".into(),
            ))
        }
    };
    let scenario = Scenario::Complement {
        u_support: IndicatorSet::ball(vec![0.0; dim], rho)?,
    };
    let traj = run(
        &opts.grid,
        &scenario,
        params,
        &RunOptions {
            t_final: opts.t_probe,
            snapshot_every: opts.t_probe,
            dt: None,
        },
    )?;
    let success = traj.final_state().u[0] >= opts.success_level;
    Ok((success, traj))
}

pub fn invasion_radius_search(
    params: &ModelParams,
    opts: &RadiusSearchOptions,
) -> Result<RadiusSearchResult> {
    params.validate_strong()?;
    if !(opts.rho_max > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "rho_max",
            value: opts.rho_max,
        });
    }
    let h = opts.grid.spacing;
    let mut evaluations = Vec::new();

    let (top_ok, _) = probe_invasion(params, opts, opts.rho_max)?;
    evaluations.push((opts.rho_max, top_ok));
    if !top_ok {
        return Err(Error::NoInvasion {
            rho_max: opts.rho_max,
        });
    }

    let mut lo = 0.0; // failing (the empty seed certainly fails)
    let mut hi = opts.rho_max; // succeeding
    for _ in 0..opts.n_bisect {
        if hi - lo <= h {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let (ok, _) = probe_invasion(params, opts, mid)?;
        evaluations.push((mid, ok));
        if ok {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    Ok(RadiusSearchResult {
        rho_star: hi,
        rho_fail: lo,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn search_opts() -> RadiusSearchOptions {
        RadiusSearchOptions {
            grid: Grid::new(GridKind::Radial { dim: 2 }, 0.25, 40.0).unwrap(),
            rho_max: 12.0,
            n_bisect: 8,
            t_probe: 30.0,
            success_level: 0.9,
        }
    }

    #[test]
    fn finds_a_threshold_radius_for_strong_competition() {
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let result = invasion_radius_search(&params, &search_opts()).unwrap();
        assert!(result.rho_star > result.rho_fail);
        assert!(result.rho_star > 0.25, "tiny seeds die under bistable flow");
        assert!(result.rho_star < 12.0);
        // Bracket width reached grid resolution.
        assert!(result.rho_star - result.rho_fail <= 2.0 * 0.25);
    }

    #[test]
    fn success_is_monotone_in_radius() {
        // Comparison-principle oracle: if ρ invades then 2ρ invades.
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let opts = search_opts();
        let result = invasion_radius_search(&params, &opts).unwrap();
        let rho = result.rho_star;
        let (ok, _) = probe_invasion(&params, &opts, rho).unwrap();
        let (ok2, _) = probe_invasion(&params, &opts, (2.0 * rho).min(opts.rho_max)).unwrap();
        assert!(ok);
        assert!(ok2, "doubling the seed lost the invasion");
    }

    #[test]
    fn no_invasion_up_to_rho_max_is_an_error() {
        // Punishing competition against u with a small allowed radius.
        let params = ModelParams::new(1.0, 1.0, 5.0, 1.1).unwrap();
        let opts = RadiusSearchOptions {
            rho_max: 1.0,
            ..search_opts()
        };
        let err = invasion_radius_search(&params, &opts).unwrap_err();
        assert!(matches!(err, Error::NoInvasion { .. }), "{err}");
    }
}
