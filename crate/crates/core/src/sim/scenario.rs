//! Indicator initial data from constructive sets.

use super::grid::Grid;
use super::stepper::GridState;
use crate::error::{Error, Result};
use crate::geometry::IndicatorSet;

/// Initial-support description. Indicator data is sampled at nodes, not
/// mollified.
#[derive(Debug, Clone)]
pub enum Scenario {
    /// Both species start on disjoint compact supports; everything else is
    /// empty space.
    CompactPair {
        u_support: IndicatorSet,
        v_support: IndicatorSet,
    },
    /// The species partition space: `v` fills the complement of `u`'s
    /// support.
    Complement { u_support: IndicatorSet },
}

impl Scenario {
    pub fn u_support(&self) -> &IndicatorSet {
        match self {
            Scenario::CompactPair { u_support, .. } => u_support,
            Scenario::Complement { u_support } => u_support,
        }
    }
}

/// Samples the scenario onto the grid.
///
/// For the compact-pair scenario both supports must stay clear of the outer
/// boundary by at least ten spacings and must not overlap on the sample.
pub fn init_state(grid: &Grid, scenario: &Scenario) -> Result<GridState> {
    let n = grid.len();
    let mut u = vec![0.0; n];
    let mut v = vec![0.0; n];
    let expected_dim = grid.point_dim();

    let check_dim = |set: &IndicatorSet| -> Result<()> {
        if set.dim() != expected_dim && !set.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: expected_dim,
                got: set.dim(),
            });
        }
        Ok(())
    };

    match scenario {
        Scenario::CompactPair {
            u_support,
            v_support,
        } => {
            check_dim(u_support)?;
            check_dim(v_support)?;
            let margin = 10.0 * grid.spacing;
            for idx in 0..n {
                let p = grid.point(idx);
                let in_u = u_support.contains(&p);
                let in_v = v_support.contains(&p);
                if in_u && in_v {
                    return Err(Error::ScenarioConfig(format!(
                        "supports overlap at {p:?}"
                    )));
                }
                if (in_u || in_v) && grid.boundary_distance(idx) < margin {
                    return Err(Error::ScenarioConfig(format!(
                        "support reaches within 10 spacings of the outer boundary at {p:?}"
                    )));
                }
                u[idx] = if in_u { 1.0 } else { 0.0 };
                v[idx] = if in_v { 1.0 } else { 0.0 };
            }
        }
        Scenario::Complement { u_support } => {
            check_dim(u_support)?;
            for idx in 0..n {
                let p = grid.point(idx);
                let in_u = u_support.contains(&p);
                u[idx] = if in_u { 1.0 } else { 0.0 };
                v[idx] = 1.0 - u[idx];
            }
        }
    }

    Ok(GridState { time: 0.0, u, v })
}
