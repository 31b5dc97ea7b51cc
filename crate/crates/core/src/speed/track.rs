//! Level-set front tracking along a ray.

use crate::error::{Error, Result};
use crate::sim::{GridKind, GridState, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    U,
    V,
}

impl Field {
    pub fn of<'a>(&self, state: &'a GridState) -> &'a [f64] {
        match self {
            Field::U => &state.u,
            Field::V => &state.v,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Field::U => "u",
            Field::V => "v",
        }
    }
}

/// Ray through the origin along which levels are tracked.
#[derive(Debug, Clone)]
pub enum Direction {
    /// +x on line grids, the radial ray on radial grids.
    Positive,
    /// -x on line grids.
    Negative,
    /// Arbitrary unit vector, plane grids only.
    Vector(Vec<f64>),
}

/// Outermost level crossings per snapshot; `None` records a snapshot where
/// the level is unattained along the ray.
#[derive(Debug, Clone)]
pub struct FrontTrack {
    pub field: Field,
    pub level: f64,
    pub samples: Vec<(f64, Option<f64>)>,
}

impl FrontTrack {
    pub fn attained(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .filter_map(|&(t, p)| p.map(|pos| (t, pos)))
    }
}

/// Samples the field along the ray at grid resolution.
fn ray_values(traj: &Trajectory, state: &GridState, field: Field, dir: &Direction) -> Vec<f64> {
    let grid = &traj.grid;
    let data = field.of(state);
    match (grid.kind, dir) {
        (GridKind::Radial { .. }, Direction::Positive) => data.to_vec(),
        (GridKind::Line, Direction::Positive) => {
            let mid = (grid.len() - 1) / 2;
            data[mid..].to_vec()
        }
        (GridKind::Line, Direction::Negative) => {
            let mid = (grid.len() - 1) / 2;
            data[..=mid].iter().rev().cloned().collect()
        }
        (GridKind::Plane, Direction::Vector(e)) => {
            let n = grid.nodes_per_axis();
            let h = grid.spacing;
            let l = grid.extent;
            let s_max = l / e[0].abs().max(e[1].abs());
            let count = (s_max / h).floor() as usize + 1;
            (0..count)
                .map(|k| {
                    let x = k as f64 * h * e[0];
                    let y = k as f64 * h * e[1];
                    // Bilinear interpolation.
                    let fx = ((x + l) / h).clamp(0.0, (n - 1) as f64);
                    let fy = ((y + l) / h).clamp(0.0, (n - 1) as f64);
                    let (i0, j0) = (fx.floor() as usize, fy.floor() as usize);
                    let (i1, j1) = ((i0 + 1).min(n - 1), (j0 + 1).min(n - 1));
                    let (tx, ty) = (fx - i0 as f64, fy - j0 as f64);
                    let f00 = data[j0 * n + i0];
                    let f10 = data[j0 * n + i1];
                    let f01 = data[j1 * n + i0];
                    let f11 = data[j1 * n + i1];
                    f00 * (1.0 - tx) * (1.0 - ty)
                        + f10 * tx * (1.0 - ty)
                        + f01 * (1.0 - tx) * ty
                        + f11 * tx * ty
                })
                .collect()
        }
        (GridKind::Plane, Direction::Positive) => {
            ray_values(traj, state, field, &Direction::Vector(vec![1.0, 0.0]))
        }
        (GridKind::Plane, Direction::Negative) => {
            ray_values(traj, state, field, &Direction::Vector(vec![-1.0, 0.0]))
        }
        _ => panic!("direction not supported on this grid kind"),
    }
}

/// Outermost position where the ray profile still reaches `level`, found by
/// scanning inward from the far end with linear interpolation between
/// samples.
fn outermost_crossing(values: &[f64], h: f64, level: f64) -> Option<f64> {
    let n = values.len();
    if values[n - 1] >= level {
        return Some((n - 1) as f64 * h);
    }
    for k in (0..n - 1).rev() {
        if values[k] >= level {
            let t = (values[k] - level) / (values[k] - values[k + 1]);
            return Some((k as f64 + t) * h);
        }
    }
    None
}

/// Tracks the outermost `level` crossing of `field` along `direction` over
/// all snapshots of the trajectory.
pub fn track_level(
    traj: &Trajectory,
    field: Field,
    level: f64,
    direction: &Direction,
) -> Result<FrontTrack> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::OutOfRange {
            name: "level",
            value: level,
            range: "(0, 1)".into(),
        });
    }
    let h = traj.grid.spacing;
    let samples: Vec<(f64, Option<f64>)> = traj
        .snapshots
        .iter()
        .map(|s| {
            let ray = ray_values(traj, s, field, direction);
            (s.time, outermost_crossing(&ray, h, level))
        })
        .collect();
    if samples.iter().all(|(_, p)| p.is_none()) {
        return Err(Error::EmptyTrack {
            field: field.name(),
            level,
        });
    }
    Ok(FrontTrack {
        field,
        level,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::IndicatorSet;
    use crate::model::ModelParams;
    use crate::sim::{run, Grid, RunOptions, Scenario};

    fn line_traj() -> Trajectory {
        let grid = Grid::new(GridKind::Line, 0.25, 40.0).unwrap();
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let scenario = Scenario::CompactPair {
            u_support: IndicatorSet::ball(vec![0.0], 5.0).unwrap(),
            v_support: IndicatorSet::empty(1),
        };
        run(
            &grid,
            &scenario,
            &params,
            &RunOptions {
                t_final: 10.0,
                snapshot_every: 1.0,
                dt: None,
            },
        )
        .unwrap()
    }

    #[test]
    fn expanding_front_moves_outward() {
        let traj = line_traj();
        let track = track_level(&traj, Field::U, 0.5, &Direction::Positive).unwrap();
        let positions: Vec<f64> = track.attained().map(|(_, p)| p).collect();
        assert!(positions.len() >= 10);
        assert!(positions.windows(2).all(|w| w[1] >= w[0] - 1e-9));
        assert!(positions.last().unwrap() > &10.0);
    }

    #[test]
    fn negative_direction_mirrors_positive_for_symmetric_data() {
        let traj = line_traj();
        let pos = track_level(&traj, Field::U, 0.5, &Direction::Positive).unwrap();
        let neg = track_level(&traj, Field::U, 0.5, &Direction::Negative).unwrap();
        for ((_, a), (_, b)) in pos.samples.iter().zip(&neg.samples) {
            match (a, b) {
                (Some(x), Some(y)) => assert!((x - y).abs() < 1e-9),
                (None, None) => {}
                _ => panic!("attainment mismatch"),
            }
        }
    }

    #[test]
    fn absent_field_yields_empty_track_error() {
        let traj = line_traj();
        let err = track_level(&traj, Field::V, 0.5, &Direction::Positive).unwrap_err();
        assert!(matches!(err, Error::EmptyTrack { field: "v", .. }), "{err}");
    }

    #[test]
    fn crossing_interpolates_between_cells() {
        // values drop from 1 to 0 between index 3 and 4: level 0.25 sits at
        // 3.75 cells.
        let values = [1.0, 1.0, 1.0, 1.0, 0.0, 0.0];
        let pos = outermost_crossing(&values, 0.5, 0.25).unwrap();
        assert!((pos - 3.75 * 0.5).abs() < 1e-12);
    }

    #[test]
    fn outermost_crossing_ignores_inner_dips() {
        // Non-monotone profile: the outermost crossing is reported.
        let values = [0.2, 0.9, 0.1, 0.8, 0.3, 0.05];
        let pos = outermost_crossing(&values, 1.0, 0.5).unwrap();
        assert!(pos > 3.0 && pos < 4.0, "pos {pos}");
    }
}
