//! One explicit Euler step of the competition system.

use super::grid::{Grid, GridKind};
use crate::error::{Error, Result};
use crate::model::ModelParams;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The two fields at one instant. For plane grids the layout is row-major
/// with x fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridState {
    pub time: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// Stability bound for the explicit step: `0.9 h² / (2 · dim · max(d, 1))`.
pub fn max_stable_dt(grid: &Grid, params: &ModelParams) -> f64 {
    0.9 * grid.spacing * grid.spacing / (2.0 * grid.dim_factor() * params.d.max(1.0))
}

/// Step size that also keeps the scheme monotone and box-preserving: the
/// diffusion bound alone leaves only a 10% margin, which strong reaction
/// coefficients can consume on coarse grids. Always at most
/// [`max_stable_dt`].
pub fn default_dt(grid: &Grid, params: &ModelParams) -> f64 {
    let h2 = grid.spacing * grid.spacing;
    let dim2 = 2.0 * grid.dim_factor();
    // Worst box-interior Lipschitz constants of the two reactions.
    let lip_u = params.r * (1.0 + params.a);
    let lip_v = 1.0 + params.b;
    let per_u = dim2 * params.d / h2 + lip_u;
    let per_v = dim2 / h2 + lip_v;
    0.9 / per_u.max(per_v)
}

/// Advances the state by `dt`, rejecting steps above the stability bound.
/// The result must stay in the `[0, 1]` box; a violation is reported as an
/// error, never clamped away.
pub fn step(grid: &Grid, state: &GridState, params: &ModelParams, dt: f64) -> Result<GridState> {
    let mut out = GridState {
        time: 0.0,
        u: vec![0.0; state.u.len()],
        v: vec![0.0; state.v.len()],
    };
    step_into(grid, state, params, dt, &mut out)?;
    Ok(out)
}

pub(crate) fn step_into(
    grid: &Grid,
    state: &GridState,
    params: &ModelParams,
    dt: f64,
    out: &mut GridState,
) -> Result<()> {
    let bound = max_stable_dt(grid, params);
    if dt > bound * (1.0 + 1e-12) {
        return Err(Error::UnstableTimeStep { dt, bound });
    }
    if !(dt > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "dt",
            value: dt,
        });
    }
    let n = grid.len();
    assert_eq!(state.u.len(), n);
    assert_eq!(state.v.len(), n);
    assert_eq!(out.u.len(), n);
    assert_eq!(out.v.len(), n);

    match grid.kind {
        GridKind::Line => line_step(grid, state, params, dt, out),
        GridKind::Radial { dim } => radial_step(grid, state, params, dt, dim, out),
        GridKind::Plane => plane_step(grid, state, params, dt, out),
    }

    // Comparison-principle box: enforced as an assertion, not a clamp.
    const SLACK: f64 = 1e-12;
    for (idx, &val) in out.u.iter().enumerate() {
        if !((-SLACK..=1.0 + SLACK).contains(&val)) {
            return Err(Error::BoxViolation {
                field: "u",
                value: val,
                index: idx,
            });
        }
    }
    for (idx, &val) in out.v.iter().enumerate() {
        if !((-SLACK..=1.0 + SLACK).contains(&val)) {
            return Err(Error::BoxViolation {
                field: "v",
                value: val,
                index: idx,
            });
        }
    }
    out.time = state.time + dt;
    Ok(())
}

#[inline]
fn react_u(params: &ModelParams, u: f64, v: f64) -> f64 {
    params.r * u * (1.0 - u - params.a * v)
}

#[inline]
fn react_v(params: &ModelParams, u: f64, v: f64) -> f64 {
    v * (1.0 - v - params.b * u)
}

fn line_step(grid: &Grid, state: &GridState, params: &ModelParams, dt: f64, out: &mut GridState) {
    let n = grid.len();
    let h2 = grid.spacing * grid.spacing;
    let (u, v) = (&state.u, &state.v);
    for i in 0..n {
        // Zero-flux ends via mirrored ghost nodes.
        let (im, ip) = (
            if i == 0 { 1 } else { i - 1 },
            if i == n - 1 { n - 2 } else { i + 1 },
        );
        let lap_u = (u[im] - 2.0 * u[i] + u[ip]) / h2;
        let lap_v = (v[im] - 2.0 * v[i] + v[ip]) / h2;
        out.u[i] = u[i] + dt * (params.d * lap_u + react_u(params, u[i], v[i]));
        out.v[i] = v[i] + dt * (lap_v + react_v(params, u[i], v[i]));
    }
}

fn radial_step(
    grid: &Grid,
    state: &GridState,
    params: &ModelParams,
    dt: f64,
    dim: usize,
    out: &mut GridState,
) {
    let n = grid.len();
    let h = grid.spacing;
    let h2 = h * h;
    let (u, v) = (&state.u, &state.v);
    let nm1 = (dim - 1) as f64;
    for i in 0..n {
        let (lap_u, lap_v) = if i == 0 {
            // Symmetric limit at the origin: Δf(0) ≈ 2 dim (f(h) - f(0)) / h².
            (
                2.0 * dim as f64 * (u[1] - u[0]) / h2,
                2.0 * dim as f64 * (v[1] - v[0]) / h2,
            )
        } else if i == n - 1 {
            // Reflecting outer boundary: mirrored ghost kills the first
            // derivative term.
            (2.0 * (u[n - 2] - u[n - 1]) / h2, 2.0 * (v[n - 2] - v[n - 1]) / h2)
        } else {
            let r = i as f64 * h;
            (
                (u[i - 1] - 2.0 * u[i] + u[i + 1]) / h2
                    + nm1 / r * (u[i + 1] - u[i - 1]) / (2.0 * h),
                (v[i - 1] - 2.0 * v[i] + v[i + 1]) / h2
                    + nm1 / r * (v[i + 1] - v[i - 1]) / (2.0 * h),
            )
        };
        out.u[i] = u[i] + dt * (params.d * lap_u + react_u(params, u[i], v[i]));
        out.v[i] = v[i] + dt * (lap_v + react_v(params, u[i], v[i]));
    }
}

fn plane_step(grid: &Grid, state: &GridState, params: &ModelParams, dt: f64, out: &mut GridState) {
    let nx = grid.nodes_per_axis();
    let ny = nx;
    let h2 = grid.spacing * grid.spacing;
    let (u, v) = (&state.u, &state.v);

    let row_update = |j: usize, out_u_row: &mut [f64], out_v_row: &mut [f64]| {
        let jm = if j == 0 { 1 } else { j - 1 };
        let jp = if j == ny - 1 { ny - 2 } else { j + 1 };
        for i in 0..nx {
            let im = if i == 0 { 1 } else { i - 1 };
            let ip = if i == nx - 1 { nx - 2 } else { i + 1 };
            let c = j * nx + i;
            let lap_u =
                (u[jm * nx + i] + u[jp * nx + i] + u[j * nx + im] + u[j * nx + ip] - 4.0 * u[c])
                    / h2;
            let lap_v =
                (v[jm * nx + i] + v[jp * nx + i] + v[j * nx + im] + v[j * nx + ip] - 4.0 * v[c])
                    / h2;
            out_u_row[i] = u[c] + dt * (params.d * lap_u + react_u(params, u[c], v[c]));
            out_v_row[i] = v[c] + dt * (lap_v + react_v(params, u[c], v[c]));
        }
    };

    // Disjoint row bands; every output cell is a pure function of the input
    // state, so the parallel split cannot change results.
    #[cfg(feature = "parallel")]
    out.u
        .par_chunks_mut(nx)
        .zip(out.v.par_chunks_mut(nx))
        .enumerate()
        .for_each(|(j, (ur, vr))| row_update(j, ur, vr));

    #[cfg(not(feature = "parallel"))]
    out.u
        .chunks_mut(nx)
        .zip(out.v.chunks_mut(nx))
        .enumerate()
        .for_each(|(j, (ur, vr))| row_update(j, ur, vr));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::grid::GridKind;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap()
    }

    #[test]
    fn exclusion_state_is_a_fixed_point() {
        let grid = Grid::new(GridKind::Line, 0.2, 10.0).unwrap();
        let n = grid.len();
        let state = GridState {
            time: 0.0,
            u: vec![1.0; n],
            v: vec![0.0; n],
        };
        let dt = max_stable_dt(&grid, &params());
        let next = step(&grid, &state, &params(), dt).unwrap();
        assert_eq!(next.u, state.u);
        assert_eq!(next.v, state.v);
    }

    #[test]
    fn constant_state_matches_ode_oracle() {
        // Spatially constant fields reduce to the two-species logistic ODE;
        // oracle integrates it with a 100x smaller Euler step.
        let grid = Grid::new(GridKind::Line, 0.2, 5.0).unwrap();
        let p = ModelParams::new(0.5, 1.3, 2.0, 3.0).unwrap();
        let (u0, v0) = (0.3, 0.4);
        let n = grid.len();
        let mut state = GridState {
            time: 0.0,
            u: vec![u0; n],
            v: vec![v0; n],
        };
        let dt = max_stable_dt(&grid, &p);
        let steps = 50;
        for _ in 0..steps {
            state = step(&grid, &state, &p, dt).unwrap();
        }
        let (mut uo, mut vo) = (u0, v0);
        let fine = dt / 100.0;
        for _ in 0..steps * 100 {
            let du = p.r * uo * (1.0 - uo - p.a * vo);
            let dv = vo * (1.0 - vo - p.b * uo);
            uo += fine * du;
            vo += fine * dv;
        }
        // Forward Euler is first order in dt.
        let t_final = dt * steps as f64;
        assert!((state.u[3] - uo).abs() < 2.0 * dt * t_final, "u: {} vs {}", state.u[3], uo);
        assert!((state.v[3] - vo).abs() < 2.0 * dt * t_final);
    }

    #[test]
    fn half_plane_step_matches_hand_stencil() {
        // Five cells of complement data u = [1,1,1,0,0], one explicit step,
        // compared against the 3-point formulas evaluated by hand.
        let grid = Grid::new(GridKind::Line, 1.0, 2.0).unwrap();
        let p = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let state = GridState {
            time: 0.0,
            u: vec![1.0, 1.0, 1.0, 0.0, 0.0],
            v: vec![0.0, 0.0, 0.0, 1.0, 1.0],
        };
        let dt = 0.25;
        let next = step(&grid, &state, &p, dt).unwrap();
        // Cell 2: lap_u = (1 - 2 + 0) = -1, reaction = 1·(1-1-0) = 0.
        assert_eq!(next.u[2], 1.0 - 0.25);
        // Cell 3: lap_u = (1 - 0 + 0) = 1, reaction = 0.
        assert_eq!(next.u[3], 0.25);
        // Cell 3: lap_v = (0 - 2 + 1) = -1, reaction = 1·(1-1-0) = 0.
        assert_eq!(next.v[3], 1.0 - 0.25);
        // Cell 0 (mirrored ghost): lap_u = 2(u1 - u0) = 0.
        assert_eq!(next.u[0], 1.0);
        // Cell 4 (mirrored ghost): lap_v = 2(v3 - v4) = 0, reaction 0.
        assert_eq!(next.v[4], 1.0);
    }

    #[test]
    fn unstable_step_is_rejected() {
        let grid = Grid::new(GridKind::Line, 0.2, 10.0).unwrap();
        let n = grid.len();
        let state = GridState {
            time: 0.0,
            u: vec![0.5; n],
            v: vec![0.5; n],
        };
        let dt = max_stable_dt(&grid, &params()) * 1.01;
        let err = step(&grid, &state, &params(), dt).unwrap_err();
        assert!(matches!(err, Error::UnstableTimeStep { .. }));
    }

    #[test]
    fn box_violation_is_reported_not_clamped() {
        let grid = Grid::new(GridKind::Line, 0.2, 10.0).unwrap();
        let n = grid.len();
        // A constant state above the box stays above it after one step
        // (zero diffusion term, mild logistic decay).
        let state = GridState {
            time: 0.0,
            u: vec![1.5; n],
            v: vec![0.0; n],
        };
        let dt = max_stable_dt(&grid, &params());
        let err = step(&grid, &state, &params(), dt).unwrap_err();
        assert!(matches!(err, Error::BoxViolation { field: "u", .. }), "{err}");
    }

    #[test]
    fn radial_dim_one_reproduces_line_kind() {
        // With dim = 1 the curvature term vanishes; stepping symmetric line
        // data must agree with the radial half-grid to roundoff.
        let p = ModelParams::new(1.5, 0.8, 2.0, 3.0).unwrap();
        let half = Grid::new(GridKind::Radial { dim: 1 }, 0.25, 10.0).unwrap();
        let full = Grid::new(GridKind::Line, 0.25, 10.0).unwrap();
        let nr = half.len();
        let bump = |r: f64| (-(r * r) / 8.0).exp() * 0.7;
        let radial_state = GridState {
            time: 0.0,
            u: (0..nr).map(|i| bump(half.axis_coord(i))).collect(),
            v: (0..nr).map(|i| 0.5 - 0.3 * bump(half.axis_coord(i))).collect(),
        };
        let line_state = GridState {
            time: 0.0,
            u: (0..full.len()).map(|i| bump(full.axis_coord(i))).collect(),
            v: (0..full.len())
                .map(|i| 0.5 - 0.3 * bump(full.axis_coord(i)))
                .collect(),
        };
        let dt = max_stable_dt(&half, &p).min(max_stable_dt(&full, &p));
        let mut rs = radial_state;
        let mut ls = line_state;
        for _ in 0..20 {
            rs = step(&half, &rs, &p, dt).unwrap();
            ls = step(&full, &ls, &p, dt).unwrap();
        }
        let mid = (full.len() - 1) / 2;
        for i in 0..nr {
            assert!(
                (rs.u[i] - ls.u[mid + i]).abs() < 1e-12,
                "u mismatch at r index {i}"
            );
            assert!((rs.v[i] - ls.v[mid + i]).abs() < 1e-12);
        }
    }

    #[test]
    fn competitive_order_is_preserved_on_random_pairs() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;

        let grid = Grid::new(GridKind::Line, 0.2, 6.0).unwrap();
        let p = params();
        let dt = max_stable_dt(&grid, &p);
        let n = grid.len();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let mut s1 = GridState {
                time: 0.0,
                u: (0..n).map(|_| rng.r#gen::<f64>()).collect(),
                v: (0..n).map(|_| rng.r#gen::<f64>()).collect(),
            };
            let mut s2 = GridState {
                time: 0.0,
                u: (0..n).map(|_| rng.r#gen::<f64>()).collect(),
                v: (0..n).map(|_| rng.r#gen::<f64>()).collect(),
            };
            // Order the pair competitively: u1 <= u2, v1 >= v2.
            for i in 0..n {
                if s1.u[i] > s2.u[i] {
                    (s1.u[i], s2.u[i]) = (s2.u[i], s1.u[i]);
                }
                if s1.v[i] < s2.v[i] {
                    (s1.v[i], s2.v[i]) = (s2.v[i], s1.v[i]);
                }
            }
            let n1 = step(&grid, &s1, &p, dt).unwrap();
            let n2 = step(&grid, &s2, &p, dt).unwrap();
            for i in 0..n {
                assert!(n1.u[i] <= n2.u[i] + 1e-14);
                assert!(n1.v[i] >= n2.v[i] - 1e-14);
            }
        }
    }
}
