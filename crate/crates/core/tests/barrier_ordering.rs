//! Discrete comparison test for the lower barrier: the simulator started
//! from the barrier's initial pair stays competitively below the run
//! started from the plateau initial data, snapshot by snapshot.
//!
//! The launch offset of an honest certificate is far too large to grid in
//! full, so the comparison runs on a moving window around the interface: a
//! line grid in window coordinates, with the barrier built for one space
//! dimension so the radial term vanishes identically and window and barrier
//! see the same operator.

use compfront_core::cert::{assemble_certificate, CertificateKind};
use compfront_core::front::{solve_bistable_front, BistableOptions};
use compfront_core::sim::{run_from, Grid, GridKind, GridState, RunOptions};
use compfront_core::ModelParams;

#[test]
fn barrier_started_run_stays_below_plateau_started_run() {
    let params = ModelParams::new(1.0, 1.0, 2.0, 3.0).unwrap();
    let profile = solve_bistable_front(&params, &BistableOptions::default()).unwrap();
    let cert = assemble_certificate(
        &profile,
        &params,
        profile.speed / 2.0,
        CertificateKind::Sub,
        1,
    )
    .unwrap();
    let values = cert.values.clone();
    let rho = values.rho.unwrap();
    let window_center = values.r_big;

    // Window coordinates x ∈ [-60, 60] around the launch offset.
    let grid = Grid::new(GridKind::Line, 0.1, 60.0).unwrap();
    let n = grid.len();
    let radius_of = |i: usize| window_center + grid.axis_coord(i);

    let barrier_state = {
        let mut u = vec![0.0; n];
        let mut v = vec![0.0; n];
        for i in 0..n {
            let (ul, vu) = cert.lower_pair(0.0, radius_of(i));
            u[i] = ul;
            v[i] = vu;
        }
        GridState { time: 0.0, u, v }
    };
    let plateau_state = {
        let mut u = vec![0.0; n];
        let mut v = vec![1.0; n];
        for i in 0..n {
            if radius_of(i) < rho {
                u[i] = 1.0 - values.delta;
                v[i] = values.delta;
            }
        }
        GridState { time: 0.0, u, v }
    };

    // The barrier must start below the plateau data everywhere.
    for i in 0..n {
        assert!(
            barrier_state.u[i] <= plateau_state.u[i] + 1e-12,
            "initial u ordering fails at window x = {}",
            grid.axis_coord(i)
        );
        assert!(barrier_state.v[i] >= plateau_state.v[i] - 1e-12);
    }

    let opts = RunOptions {
        t_final: 10.0,
        snapshot_every: 1.0,
        dt: None,
    };
    let lower = run_from(&grid, barrier_state, &params, &opts).unwrap();
    let upper = run_from(&grid, plateau_state, &params, &opts).unwrap();
    assert_eq!(lower.snapshots.len(), upper.snapshots.len());
    for (a, b) in lower.snapshots.iter().zip(&upper.snapshots) {
        for i in 0..n {
            assert!(
                a.u[i] <= b.u[i] + 1e-12,
                "u order broken at t = {}, x = {}",
                a.time,
                grid.axis_coord(i)
            );
            assert!(
                a.v[i] >= b.v[i] - 1e-12,
                "v order broken at t = {}, x = {}",
                a.time,
                grid.axis_coord(i)
            );
        }
    }
}
