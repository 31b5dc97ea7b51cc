//! The seven subcommands.

use crate::config::DirectionSpec;
use crate::manifest::{load_trajectory, store_trajectory, Ctx};
use crate::CliError;
use compfront_core::cert::{
    assemble_certificate, exponential_bound_check, shrinking_ball_check, CertificateKind,
    ScanGrid, Verdict,
};
use compfront_core::front::{solve_bistable_front, solve_kpp_front, BistableOptions};
use compfront_core::geometry::{
    classify_directions, covering_check, envelope_membership, speed_function, ClassifyOptions,
    TauLadder,
};
use compfront_core::io as csvio;
use compfront_core::sim::{
    invasion_radius_search, run, GridKind, RadiusSearchOptions, RunOptions,
};
use compfront_core::speed::{
    check_zones, fit_speed, track_level, Direction, Field, ZoneSpec, ZoneTarget,
};
use compfront_core::{Error as CoreError, ModelParams};
use std::path::Path;

fn numeric(e: CoreError) -> CliError {
    CliError::numeric(e.to_string())
}

fn bistable_options(ctx: &Ctx) -> BistableOptions {
    BistableOptions {
        l_xi: ctx.cfg.front.l_xi,
        n_points: ctx.cfg.front.n_points,
        tol: ctx.cfg.front.tol,
        ..BistableOptions::default()
    }
}

fn solve_front_for(ctx: &Ctx, params: &ModelParams) -> Result<compfront_core::front::FrontProfile, CliError> {
    solve_bistable_front(params, &bistable_options(ctx)).map_err(numeric)
}

pub fn front(mut ctx: Ctx) -> Result<(), CliError> {
    let params = ctx.cfg.params.to_model().map_err(|e| CliError::config(e.to_string()))?;
    let speeds = params.validate_strong().map_err(|e| CliError::config(e.to_string()))?;
    let profile = solve_front_for(&ctx, &params)?;
    ctx.write_file("profile.csv", &csvio::profile_csv(&profile))?;
    ctx.record("c_u", speeds.c_u);
    ctx.record("c_v", speeds.c_v);
    ctx.record("c_uv", profile.speed);
    ctx.record("residual_norm", profile.residual_norm);
    if ctx.cfg.front.kpp {
        let l = ctx.cfg.front.l_xi;
        let n = ctx.cfg.front.n_points;
        let u_front = solve_kpp_front(params.d, params.r, speeds.c_u, l, n).map_err(numeric)?;
        ctx.write_file("kpp_u.csv", &csvio::kpp_csv(&u_front))?;
        let v_front = solve_kpp_front(1.0, 1.0, speeds.c_v, l, n).map_err(numeric)?;
        ctx.write_file("kpp_v.csv", &csvio::kpp_csv(&v_front))?;
    }
    println!("c_uv = {}", profile.speed);
    ctx.finish("front")
}

pub fn simulate(mut ctx: Ctx) -> Result<(), CliError> {
    let params = ctx.cfg.params.to_model().map_err(|e| CliError::config(e.to_string()))?;
    let grid = ctx.cfg.grid.to_grid().map_err(|e| CliError::config(e.to_string()))?;
    let scenario = ctx
        .cfg
        .scenario
        .to_scenario(&grid)
        .map_err(|e| CliError::config(e.to_string()))?;
    let opts = RunOptions {
        t_final: ctx.cfg.simulate.t_final,
        snapshot_every: ctx.cfg.simulate.snapshot_every,
        dt: ctx.cfg.simulate.dt,
    };
    let traj = run(&grid, &scenario, &params, &opts).map_err(numeric)?;
    let (max_u, max_v) = traj.final_maxima();
    ctx.record("dt", traj.dt);
    ctx.record("snapshots", traj.snapshots.len() as i64);
    ctx.record("shell_deviation", traj.shell_deviation);
    ctx.record("final_max_u", max_u);
    ctx.record("final_max_v", max_v);
    ctx.record("u_extinct", max_u < 0.01);
    ctx.record("v_extinct", max_v < 0.01);
    store_trajectory(&mut ctx, &traj)?;
    println!(
        "simulated to t = {} ({} snapshots), shell deviation {:.3e}",
        ctx.cfg.simulate.t_final,
        traj.snapshots.len(),
        traj.shell_deviation
    );
    ctx.finish("simulate")
}

fn parse_field(name: &str) -> Result<Field, CliError> {
    match name {
        "u" => Ok(Field::U),
        "v" => Ok(Field::V),
        other => Err(CliError::config(format!("unknown field `{other}`"))),
    }
}

pub fn speed(mut ctx: Ctx, trajectory: &Path) -> Result<(), CliError> {
    let traj = load_trajectory(trajectory)?;
    let field = parse_field(&ctx.cfg.speed.field)?;
    let direction = match &ctx.cfg.speed.direction {
        DirectionSpec::Named(name) => match name.as_str() {
            "positive" => Direction::Positive,
            "negative" => Direction::Negative,
            other => return Err(CliError::config(format!("unknown direction `{other}`"))),
        },
        DirectionSpec::Vector(v) => Direction::Vector(v.clone()),
    };
    let track = track_level(&traj, field, ctx.cfg.speed.level, &direction).map_err(numeric)?;
    ctx.write_file("track.csv", &csvio::track_csv(&track))?;
    let estimate = fit_speed(&track).map_err(numeric)?;
    ctx.record("speed", estimate.speed);
    ctx.record("intercept", estimate.intercept);
    ctx.record("rms_residual", estimate.rms_residual);
    ctx.record(
        "fit_window",
        toml::Value::Array(vec![estimate.fit_window.0.into(), estimate.fit_window.1.into()]),
    );
    println!(
        "{} front speed {:.6} (rms residual {:.3e}, window {:?})",
        field.name(),
        estimate.speed,
        estimate.rms_residual,
        estimate.fit_window
    );
    ctx.finish("speed")
}

pub fn zones(mut ctx: Ctx, trajectory: &Path) -> Result<(), CliError> {
    let traj = load_trajectory(trajectory)?;
    let params = traj.params;
    let speeds = params.validate().map_err(numeric)?;
    let c_uv = match ctx.cfg.zones.c_uv {
        Some(c) => c,
        None => solve_front_for(&ctx, &params)?.speed,
    };
    let zc = ctx.cfg.zones.clone();
    let zones = match zc.case.as_str() {
        // v is the faster invader: u holds an inner cone at the front-system
        // speed, v fills a middle annulus, nothing lives outside.
        "v-faster" => {
            let c1 = zc.c1.unwrap_or(c_uv + 0.3 * (speeds.c_v - c_uv));
            let c2 = zc.c2.unwrap_or(speeds.c_v - 0.3 * (speeds.c_v - c_uv));
            vec![
                ZoneSpec {
                    name: "inner".into(),
                    lo_speed: None,
                    hi_speed: Some(zc.inner_speed.unwrap_or(0.5 * c_uv)),
                    target: ZoneTarget::UWins,
                },
                ZoneSpec {
                    name: "middle".into(),
                    lo_speed: Some(c1),
                    hi_speed: Some(c2),
                    target: ZoneTarget::VWins,
                },
                ZoneSpec {
                    name: "outer".into(),
                    lo_speed: Some(zc.outer_speed.unwrap_or(1.1 * speeds.c_v)),
                    hi_speed: None,
                    target: ZoneTarget::Empty,
                },
            ]
        }
        // u is the faster invader: u takes everything inside its own speed
        // and v dies everywhere.
        "u-faster" => vec![
            ZoneSpec {
                name: "inner".into(),
                lo_speed: None,
                hi_speed: Some(zc.inner_speed.unwrap_or(0.6 * speeds.c_u)),
                target: ZoneTarget::UWins,
            },
            ZoneSpec {
                name: "v-everywhere".into(),
                lo_speed: None,
                hi_speed: None,
                target: ZoneTarget::VGone,
            },
            ZoneSpec {
                name: "outer".into(),
                lo_speed: Some(zc.outer_speed.unwrap_or(1.1 * speeds.c_u)),
                hi_speed: None,
                target: ZoneTarget::Empty,
            },
        ],
        other => {
            return Err(CliError::config(format!(
                "unknown zones case `{other}` (expected u-faster or v-faster)"
            )))
        }
    };
    let report = check_zones(&traj, &zones, zc.tolerance).map_err(numeric)?;
    ctx.record("tolerance", report.tolerance);
    ctx.record("c_uv", c_uv);
    ctx.record("pass", report.pass);
    ctx.record(
        "window",
        toml::Value::Array(vec![report.window.0.into(), report.window.1.into()]),
    );
    let mut lines = String::new();
    lines.push_str(&format!(
        "# finite-horizon tolerance {} over t in [{}, {}]; the limiting statements are asymptotic\n",
        report.tolerance, report.window.0, report.window.1
    ));
    lines.push_str("zone,sup_deviation,pass\n");
    for z in &report.zones {
        lines.push_str(&format!("{},{},{}\n", z.name, z.sup_deviation, z.pass));
        ctx.record(&format!("sup_{}", z.name), z.sup_deviation);
        println!("zone {:<14} sup {:.4}  pass {}", z.name, z.sup_deviation, z.pass);
    }
    ctx.write_file("zones.csv", &lines)?;
    if !report.pass {
        ctx.finish("zones")?;
        return Err(CliError::numeric("zone tolerances exceeded".into()));
    }
    ctx.finish("zones")
}

pub fn geometry(mut ctx: Ctx) -> Result<(), CliError> {
    let g = ctx.cfg.geometry.clone();
    let set = crate::config::to_indicator_set(g.dim, &g.set)
        .map_err(|e| CliError::config(e.to_string()))?;
    let opts = ClassifyOptions {
        ratio_threshold: g.ratio_threshold,
        ladder: TauLadder {
            base: g.tau_base,
            doublings: g.tau_doublings,
        },
    };
    let cls = classify_directions(&set, g.m, &opts).map_err(numeric)?;

    let mut csv = String::new();
    csv.push_str(&format!("# c_uv,{}\n", g.c_uv));
    if g.dim == 2 {
        csv.push_str("angle,ratio,bounded,w\n");
    } else {
        csv.push_str("x,y,z,ratio,bounded,w\n");
    }
    for (k, dir) in cls.directions.iter().enumerate() {
        let w = speed_function(&cls, g.c_uv, dir).map_err(numeric)?;
        if g.dim == 2 {
            let angle = dir[1].atan2(dir[0]);
            csv.push_str(&format!(
                "{},{},{},{}\n",
                angle, cls.ratios[k], cls.bounded[k], w
            ));
        } else {
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                dir[0], dir[1], dir[2], cls.ratios[k], cls.bounded[k], w
            ));
        }
    }
    ctx.write_file("geometry.csv", &csv)?;

    let unbounded = cls.bounded.iter().filter(|&&b| !b).count();
    ctx.record("directions", g.m as i64);
    ctx.record("unbounded_directions", unbounded as i64);

    // Route-consistency sample of the envelope on a deterministic grid.
    let side = 61usize;
    let reach = 2.0 * g.c_uv + 4.0;
    let mut agree = 0usize;
    let mut total = 0usize;
    let mut point = vec![0.0; g.dim];
    let mut idx = vec![0usize; g.dim];
    loop {
        for (dcoord, &i) in point.iter_mut().zip(&idx) {
            *dcoord = -reach + 2.0 * reach * i as f64 / (side - 1) as f64;
        }
        let m = envelope_membership(&cls, g.c_uv, &point).map_err(numeric)?;
        total += 1;
        if m.agreed() {
            agree += 1;
        }
        // odometer
        let mut carry = 0;
        loop {
            idx[carry] += 1;
            if idx[carry] < side {
                break;
            }
            idx[carry] = 0;
            carry += 1;
            if carry == g.dim {
                break;
            }
        }
        if carry == g.dim {
            break;
        }
    }
    ctx.record("envelope_route_agreement", agree as f64 / total as f64);
    println!(
        "{unbounded}/{} unbounded directions; envelope routes agree on {:.2}% of {} points",
        g.m,
        100.0 * agree as f64 / total as f64,
        total
    );

    if let Some(rho) = g.rho {
        let eroded = set.erode(rho).map_err(numeric)?;
        let cls_eroded = classify_directions(&eroded, g.m, &opts).map_err(numeric)?;
        let covered = covering_check(&cls, &cls_eroded).map_err(numeric)?;
        ctx.record("covering_after_erosion", covered);
        println!("covering check after erosion by {rho}: {covered}");
    }
    ctx.finish("geometry")
}

pub fn certify(mut ctx: Ctx, profile_path: Option<&Path>) -> Result<(), CliError> {
    let params = ctx.cfg.params.to_model().map_err(|e| CliError::config(e.to_string()))?;
    let c = ctx.cfg.certify.clone();
    let profile = match profile_path.map(Path::to_path_buf).or_else(|| c.profile.clone().map(Into::into)) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::config(format!("read {}: {e}", path.display())))?;
            csvio::parse_profile_csv(&text).map_err(|e| CliError::config(e.to_string()))?
        }
        // No profile on disk: chain the front solve.
        None => {
            let profile = solve_front_for(&ctx, &params)?;
            ctx.write_file("profile.csv", &csvio::profile_csv(&profile))?;
            profile
        }
    };
    let kind = match c.kind.as_str() {
        "sub" => CertificateKind::Sub,
        "super" => CertificateKind::Super,
        other => return Err(CliError::config(format!("unknown certificate kind `{other}`"))),
    };
    let eps = c.eps.unwrap_or(match kind {
        CertificateKind::Sub => profile.speed / 2.0,
        CertificateKind::Super => 0.1,
    });
    let cert = assemble_certificate(&profile, &params, eps, kind, c.dim).map_err(numeric)?;
    cert.verify_constants().map_err(numeric)?;

    let v = &cert.values;
    for (key, val) in [
        ("delta", v.delta),
        ("mu", v.mu),
        ("omega", v.omega),
        ("m", v.m),
        ("k1", v.k1),
        ("k2", v.k2),
        ("eps", v.eps),
        ("r_big", v.r_big),
    ] {
        ctx.record(key, val);
    }
    if let Some(rho) = v.rho {
        ctx.record("rho", rho);
    }
    if let Some(m_eps) = v.m_eps {
        ctx.record("m_eps", m_eps);
        ctx.record("r_eps", v.r_eps.unwrap());
        ctx.record("t_eps", v.t_eps.unwrap());
    }

    let report = cert.residual_scan(&ScanGrid {
        t_max: c.t_max,
        x_span_factor: c.x_span_factor,
        ..ScanGrid::default()
    });
    let mut text = String::new();
    text.push_str(&format!(
        "# sign slack: {} x local term scale; verdicts per region\n",
        report.slack_scale
    ));
    text.push_str("region,points,worst_n1,worst_n2,worst_ratio,verdict\n");
    for region in &report.regions {
        text.push_str(&format!(
            "{},{},{},{},{},{:?}\n",
            region.name,
            region.points,
            region.worst_n1,
            region.worst_n2,
            region.worst_ratio,
            region.verdict
        ));
        println!(
            "region {:<7} worst N1 {:+.3e}  worst N2 {:+.3e}  verdict {:?}",
            region.name, region.worst_n1, region.worst_n2, region.verdict
        );
    }
    ctx.write_file("residual_scan.csv", &text)?;
    ctx.record("scan_verdict", format!("{:?}", report.verdict));

    if kind == CertificateKind::Super {
        let ball = shrinking_ball_check(&cert, 80, 160).map_err(numeric)?;
        ctx.record("ball_max_u", ball.max_u);
        ctx.record("ball_min_v", ball.min_v);
        ctx.record("ball_u_threshold", ball.u_threshold);
        ctx.record("ball_v_threshold", ball.v_threshold);
        ctx.record("ball_pass", ball.pass);
        println!(
            "shrinking ball: max u {:.3e} (<= {:.3e}), min v {:.8} (>= {:.8}), pass {}",
            ball.max_u, ball.u_threshold, ball.min_v, ball.v_threshold, ball.pass
        );
        if !ball.pass {
            ctx.finish("certify")?;
            return Err(CliError::numeric("shrinking-ball conclusions failed".into()));
        }
    }

    let verdict = report.verdict;
    ctx.finish("certify")?;
    match verdict {
        Verdict::Pass => Ok(()),
        Verdict::Inconclusive => Err(CliError::inconclusive(
            "residual signs within interpolation noise; re-solve the profile on a finer grid"
                .into(),
        )),
        Verdict::Fail => Err(CliError::numeric("residual scan failed".into())),
    }
}

pub fn radius_search(mut ctx: Ctx) -> Result<(), CliError> {
    let params = ctx.cfg.params.to_model().map_err(|e| CliError::config(e.to_string()))?;
    let grid = ctx.cfg.grid.to_grid().map_err(|e| CliError::config(e.to_string()))?;
    if !matches!(grid.kind, GridKind::Radial { .. }) {
        return Err(CliError::config(
            "radius-search needs a radial grid ([grid] kind = \"radial\")".into(),
        ));
    }
    let rc = ctx.cfg.radius.clone();
    let opts = RadiusSearchOptions {
        grid,
        rho_max: rc.rho_max,
        n_bisect: rc.n_bisect,
        t_probe: rc.t_probe,
        success_level: rc.success_level,
    };
    let result = invasion_radius_search(&params, &opts).map_err(numeric)?;
    let mut csv = String::from("rho,invades\n");
    for (rho, ok) in &result.evaluations {
        csv.push_str(&format!("{rho},{ok}\n"));
    }
    ctx.write_file("radius_probes.csv", &csv)?;
    ctx.record("rho_star", result.rho_star);
    ctx.record("rho_fail", result.rho_fail);
    println!(
        "smallest invading radius {} (largest failing {})",
        result.rho_star, result.rho_fail
    );
    ctx.finish("radius-search")
}

/// Convenience used by tests: exponential-bound verification of a stored
/// trajectory.
pub fn check_exp_bound(trajectory: &Path, field: &str) -> Result<f64, CliError> {
    let traj = load_trajectory(trajectory)?;
    let field = parse_field(field)?;
    let report = exponential_bound_check(&traj, field, true, None).map_err(numeric)?;
    Ok(report.worst_margin)
}
