//! CSV emission and parsing.
//!
//! Conventions: comma separators, `.` decimal point, one header row,
//! `#`-prefixed metadata comment lines before the header. Floats are
//! written in Rust's shortest round-trip form, so identical inputs produce
//! bit-identical files and reloading loses nothing.

use crate::error::{Error, Result};
use crate::front::{FrontProfile, KppProfile};
use crate::sim::{Grid, GridKind, GridState};
use crate::speed::FrontTrack;

fn push_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("{v}"));
    }
    out.push('\n');
}

/// Front profile pair as `xi,phi,psi` rows; speed and residual ride in
/// comments.
pub fn profile_csv(profile: &FrontProfile) -> String {
    let mut out = String::new();
    out.push_str(&format!("# speed,{}\n", profile.speed));
    out.push_str(&format!("# residual_norm,{}\n", profile.residual_norm));
    out.push_str("xi,phi,psi\n");
    for j in 0..profile.xi.len() {
        push_row(&mut out, &[profile.xi[j], profile.phi[j], profile.psi[j]]);
    }
    out
}

pub fn kpp_csv(profile: &KppProfile) -> String {
    let mut out = String::new();
    out.push_str(&format!("# speed,{}\n", profile.speed));
    out.push_str(&format!("# residual_norm,{}\n", profile.residual_norm));
    out.push_str(&format!(
        "# diffusion,{}\n# growth,{}\n",
        profile.diffusion, profile.growth
    ));
    out.push_str("xi,phi\n");
    for j in 0..profile.xi.len() {
        push_row(&mut out, &[profile.xi[j], profile.phi[j]]);
    }
    out
}

/// One snapshot of a line or radial run as `x,u,v` rows.
pub fn snapshot_csv(grid: &Grid, state: &GridState) -> String {
    assert!(
        !matches!(grid.kind, GridKind::Plane),
        "plane snapshots use one matrix file per field"
    );
    let mut out = String::new();
    out.push_str(&format!("# t,{}\n", state.time));
    out.push_str("x,u,v\n");
    for i in 0..grid.len() {
        push_row(&mut out, &[grid.axis_coord(i), state.u[i], state.v[i]]);
    }
    out
}

/// One field of a plane snapshot as a dense matrix, rows along y.
pub fn field_matrix_csv(grid: &Grid, field: &[f64], time: f64) -> String {
    let n = grid.nodes_per_axis();
    assert_eq!(field.len(), n * n);
    let mut out = String::new();
    out.push_str(&format!("# t,{time}\n"));
    for j in 0..n {
        push_row(&mut out, &field[j * n..(j + 1) * n]);
    }
    out
}

/// Level-crossing track as `t,position` rows; unattained snapshots carry
/// `-inf`.
pub fn track_csv(track: &FrontTrack) -> String {
    let mut out = String::new();
    out.push_str(&format!("# field,{}\n", track.field.name()));
    out.push_str(&format!("# level,{}\n", track.level));
    out.push_str("t,position\n");
    for &(t, pos) in &track.samples {
        match pos {
            Some(p) => out.push_str(&format!("{t},{p}\n")),
            None => out.push_str(&format!("{t},-inf\n")),
        }
    }
    out
}

fn split_data_lines(text: &str) -> (Vec<(&str, &str)>, Vec<&str>) {
    let mut comments = Vec::new();
    let mut data = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once(',') {
                comments.push((k.trim(), v.trim()));
            }
        } else {
            data.push(line);
        }
    }
    (comments, data)
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

/// Parses a `x,u,v` snapshot file back into `(time, x, u, v)`.
pub fn parse_snapshot_csv(text: &str) -> Result<(f64, Vec<f64>, Vec<f64>, Vec<f64>)> {
    let (comments, data) = split_data_lines(text);
    let time = comments
        .iter()
        .find(|(k, _)| *k == "t")
        .map(|(_, v)| parse_f64(v))
        .transpose()?
        .ok_or_else(|| Error::Parse("snapshot missing `# t` comment".into()))?;
    let mut x = Vec::new();
    let mut u = Vec::new();
    let mut v = Vec::new();
    for line in data.iter().skip(1) {
        let mut fields = line.split(',');
        let (a, b, c) = (
            fields.next().ok_or_else(|| Error::Parse("short row".into()))?,
            fields.next().ok_or_else(|| Error::Parse("short row".into()))?,
            fields.next().ok_or_else(|| Error::Parse("short row".into()))?,
        );
        x.push(parse_f64(a)?);
        u.push(parse_f64(b)?);
        v.push(parse_f64(c)?);
    }
    Ok((time, x, u, v))
}

/// Parses a profile file written by [`profile_csv`].
pub fn parse_profile_csv(text: &str) -> Result<FrontProfile> {
    let (comments, data) = split_data_lines(text);
    let get = |key: &str| -> Result<f64> {
        comments
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| parse_f64(v))
            .transpose()?
            .ok_or_else(|| Error::Parse(format!("profile missing `# {key}` comment")))
    };
    let speed = get("speed")?;
    let residual_norm = get("residual_norm")?;
    let mut xi = Vec::new();
    let mut phi = Vec::new();
    let mut psi = Vec::new();
    for line in data.iter().skip(1) {
        let mut fields = line.split(',');
        let (a, b, c) = (
            fields.next().ok_or_else(|| Error::Parse("short row".into()))?,
            fields.next().ok_or_else(|| Error::Parse("short row".into()))?,
            fields.next().ok_or_else(|| Error::Parse("short row".into()))?,
        );
        xi.push(parse_f64(a)?);
        phi.push(parse_f64(b)?);
        psi.push(parse_f64(c)?);
    }
    if xi.len() < 3 {
        return Err(Error::Parse("profile has fewer than 3 rows".into()));
    }
    Ok(FrontProfile {
        speed,
        xi,
        phi,
        psi,
        residual_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;
    use crate::sim::{init_state, Scenario};

    #[test]
    fn profile_round_trip_is_lossless() {
        use crate::front::{solve_bistable_front, BistableOptions};
        let params = ModelParams::new(1.0, 1.0, 2.0, 2.0).unwrap();
        let opts = BistableOptions {
            l_xi: 30.0,
            n_points: 601,
            ..BistableOptions::default()
        };
        let profile = solve_bistable_front(&params, &opts).unwrap();
        let text = profile_csv(&profile);
        let back = parse_profile_csv(&text).unwrap();
        assert_eq!(back.speed, profile.speed);
        assert_eq!(back.xi, profile.xi);
        assert_eq!(back.phi, profile.phi);
        assert_eq!(back.psi, profile.psi);
    }

    #[test]
    fn snapshot_round_trip_and_determinism() {
        let grid = Grid::new(GridKind::Line, 0.5, 10.0).unwrap();
        let scenario = Scenario::Complement {
            u_support: crate::geometry::IndicatorSet::ball(vec![0.0], 3.0).unwrap(),
        };
        let state = init_state(&grid, &scenario).unwrap();
        let a = snapshot_csv(&grid, &state);
        let b = snapshot_csv(&grid, &state);
        assert_eq!(a, b, "bit-identical emission");
        let (t, x, u, v) = parse_snapshot_csv(&a).unwrap();
        assert_eq!(t, 0.0);
        assert_eq!(x.len(), grid.len());
        assert_eq!(u, state.u);
        assert_eq!(v, state.v);
    }

    #[test]
    fn track_csv_codes_unattained_as_minus_inf() {
        use crate::speed::{Field, FrontTrack};
        let track = FrontTrack {
            field: Field::U,
            level: 0.5,
            samples: vec![(0.0, None), (1.0, Some(2.5))],
        };
        let text = track_csv(&track);
        assert!(text.contains("0,-inf"));
        assert!(text.contains("1,2.5"));
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse_snapshot_csv("x,u,v\n1,2\n").is_err());
        assert!(parse_profile_csv("# speed,0.5\nxi,phi,psi\n").is_err());
    }
}
