//! Speed-capped logistic tools: the modified minimal speed under a constant
//! competition drain, and the compactly-supported bump solution.

use crate::error::{Error, Result};

/// Minimal front speed and plateau of `v_t = Δv + v(1 - v - bε)`.
///
/// Returns `(2√(1 - bε), 1 - bε)`; requires `0 <= ε < 1/b`.
pub fn modified_kpp_speed(b: f64, eps: f64) -> Result<(f64, f64)> {
    if !(b > 0.0) {
        return Err(Error::NonPositiveParameter { name: "b", value: b });
    }
    if !(0.0..1.0 / b).contains(&eps) {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
            range: format!("[0, {})", 1.0 / b),
        });
    }
    let plateau = 1.0 - b * eps;
    Ok((2.0 * plateau.sqrt(), plateau))
}

/// Decaying bump trajectory of `V'' + c V' + V (1 - V - bε) = 0` started at
/// rest from height `beta`, integrated until its first zero crossing.
#[derive(Debug, Clone)]
pub struct BumpSolution {
    pub speed: f64,
    pub b_eps: f64,
    pub beta: f64,
    /// First zero crossing: `V(crossing) = 0`.
    pub crossing: f64,
    pub xi: Vec<f64>,
    pub v_hat: Vec<f64>,
}

const BUMP_HORIZON: f64 = 1e3;

/// Integrates the bump ODE with classical fourth-order Runge-Kutta steps of
/// size `dt_ode` until `V` crosses zero.
///
/// Requires `0 <= b_eps < 1`, `0 < beta < 1 - b_eps` and
/// `0 <= c < 2√(1 - b_eps)`. Fails with a no-crossing error when the
/// trajectory turns around or the horizon is exhausted, which signals an
/// initial height below the admissible threshold for this speed.
pub fn solve_bump(speed: f64, b_eps: f64, beta: f64, dt_ode: f64) -> Result<BumpSolution> {
    if !(0.0..1.0).contains(&b_eps) {
        return Err(Error::OutOfRange {
            name: "b_eps",
            value: b_eps,
            range: "[0, 1)".into(),
        });
    }
    let plateau = 1.0 - b_eps;
    if !(beta > 0.0 && beta < plateau) {
        return Err(Error::OutOfRange {
            name: "beta",
            value: beta,
            range: format!("(0, {plateau})"),
        });
    }
    let cap = 2.0 * plateau.sqrt();
    if !(0.0..cap).contains(&speed) {
        return Err(Error::OutOfRange {
            name: "speed",
            value: speed,
            range: format!("[0, {cap})"),
        });
    }
    if !(dt_ode > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "dt_ode",
            value: dt_ode,
        });
    }

    let rhs = |v: f64, w: f64| -> (f64, f64) { (w, -speed * w - v * (1.0 - v - b_eps)) };

    let mut xi = vec![0.0];
    let mut vs = vec![beta];
    let (mut v, mut w) = (beta, 0.0);
    let mut t = 0.0;
    while t < BUMP_HORIZON {
        let (k1v, k1w) = rhs(v, w);
        let (k2v, k2w) = rhs(v + 0.5 * dt_ode * k1v, w + 0.5 * dt_ode * k1w);
        let (k3v, k3w) = rhs(v + 0.5 * dt_ode * k2v, w + 0.5 * dt_ode * k2w);
        let (k4v, k4w) = rhs(v + dt_ode * k3v, w + dt_ode * k3w);
        let v_new = v + dt_ode / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        let w_new = w + dt_ode / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        let t_new = t + dt_ode;

        if v_new <= 0.0 {
            // Linear interpolation inside the step for the crossing point.
            let frac = v / (v - v_new);
            let crossing = t + frac * dt_ode;
            xi.push(crossing);
            vs.push(0.0);
            return Ok(BumpSolution {
                speed,
                b_eps,
                beta,
                crossing,
                xi,
                v_hat: vs,
            });
        }
        // Turning around while still positive: the trajectory will not reach
        // zero monotonically.
        if t_new > dt_ode && w_new >= 0.0 {
            return Err(Error::NoZeroCrossing {
                horizon: BUMP_HORIZON,
            });
        }
        v = v_new;
        w = w_new;
        t = t_new;
        xi.push(t);
        vs.push(v);
    }
    Err(Error::NoZeroCrossing {
        horizon: BUMP_HORIZON,
    })
}
