//! Scalar logistic front at prescribed speed.
//!
//! Computes the monotone front `D φ'' + c φ' + ρ φ(1-φ) = 0`,
//! `φ(-∞) = 1`, `φ(+∞) = 0`, which exists iff `c >= 2√(Dρ)`; slower speeds
//! are rejected up front.
//!
//! The profile is obtained by integrating the phase plane off the unstable
//! manifold of the `φ = 1` equilibrium. Both linear modes at the `φ = 0`
//! end decay forward, so the integration is stable and needs no iteration;
//! a clamped two-point discretization, by contrast, has no interior
//! solution at fixed speed — its unique discrete solution parks the
//! interface at the inflow boundary. Translation is normalized by placing
//! `φ = 1/2` at ξ = 0.

use crate::error::{Error, Result};

/// Discretized scalar front profile on a uniform grid.
#[derive(Debug, Clone)]
pub struct KppProfile {
    pub diffusion: f64,
    pub growth: f64,
    pub speed: f64,
    pub xi: Vec<f64>,
    pub phi: Vec<f64>,
    /// A-posteriori integration error of the profile ODE (max-norm
    /// step-doubling estimate).
    pub residual_norm: f64,
}

const TAIL_TOL: f64 = 1e-4;
const LAUNCH_AMPLITUDE: f64 = 1e-10;

/// One RK4 trajectory of the front ODE launched on the unstable manifold.
/// Returns `(xi, phi, dphi)` samples and the ξ where φ crosses 1/2.
struct Shot {
    xi: Vec<f64>,
    phi: Vec<f64>,
    dphi: Vec<f64>,
    half_crossing: f64,
}

fn shoot(diffusion: f64, growth: f64, speed: f64, span_after_half: f64, dt: f64) -> Shot {
    let mu = (-speed + (speed * speed + 4.0 * diffusion * growth).sqrt()) / (2.0 * diffusion);
    let mut phi = 1.0 - LAUNCH_AMPLITUDE;
    let mut dphi = -mu * LAUNCH_AMPLITUDE;
    let rhs = |p: f64, q: f64| (q, -(speed * q + growth * p * (1.0 - p)) / diffusion);

    let mut xs = vec![0.0];
    let mut ps = vec![phi];
    let mut qs = vec![dphi];
    let mut x = 0.0;
    let mut half_crossing = f64::NAN;
    // Hard cap well past any sane domain; the caller checks tails anyway.
    let x_cap = 1e4;
    while x < x_cap {
        let (k1p, k1q) = rhs(phi, dphi);
        let (k2p, k2q) = rhs(phi + 0.5 * dt * k1p, dphi + 0.5 * dt * k1q);
        let (k3p, k3q) = rhs(phi + 0.5 * dt * k2p, dphi + 0.5 * dt * k2q);
        let (k4p, k4q) = rhs(phi + dt * k3p, dphi + dt * k3q);
        let phi_new = phi + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        let dphi_new = dphi + dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
        if phi >= 0.5 && phi_new < 0.5 {
            let t = (phi - 0.5) / (phi - phi_new);
            half_crossing = x + t * dt;
        }
        phi = phi_new;
        dphi = dphi_new;
        x += dt;
        xs.push(x);
        ps.push(phi);
        qs.push(dphi);
        if !half_crossing.is_nan() && x > half_crossing + span_after_half {
            break;
        }
        if phi <= 0.0 {
            break;
        }
    }
    Shot {
        xi: xs,
        phi: ps,
        dphi: qs,
        half_crossing,
    }
}

impl Shot {
    /// Cubic Hermite interpolation using the stored derivative samples.
    /// Left of the launch point the unstable-manifold asymptotics apply;
    /// right of the last sample the profile is taken as settled.
    fn value(&self, x: f64, mu: f64) -> f64 {
        if x <= 0.0 {
            return 1.0 - LAUNCH_AMPLITUDE * (mu * x).exp();
        }
        let dt = self.xi[1] - self.xi[0];
        let k = (x / dt) as usize;
        if k + 1 >= self.xi.len() {
            return self.phi.last().copied().unwrap_or(0.0).max(0.0);
        }
        let s = (x - self.xi[k]) / dt;
        let (p0, p1) = (self.phi[k], self.phi[k + 1]);
        let (q0, q1) = (self.dphi[k], self.dphi[k + 1]);
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        h00 * p0 + h10 * dt * q0 + h01 * p1 + h11 * dt * q1
    }
}

pub fn solve_kpp_front(
    diffusion: f64,
    growth: f64,
    speed: f64,
    l_xi: f64,
    n_points: usize,
) -> Result<KppProfile> {
    if !(diffusion > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "diffusion",
            value: diffusion,
        });
    }
    if !(growth > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "growth",
            value: growth,
        });
    }
    if n_points < 200 {
        return Err(Error::OutOfRange {
            name: "n_points",
            value: n_points as f64,
            range: ">= 200".into(),
        });
    }
    if !(l_xi > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "l_xi",
            value: l_xi,
        });
    }
    let minimal = 2.0 * (diffusion * growth).sqrt();
    if speed < minimal - 1e-12 {
        return Err(Error::BelowMinimalSpeed { speed, minimal });
    }

    let mu = (-speed + (speed * speed + 4.0 * diffusion * growth).sqrt()) / (2.0 * diffusion);
    let dt = 1e-3 * (diffusion / growth).sqrt().min(1.0);
    let coarse = shoot(diffusion, growth, speed, l_xi + 1.0, dt);
    let fine = shoot(diffusion, growth, speed, l_xi + 1.0, dt / 2.0);
    if coarse.half_crossing.is_nan() {
        return Err(Error::SpuriousSolution {
            detail: "trajectory never reached the half level".into(),
        });
    }

    let n = n_points;
    let h = 2.0 * l_xi / (n - 1) as f64;
    let xi: Vec<f64> = (0..n).map(|j| -l_xi + j as f64 * h).collect();
    let phi: Vec<f64> = xi
        .iter()
        .map(|&x| fine.value(fine.half_crossing + x, mu).clamp(0.0, 1.0))
        .collect();

    // Step-doubling error estimate of the recentered profiles: the raw
    // trajectories differ by a spurious translation (launch error amplified
    // along the unstable manifold), which the half-level normalization
    // removes.
    let mut residual_norm = 0.0f64;
    for &x in &xi {
        let dev = (coarse.value(coarse.half_crossing + x, mu)
            - fine.value(fine.half_crossing + x, mu))
        .abs();
        residual_norm = residual_norm.max(dev);
    }

    // Tails must be settled inside the window; a slow forward decay (large
    // speed) needs a larger l_xi from the caller.
    let tail_dev = (phi[0] - 1.0).abs().max(phi[n - 1].abs());
    if tail_dev > TAIL_TOL {
        return Err(Error::TailsUnsettled {
            deviation: tail_dev,
            attempts: 0,
        });
    }
    for w in phi.windows(2) {
        if w[1] - w[0] > 1e-12 {
            return Err(Error::SpuriousSolution {
                detail: format!("profile not decreasing: jump {:.3e}", w[1] - w[0]),
            });
        }
    }

    Ok(KppProfile {
        diffusion,
        growth,
        speed,
        xi,
        phi,
        residual_norm,
    })
}
