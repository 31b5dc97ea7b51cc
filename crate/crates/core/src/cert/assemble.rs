//! Certificate assembly: measuring profile constants and deriving the
//! barrier parameters from the explicit formulas.

use super::ramp::{build_ramp, RampFunction};
use super::transitions::{build_transitions, TransitionPair};
use crate::error::{Error, Result};
use crate::front::FrontProfile;
use crate::model::ModelParams;
use crate::numeric::CubicSpline;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Lower barrier: `(u̲, v̄)` pushes the solution toward `(1, 0)`.
    Sub,
    /// Upper barrier: `(ū, v̲)` confines the solution near `(0, 1)`.
    Super,
}

/// Every constant of the barrier construction in one audited record.
#[derive(Debug, Clone)]
pub struct CertificateParams {
    pub kind: CertificateKind,
    pub delta: f64,
    pub mu: f64,
    pub omega: f64,
    /// Transition half-width; the profile tails are inside their
    /// perturbation bands beyond `±m`.
    pub m: f64,
    /// Lower bound on `-Φ'` over `|ξ| <= m` (10% safety margin applied).
    pub k1: f64,
    /// Lower bound on `Ψ'` over `|ξ| <= m`.
    pub k2: f64,
    pub eps: f64,
    /// Launch offset `R`.
    pub r_big: f64,
    /// Initial plateau radius (sub kind).
    pub rho: Option<f64>,
    /// Half-width where the tails are inside δ/2 (super kind).
    pub m_eps: Option<f64>,
    /// Radius floor `R_ε` (super kind).
    pub r_eps: Option<f64>,
    /// Time after which the perturbation has halved (super kind).
    pub t_eps: Option<f64>,
}

/// A fully assembled barrier: constants, auxiliary functions and the spline
/// interpolant of the front profile.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub model: ModelParams,
    pub c_uv: f64,
    pub dim: usize,
    pub values: CertificateParams,
    pub ramp: RampFunction,
    pub transitions: TransitionPair,
    pub(crate) phi: CubicSpline,
    pub(crate) psi: CubicSpline,
}

/// Width beyond which all four tails are inside `level` of their limits,
/// found from the monotone profile by linear interpolation.
fn tail_half_width(profile: &FrontProfile, level: f64) -> Result<f64> {
    let cross_down = |vals: &[f64], target: f64| -> Option<f64> {
        // First ξ where a decreasing profile drops below target.
        for j in 0..vals.len() - 1 {
            if vals[j] >= target && vals[j + 1] < target {
                let t = (vals[j] - target) / (vals[j] - vals[j + 1]);
                return Some(profile.xi[j] + t * (profile.xi[j + 1] - profile.xi[j]));
            }
        }
        None
    };
    let cross_up = |vals: &[f64], target: f64| -> Option<f64> {
        for j in 0..vals.len() - 1 {
            if vals[j] <= target && vals[j + 1] > target {
                let t = (target - vals[j]) / (vals[j + 1] - vals[j]);
                return Some(profile.xi[j] + t * (profile.xi[j + 1] - profile.xi[j]));
            }
        }
        None
    };
    // Φ leaves [1-level, 1] going right; Ψ leaves [0, level] going right.
    let phi_hi = cross_down(&profile.phi, 1.0 - level);
    let phi_lo = cross_down(&profile.phi, level);
    let psi_lo = cross_up(&profile.psi, level);
    let psi_hi = cross_up(&profile.psi, 1.0 - level);
    match (phi_hi, phi_lo, psi_lo, psi_hi) {
        (Some(a), Some(b), Some(c), Some(d)) => {
            let width = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
            Ok(width + profile.xi[1] - profile.xi[0])
        }
        _ => Err(Error::ProfileTailsTooShort {
            detail: format!("tails never settle within {level} on the solve interval"),
        }),
    }
}

pub fn assemble_certificate(
    profile: &FrontProfile,
    params: &ModelParams,
    eps: f64,
    kind: CertificateKind,
    dim: usize,
) -> Result<Certificate> {
    params.validate_strong()?;
    let c_uv = profile.speed;
    match kind {
        CertificateKind::Sub => {
            // The lower barrier travels at c_uv - ε/2 > 0; it only exists
            // for winners.
            if !(eps > 0.0 && eps < c_uv) {
                return Err(Error::OutOfRange {
                    name: "eps",
                    value: eps,
                    range: format!("(0, {c_uv})"),
                });
            }
        }
        CertificateKind::Super => {
            if !(eps > 0.0) {
                return Err(Error::NonPositiveParameter {
                    name: "eps",
                    value: eps,
                });
            }
        }
    }

    let (d, r, a, b) = (params.d, params.r, params.a, params.b);
    let delta0 = params.delta0()?;
    let l_xi = -profile.xi[0];

    let m_tail = tail_half_width(profile, delta0)?;
    let transitions = build_transitions(m_tail, a, b, d, c_uv);
    let m = transitions.half_width;
    if m > 0.9 * l_xi {
        return Err(Error::ProfileTailsTooShort {
            detail: format!(
                "transition half-width {m:.1} does not fit the solve interval [-{l_xi}, {l_xi}]; \
                 increase l_xi"
            ),
        });
    }

    let phi = CubicSpline::new(&profile.xi, &profile.phi);
    let psi = CubicSpline::new(&profile.xi, &profile.psi);

    // Slope floors over the transition interval, with a 10% safety margin
    // against interpolation error.
    let mut min_neg_phi = f64::INFINITY;
    let mut min_pos_psi = f64::INFINITY;
    let steps = 4000;
    for k in 0..=steps {
        let xi = -m + 2.0 * m * k as f64 / steps as f64;
        min_neg_phi = min_neg_phi.min(-phi.eval(xi).1);
        min_pos_psi = min_pos_psi.min(psi.eval(xi).1);
    }
    let k1 = 0.9 * min_neg_phi;
    let k2 = 0.9 * min_pos_psi;
    if !(k1 > 0.0 && k2 > 0.0) {
        return Err(Error::ProfileTailsTooShort {
            detail: "profile slopes vanish inside the transition interval".into(),
        });
    }

    let delta = delta0.min(k1 / 2.0).min(k2 / 2.0);
    let mu = match kind {
        CertificateKind::Sub => (r / 4.0).min(0.25).min(0.5 * r * (a - 1.0)).min(b / 2.0),
        CertificateKind::Super => (r / 4.0)
            .min(0.25)
            .min(0.5 * r * (a - 1.0))
            .min((b - 1.0) / 2.0),
    };
    let omega = 2.0
        * (2.0 * a + 2.0 * a * (b + 1.0) * r / mu + 1.0)
            .max(2.0 * b + 2.0 * b * (a + 1.0) / mu + 1.0)
        / k1.min(k2);

    let ramp = build_ramp(eps, dim, d)?;
    let h_eps = ramp.identity_from;

    let values = match kind {
        CertificateKind::Sub => {
            let r_big = m + h_eps + omega;
            // The plateau radius must reach the δ-level tails (δ can sit far
            // below δ₀), otherwise the barrier does not start below the
            // plateau data outside the ball.
            let m_delta = tail_half_width(profile, delta)?.max(m);
            if m_delta > 0.95 * l_xi {
                return Err(Error::ProfileTailsTooShort {
                    detail: format!(
                        "δ-level tail width {m_delta:.1} does not fit the solve interval; \
                         increase l_xi"
                    ),
                });
            }
            CertificateParams {
                kind,
                delta,
                mu,
                omega,
                m,
                k1,
                k2,
                eps,
                r_big,
                rho: Some(r_big + m_delta),
                m_eps: None,
                r_eps: None,
                t_eps: None,
            }
        }
        CertificateKind::Super => {
            let m_eps = tail_half_width(profile, delta / 2.0)?.max(m);
            let r_eps = h_eps.max(ramp.h0() + omega * delta + m + m_eps);
            // Launch offset large enough that the ramp stays in its identity
            // range throughout the confinement window.
            let r_floor = 2.0 * (c_uv + eps) * (omega * delta + m + m_eps + h_eps) / eps - r_eps;
            let r_big = r_eps.max(r_floor * 1.01 + 1.0);
            CertificateParams {
                kind,
                delta,
                mu,
                omega,
                m,
                k1,
                k2,
                eps,
                r_big,
                rho: None,
                m_eps: Some(m_eps),
                r_eps: Some(r_eps),
                t_eps: Some(2f64.ln() / mu),
            }
        }
    };

    Ok(Certificate {
        model: *params,
        c_uv,
        dim,
        values,
        ramp,
        transitions,
        phi,
        psi,
    })
}

impl Certificate {
    /// Moving coordinate of the lower barrier.
    pub fn xi_sub(&self, t: f64, radius: f64) -> f64 {
        let v = &self.values;
        let decay = v.omega * v.delta * (-v.mu * t).exp();
        self.ramp.eval(radius).0 - (self.c_uv - v.eps / 2.0) * t - decay + v.omega * v.delta
            - v.r_big
    }

    /// Moving coordinate of the upper barrier.
    pub fn zeta_super(&self, t: f64, radius: f64) -> f64 {
        let v = &self.values;
        let decay = v.omega * v.delta * (-v.mu * t).exp();
        -self.ramp.eval(radius).0 - (self.c_uv + v.eps / 2.0) * t + decay - v.omega * v.delta
            + v.r_big
            - v.m
    }

    /// Lower barrier pair `(u̲, v̄)` at `(t, |x|)`.
    pub fn lower_pair(&self, t: f64, radius: f64) -> (f64, f64) {
        let v = &self.values;
        let xi = self.xi_sub(t, radius);
        let amp = v.delta * (-v.mu * t).exp();
        let u = self.phi.value(xi) - self.transitions.p1(xi).0 * amp;
        let w = self.psi.value(xi) + self.transitions.p2(xi).0 * amp;
        (u.max(0.0), w.min(1.0))
    }

    /// Upper barrier pair `(ū, v̲)` at `(t, |x|)`.
    pub fn upper_pair(&self, t: f64, radius: f64) -> (f64, f64) {
        let v = &self.values;
        let zeta = self.zeta_super(t, radius);
        let amp = v.delta * (-v.mu * t).exp();
        let u = self.phi.value(zeta) + self.transitions.p1(zeta).0 * amp;
        let w = self.psi.value(zeta) - self.transitions.p2(zeta).0 * amp;
        (u.min(1.0), w.max(0.0))
    }

    pub(crate) fn front(&self, xi: f64) -> ((f64, f64, f64), (f64, f64, f64)) {
        (self.phi.eval(xi), self.psi.eval(xi))
    }

    /// Re-evaluates every defining inequality of the assembled constants:
    /// the amplitude cap, the decay-rate minimum, the slope condition, the
    /// transition derivative bound, and for upper barriers the launch-offset
    /// inequality. Construction is not trusted.
    pub fn verify_constants(&self) -> Result<()> {
        let v = &self.values;
        let (d, r, a, b) = (
            self.model.d,
            self.model.r,
            self.model.a,
            self.model.b,
        );
        let delta0 = self.model.delta0()?;
        let fail = |detail: String| Err(Error::CertificateFailed { detail });

        if !(v.delta > 0.0 && v.delta <= delta0.min(v.k1 / 2.0).min(v.k2 / 2.0)) {
            return fail(format!("delta {} breaks its cap", v.delta));
        }
        let mu_terms = match v.kind {
            CertificateKind::Sub => [r / 4.0, 0.25, 0.5 * r * (a - 1.0), b / 2.0],
            CertificateKind::Super => [r / 4.0, 0.25, 0.5 * r * (a - 1.0), (b - 1.0) / 2.0],
        };
        if v.mu > mu_terms.iter().cloned().fold(f64::INFINITY, f64::min) + 1e-15 {
            return fail(format!("mu {} exceeds its minimum formula", v.mu));
        }
        let omega_rhs = (2.0 * a + 2.0 * a * (b + 1.0) * r / v.mu + 1.0)
            .max(2.0 * b + 2.0 * b * (a + 1.0) / v.mu + 1.0);
        if 0.5 * v.omega * v.k1.min(v.k2) < omega_rhs - 1e-9 {
            return fail(format!("omega {} too small for its inequality", v.omega));
        }
        // Transition derivative bound, re-scanned.
        let bound = super::transitions::derivative_bound(d, self.c_uv);
        for k in 0..=2000 {
            let xi = -v.m + 2.0 * v.m * k as f64 / 2000.0;
            let (_, d1, d2) = self.transitions.p1(xi);
            let (_, e1, e2) = self.transitions.p2(xi);
            if d1.abs().max(d2.abs()).max(e1.abs()).max(e2.abs()) > bound + 1e-12 {
                return fail("transition derivatives exceed their bound".into());
            }
        }
        // Slope floors against the profile.
        for k in 0..=2000 {
            let xi = -v.m + 2.0 * v.m * k as f64 / 2000.0;
            if -self.phi.eval(xi).1 < v.k1 - 1e-12 || self.psi.eval(xi).1 < v.k2 - 1e-12 {
                return fail("profile slopes fall below k1/k2 on the transition".into());
            }
        }
        if v.kind == CertificateKind::Super {
            let (m_eps, r_eps) = (v.m_eps.unwrap(), v.r_eps.unwrap());
            let lhs = v.eps * (v.r_big + r_eps) / (2.0 * (self.c_uv + v.eps));
            let rhs = v.omega * v.delta + v.m + m_eps + self.ramp.identity_from;
            if lhs <= rhs {
                return fail(format!("launch-offset inequality fails: {lhs} <= {rhs}"));
            }
        }
        Ok(())
    }
}
