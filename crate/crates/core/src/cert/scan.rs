//! Pointwise verification of the barrier differential inequalities.
//!
//! For the lower barrier the pair must satisfy `N₁[u̲, v̄] <= 0` wherever
//! `u̲ > 0` and `N₂[u̲, v̄] >= 0` wherever `v̄ < 1`; the upper barrier
//! reverses both signs. The inequalities are evaluated by direct
//! differentiation of the constructions (chain rule through the moving
//! coordinate), not by transcribing any intermediate expansion, so the
//! check is independent of the algebra that motivated the constants.
//!
//! The moving coordinate is sampled in its own variable wherever the ramp
//! is linear, which sidesteps the catastrophic cancellation of evaluating
//! `h(|x|) - R` at launch offsets `R` that can reach 1e8.

use super::assemble::{Certificate, CertificateKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Violations within interpolation noise (up to 10x the slack); a finer
    /// profile grid is needed for a definite answer.
    Inconclusive,
    Fail,
}

#[derive(Debug, Clone)]
pub struct RegionReport {
    /// "left" (`arg <= -M`), "middle", or "right" (`arg >= M`).
    pub name: &'static str,
    pub points: usize,
    /// Most adverse `N₁` seen (largest for lower barriers, smallest for
    /// upper ones).
    pub worst_n1: f64,
    pub worst_n2: f64,
    /// Largest violation measured in units of the local slack; <= 1 passes.
    pub worst_ratio: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub kind: CertificateKind,
    pub t_max: f64,
    pub x_span: f64,
    pub slack_scale: f64,
    pub regions: Vec<RegionReport>,
    pub verdict: Verdict,
}

impl ResidualReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone)]
pub struct ScanGrid {
    /// Scan horizon in time.
    pub t_max: f64,
    pub n_t: usize,
    /// Spatial span as a multiple of the launch offset `R`.
    pub x_span_factor: f64,
    /// Points across the moving front window.
    pub n_front: usize,
    /// Log-spaced points per far side.
    pub n_far: usize,
    /// Points across the ramp region near the origin.
    pub n_ramp: usize,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            t_max: 50.0,
            n_t: 101,
            x_span_factor: 3.0,
            n_front: 801,
            n_far: 120,
            n_ramp: 401,
        }
    }
}

const SLACK_SCALE: f64 = 1e-3;
const SLACK_FLOOR: f64 = 1e-12;

struct Accumulator {
    points: usize,
    worst_n1: f64,
    worst_n2: f64,
    worst_ratio: f64,
}

impl Accumulator {
    fn new(kind: CertificateKind) -> Self {
        let init = match kind {
            CertificateKind::Sub => f64::NEG_INFINITY,
            CertificateKind::Super => f64::INFINITY,
        };
        Accumulator {
            points: 0,
            worst_n1: init,
            worst_n2: -init,
            worst_ratio: 0.0,
        }
    }
}

impl Certificate {
    fn c_shift(&self, t: f64) -> f64 {
        let v = &self.values;
        (self.c_uv - v.eps / 2.0) * t + v.omega * v.delta * (-v.mu * t).exp()
            - v.omega * v.delta
            + v.r_big
    }

    fn zeta_shift(&self, t: f64) -> f64 {
        let v = &self.values;
        (self.c_uv + v.eps / 2.0) * t - v.omega * v.delta * (-v.mu * t).exp()
            + v.omega * v.delta
            - v.r_big
            + v.m
    }

    /// Radius at which the moving coordinate takes value `arg`, valid only
    /// in the ramp's identity range (where the inversion is exact).
    fn radius_for_arg(&self, t: f64, arg: f64) -> Option<f64> {
        let r = match self.values.kind {
            CertificateKind::Sub => arg + self.c_shift(t),
            CertificateKind::Super => -arg - self.zeta_shift(t),
        };
        (r >= self.ramp.identity_from).then_some(r)
    }

    /// Evaluates both inequalities at one space-time point, identified by
    /// the moving coordinate `arg` and the radius.
    ///
    /// The raw chain-rule residual carries the spline interpolant's own
    /// defect against the profile ODE, which the exact profile annuls; that
    /// defect (times the squared coordinate gradient) is subtracted so the
    /// scan resolves the genuine δ-scale margins. The slack then models the
    /// remaining interpolation noise: first-derivative error scaled by its
    /// coefficients, second-derivative error where the ramp is curved, and
    /// a value-error term.
    fn eval_inequalities(&self, t: f64, arg: f64, radius: f64, acc: &mut Accumulator) {
        let v = &self.values;
        let kind = v.kind;
        let (d, r_growth, a, b) = (self.model.d, self.model.r, self.model.a, self.model.b);
        let amp = v.delta * (-v.mu * t).exp();
        let ((phi, dphi, d2phi), (psi, dpsi, d2psi)) = self.front(arg);
        let (p1, dp1, d2p1) = self.transitions.p1(arg);
        let (p2, dp2, d2p2) = self.transitions.p2(arg);
        let (_, hp, hpp) = self.ramp.eval(radius);
        let lap_geom = if radius > 1e-12 {
            hpp + (self.dim - 1) as f64 / radius * hp
        } else {
            self.dim as f64 * hpp
        };

        // Interpolant defect against the profile equations; identically zero
        // for the exact profile.
        let defect1 = d * d2phi + self.c_uv * dphi + r_growth * phi * (1.0 - phi - a * psi);
        let defect2 = d2psi + self.c_uv * dpsi + psi * (1.0 - psi - b * phi);
        let hp2 = hp * hp;

        let decay_drive = v.omega * v.delta * v.mu * (-v.mu * t).exp();
        let (n1, n2, active_u, active_v) = match kind {
            CertificateKind::Sub => {
                let arg_t = -(self.c_uv - v.eps / 2.0) + decay_drive;
                let u_un = phi - p1 * amp;
                let v_un = psi + p2 * amp;
                let u_low = u_un.max(0.0);
                let v_up = v_un.min(1.0);

                let du = dphi - dp1 * amp;
                let d2u = d2phi - d2p1 * amp;
                let u_t = du * arg_t + v.mu * p1 * amp;
                let lap_u = d2u * hp2 + du * lap_geom;
                let react_u = r_growth * u_low * (1.0 - u_low - a * v_up);
                let n1 = u_t - d * lap_u - react_u + hp2 * defect1;

                let dv = dpsi + dp2 * amp;
                let d2v = d2psi + d2p2 * amp;
                let v_t = dv * arg_t - v.mu * p2 * amp;
                let lap_v = d2v * hp2 + dv * lap_geom;
                let react_v = v_up * (1.0 - v_up - b * u_low);
                let n2 = v_t - lap_v - react_v + hp2 * defect2;

                (n1, n2, u_un > 0.0, v_un < 1.0)
            }
            CertificateKind::Super => {
                let arg_t = -(self.c_uv + v.eps / 2.0) - decay_drive;
                let u_un = phi + p1 * amp;
                let v_un = psi - p2 * amp;
                let u_up = u_un.min(1.0);
                let v_low = v_un.max(0.0);

                let du = dphi + dp1 * amp;
                let d2u = d2phi + d2p1 * amp;
                let u_t = du * arg_t - v.mu * p1 * amp;
                let lap_u = d2u * hp2 + du * (-lap_geom);
                let react_u = r_growth * u_up * (1.0 - u_up - a * v_low);
                let n1 = u_t - d * lap_u - react_u + hp2 * defect1;

                let dv = dpsi - dp2 * amp;
                let d2v = d2psi - d2p2 * amp;
                let v_t = dv * arg_t + v.mu * p2 * amp;
                let lap_v = d2v * hp2 + dv * (-lap_geom);
                let react_v = v_low * (1.0 - v_low - b * u_up);
                let n2 = v_t - lap_v - react_v + hp2 * defect2;

                (n1, n2, u_un < 1.0, v_un > 0.0)
            }
        };

        // After the defect subtraction the first derivatives keep an
        // effective coefficient ε/2 + ω-drive + geometry; the second
        // derivatives only matter where the ramp is curved. The 1e-6
        // value-noise term covers spline value error entering the reactions.
        let deriv_coeff = v.eps / 2.0 + decay_drive + d.max(1.0) * lap_geom.abs();
        let curv_coeff = (1.0 - hp2).abs();
        let slack1 = SLACK_SCALE * (deriv_coeff * dphi.abs() + d * curv_coeff * d2phi.abs())
            + 1e-6 * (d2phi.abs() + d2psi.abs())
            + SLACK_FLOOR;
        let slack2 = SLACK_SCALE * (deriv_coeff * dpsi.abs() + curv_coeff * d2psi.abs())
            + 1e-6 * (d2phi.abs() + d2psi.abs())
            + SLACK_FLOOR;

        acc.points += 1;
        if active_u {
            let viol = match kind {
                CertificateKind::Sub => {
                    acc.worst_n1 = acc.worst_n1.max(n1);
                    n1 / slack1
                }
                CertificateKind::Super => {
                    acc.worst_n1 = acc.worst_n1.min(n1);
                    -n1 / slack1
                }
            };
            acc.worst_ratio = acc.worst_ratio.max(viol);
        }
        if active_v {
            let viol = match kind {
                CertificateKind::Sub => {
                    acc.worst_n2 = acc.worst_n2.min(n2);
                    -n2 / slack2
                }
                CertificateKind::Super => {
                    acc.worst_n2 = acc.worst_n2.max(n2);
                    n2 / slack2
                }
            };
            acc.worst_ratio = acc.worst_ratio.max(viol);
        }
    }

    /// Scans both inequalities over `(t, |x|) ∈ [0, t_max] × [0, span·R]`
    /// and reports per-region worst residuals against the slack model.
    pub fn residual_scan(&self, grid: &ScanGrid) -> ResidualReport {
        let v = &self.values;
        let m = v.m;
        let pad = 10.0;
        let x_span = grid.x_span_factor * v.r_big;
        // The upper barrier is only defined up to its confinement horizon.
        let t_top = match v.kind {
            CertificateKind::Sub => grid.t_max,
            CertificateKind::Super => {
                let horizon = (v.r_big - v.r_eps.unwrap()) / (self.c_uv + v.eps);
                grid.t_max.min(0.999 * horizon)
            }
        };

        let mut left = Accumulator::new(v.kind);
        let mut middle = Accumulator::new(v.kind);
        let mut right = Accumulator::new(v.kind);

        for kt in 0..grid.n_t {
            let t = t_top * kt as f64 / (grid.n_t - 1) as f64;

            let mut visit = |arg: f64, radius: f64| {
                if radius > x_span {
                    return;
                }
                let acc = if arg <= -m {
                    &mut left
                } else if arg < m {
                    &mut middle
                } else {
                    &mut right
                };
                self.eval_inequalities(t, arg, radius, acc);
            };

            // Ramp region: the moving coordinate is computed directly; the
            // launch offset dominates and the subtraction is benign.
            let ramp_top = (1.05 * self.ramp.identity_from).min(x_span);
            for k in 0..grid.n_ramp {
                let radius = ramp_top * k as f64 / (grid.n_ramp - 1) as f64;
                let arg = match v.kind {
                    CertificateKind::Sub => self.ramp.eval(radius).0 - self.c_shift(t),
                    CertificateKind::Super => -self.ramp.eval(radius).0 - self.zeta_shift(t),
                };
                visit(arg, radius);
            }

            // Front window, sampled in the moving coordinate.
            for k in 0..grid.n_front {
                let arg = -(m + pad) + 2.0 * (m + pad) * k as f64 / (grid.n_front - 1) as f64;
                if let Some(radius) = self.radius_for_arg(t, arg) {
                    visit(arg, radius);
                }
            }

            // Far sides, log-spaced in the moving coordinate out to the scan
            // boundary.
            let arg_at = |radius: f64| match v.kind {
                CertificateKind::Sub => radius - self.c_shift(t),
                CertificateKind::Super => -radius - self.zeta_shift(t),
            };
            let (arg_a, arg_b) = (arg_at(0.0), arg_at(x_span));
            let arg_lo = arg_a.min(arg_b);
            let arg_hi = arg_a.max(arg_b);
            let mut log_side = |from: f64, to: f64| {
                // from -> to moving away from the front window
                let span = (to - from).abs();
                if span <= 0.0 {
                    return;
                }
                let sign = (to - from).signum();
                for k in 1..=grid.n_far {
                    let f = ((1.0 + span).ln() * k as f64 / grid.n_far as f64).exp() - 1.0;
                    let arg = from + sign * f;
                    if let Some(radius) = self.radius_for_arg(t, arg) {
                        visit(arg, radius);
                    }
                }
            };
            if arg_lo < -(m + pad) {
                log_side(-(m + pad), arg_lo);
            }
            if arg_hi > m + pad {
                log_side(m + pad, arg_hi);
            }
        }

        let finish = |name: &'static str, acc: Accumulator| {
            let verdict = if acc.worst_ratio <= 1.0 {
                Verdict::Pass
            } else if acc.worst_ratio <= 10.0 {
                Verdict::Inconclusive
            } else {
                Verdict::Fail
            };
            RegionReport {
                name,
                points: acc.points,
                worst_n1: acc.worst_n1,
                worst_n2: acc.worst_n2,
                worst_ratio: acc.worst_ratio,
                verdict,
            }
        };
        let regions = vec![
            finish("left", left),
            finish("middle", middle),
            finish("right", right),
        ];
        let verdict = regions
            .iter()
            .map(|r| r.verdict)
            .fold(Verdict::Pass, |a, b| match (a, b) {
                (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
                (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
                _ => Verdict::Pass,
            });
        ResidualReport {
            kind: v.kind,
            t_max: t_top,
            x_span,
            slack_scale: SLACK_SCALE,
            regions,
            verdict,
        }
    }
}

/// Confinement conclusions of the upper barrier, asserted directly on the
/// assembled pair over the shrinking ball `|x| <= R - R_ε - (c+ε)t`.
///
/// The `u` side is pinned below `2δ` (below `δ` once the perturbation has
/// halved). On the `v` side the transition profile carries its full
/// amplitude `2b` inside the ball, so the sharp bounds the construction
/// yields are `1 - (2b + 1/2)δ` and `1 - (b + 1/2)δ`; both thresholds are
/// recorded in the report next to the measured extrema.
#[derive(Debug, Clone)]
pub struct ShrinkingBallReport {
    pub horizon: f64,
    pub t_eps: f64,
    pub delta: f64,
    pub max_u: f64,
    pub min_v: f64,
    pub max_u_late: f64,
    pub min_v_late: f64,
    pub u_threshold: f64,
    pub v_threshold: f64,
    pub u_threshold_late: f64,
    pub v_threshold_late: f64,
    pub pass: bool,
}

pub fn shrinking_ball_check(
    cert: &Certificate,
    n_t: usize,
    n_x: usize,
) -> Result<ShrinkingBallReport> {
    let v = &cert.values;
    if v.kind != CertificateKind::Super {
        return Err(Error::CertificateFailed {
            detail: "shrinking-ball conclusions apply to the upper barrier".into(),
        });
    }
    let (r_eps, t_eps) = (v.r_eps.unwrap(), v.t_eps.unwrap());
    let speed = cert.c_uv + v.eps;
    let horizon = (v.r_big - r_eps) / speed;

    // Dense early times plus a geometric tail to the horizon.
    let mut times: Vec<f64> = (0..n_t)
        .map(|k| (4.0 * t_eps).min(horizon) * k as f64 / (n_t - 1) as f64)
        .collect();
    let mut t = 4.0 * t_eps;
    while t < horizon {
        t *= 1.5;
        times.push(t.min(horizon));
    }

    let mut max_u = f64::NEG_INFINITY;
    let mut min_v = f64::INFINITY;
    let mut max_u_late = f64::NEG_INFINITY;
    let mut min_v_late = f64::INFINITY;
    for &t in &times {
        let ball = v.r_big - r_eps - speed * t;
        if ball < 0.0 {
            continue;
        }
        for k in 0..=n_x {
            let radius = ball * k as f64 / n_x as f64;
            let (u, w) = cert.upper_pair(t, radius);
            max_u = max_u.max(u);
            min_v = min_v.min(w);
            if t >= t_eps {
                max_u_late = max_u_late.max(u);
                min_v_late = min_v_late.min(w);
            }
        }
    }
    let tol = 1e-12;
    let b = cert.model.b;
    let u_threshold = 2.0 * v.delta;
    let v_threshold = 1.0 - (2.0 * b + 0.5) * v.delta;
    let u_threshold_late = v.delta;
    let v_threshold_late = 1.0 - (b + 0.5) * v.delta;
    let pass = max_u <= u_threshold + tol
        && min_v >= v_threshold - tol
        && max_u_late <= u_threshold_late + tol
        && min_v_late >= v_threshold_late - tol;
    Ok(ShrinkingBallReport {
        horizon,
        t_eps,
        delta: v.delta,
        max_u,
        min_v,
        max_u_late,
        min_v_late,
        u_threshold,
        v_threshold,
        u_threshold_late,
        v_threshold_late,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::assemble::assemble_certificate;
    use crate::front::{solve_bistable_front, BistableOptions};
    use crate::model::ModelParams;

    fn winner_profile() -> (crate::front::FrontProfile, ModelParams) {
        let params = ModelParams::new(1.0, 1.0, 2.0, 3.0).unwrap();
        let profile = solve_bistable_front(&params, &BistableOptions::default()).unwrap();
        (profile, params)
    }

    #[test]
    fn lower_barrier_scan_passes() {
        let (profile, params) = winner_profile();
        let cert = assemble_certificate(
            &profile,
            &params,
            profile.speed / 2.0,
            CertificateKind::Sub,
            2,
        )
        .unwrap();
        let report = cert.residual_scan(&ScanGrid::default());
        assert!(
            report.passed(),
            "verdict {:?}, regions {:#?}",
            report.verdict,
            report.regions
        );
        for region in &report.regions {
            assert!(region.points > 0, "region {} never sampled", region.name);
        }
        // The lower barrier keeps N1 <= 0 by a margin: the worst value is
        // genuinely negative in the far regions.
        assert!(report.regions[0].worst_n1 < 0.0);
    }

    #[test]
    fn upper_barrier_scan_passes() {
        let (profile, params) = winner_profile();
        let cert =
            assemble_certificate(&profile, &params, 0.12, CertificateKind::Super, 2).unwrap();
        let report = cert.residual_scan(&ScanGrid::default());
        assert!(
            report.passed(),
            "verdict {:?}, regions {:#?}",
            report.verdict,
            report.regions
        );
    }

    #[test]
    fn shrinking_ball_conclusions_hold() {
        let (profile, params) = winner_profile();
        let cert =
            assemble_certificate(&profile, &params, 0.12, CertificateKind::Super, 2).unwrap();
        let report = shrinking_ball_check(&cert, 80, 160).unwrap();
        assert!(report.pass, "{report:#?}");
        assert!(report.max_u <= report.u_threshold + 1e-12);
        assert!(report.min_v >= report.v_threshold - 1e-12);
        assert!(report.max_u_late <= report.u_threshold_late + 1e-12);
    }

    #[test]
    fn shrinking_ball_needs_upper_kind() {
        let (profile, params) = winner_profile();
        let cert = assemble_certificate(
            &profile,
            &params,
            profile.speed / 2.0,
            CertificateKind::Sub,
            2,
        )
        .unwrap();
        assert!(shrinking_ball_check(&cert, 10, 10).is_err());
    }

    #[test]
    fn corrupted_constants_fail_the_scan() {
        // Flipping the sign of ε sends the barrier out faster than the
        // front it rides on, which breaks the leading term of the
        // inequality; the scan must notice rather than silently pass.
        let (profile, params) = winner_profile();
        let mut cert = assemble_certificate(
            &profile,
            &params,
            profile.speed / 2.0,
            CertificateKind::Sub,
            2,
        )
        .unwrap();
        cert.values.eps = -cert.values.eps;
        let report = cert.residual_scan(&ScanGrid {
            n_t: 40,
            n_front: 401,
            ..ScanGrid::default()
        });
        assert_eq!(report.verdict, Verdict::Fail, "{:#?}", report.regions);
    }
}
