//! The radial ramp `h_ε`.
//!
//! A C² function on `[0, ∞)` with
//!
//! - `0 <= h' <= 1`,
//! - `h' = 0` near the origin,
//! - `h(r) = r` from some horizon `H_ε` on,
//! - `max(d,1)·((N-1)/r · h' + h'') <= ε/2` everywhere.
//!
//! These clauses force `r <= h(r) <= r + h(0)`. The construction pins the
//! identity tail and integrates a smoothstep slope backward: the slope stays
//! 0 on `[0, r₀]`, rises over a width `W`, and the budget `ε/2` is split
//! between the curvature term (`W` wide enough) and the radial term (`r₀`
//! far enough out). Both lengths grow like `O(1/ε)`.

use crate::error::{Error, Result};
use crate::numeric::smoothstep::{
    smoothstep, smoothstep_d1, smoothstep_integral, SMOOTHSTEP_MAX_D1,
};

#[derive(Debug, Clone)]
pub struct RampFunction {
    pub eps: f64,
    pub dim: usize,
    /// `max(d, 1)`, the diffusion factor the curvature clause is scaled by.
    pub diffusion_cap: f64,
    /// Slope is identically zero on `[0, flat_until]`.
    pub flat_until: f64,
    /// `h(r) = r` for `r >= identity_from` (the horizon `H_ε`).
    pub identity_from: f64,
}

impl RampFunction {
    fn rise_width(&self) -> f64 {
        self.identity_from - self.flat_until
    }

    /// Value, first and second derivative at `r >= 0`.
    pub fn eval(&self, r: f64) -> (f64, f64, f64) {
        let (r0, h_top) = (self.flat_until, self.identity_from);
        let w = self.rise_width();
        if r >= h_top {
            return (r, 1.0, 0.0);
        }
        if r <= r0 {
            // h is constant below r0: r0 + W·(1 - ∫₀¹S).
            return (r0 + w * 0.5, 0.0, 0.0);
        }
        let s = (r - r0) / w;
        // h(r) = r + ∫_r^{H} (1 - g), g the smoothstep slope.
        let remaining = w * ((1.0 - s) - (smoothstep_integral(1.0) - smoothstep_integral(s)));
        (r + remaining, smoothstep(s), smoothstep_d1(s) / w)
    }

    pub fn h0(&self) -> f64 {
        self.eval(0.0).0
    }

    /// Largest value of `max(d,1)·((N-1)/r·h' + h'')` on a fine grid.
    pub fn curvature_sup(&self, n_grid: usize) -> f64 {
        let top = 1.5 * self.identity_from;
        let mut sup = f64::NEG_INFINITY;
        for k in 1..=n_grid {
            let r = top * k as f64 / n_grid as f64;
            let (_, d1, d2) = self.eval(r);
            let radial = if self.dim > 1 {
                (self.dim - 1) as f64 / r * d1
            } else {
                0.0
            };
            sup = sup.max(self.diffusion_cap * (radial + d2));
        }
        sup
    }

    fn verify(&self, n_grid: usize) -> bool {
        let top = 1.5 * self.identity_from;
        for k in 0..=n_grid {
            let r = top * k as f64 / n_grid as f64;
            let (h, d1, _) = self.eval(r);
            if !(-1e-12..=1.0 + 1e-12).contains(&d1) {
                return false;
            }
            if h < r - 1e-9 || h > r + self.h0() + 1e-9 {
                return false;
            }
        }
        if self.eval(self.flat_until * 0.5).1 != 0.0 {
            return false;
        }
        if (self.eval(self.identity_from + 3.0).0 - (self.identity_from + 3.0)).abs() > 1e-12 {
            return false;
        }
        self.curvature_sup(n_grid) <= self.eps / 2.0
    }
}

pub fn build_ramp(eps: f64, dim: usize, d: f64) -> Result<RampFunction> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "eps",
            value: eps,
        });
    }
    if dim == 0 {
        return Err(Error::OutOfRange {
            name: "dim",
            value: 0.0,
            range: ">= 1".into(),
        });
    }
    let cap = d.max(1.0);
    let budget = eps / (2.0 * cap);
    // Half the budget to the radial term, half to the curvature term.
    let r0 = if dim > 1 {
        (2.0 * (dim - 1) as f64 / budget).max(1.0)
    } else {
        1.0
    };
    let mut width = 1.2 * SMOOTHSTEP_MAX_D1 / (budget / 2.0);

    const MAX_DOUBLINGS: usize = 4;
    for attempt in 0..=MAX_DOUBLINGS {
        let ramp = RampFunction {
            eps,
            dim,
            diffusion_cap: cap,
            flat_until: r0,
            identity_from: r0 + width,
        };
        if ramp.verify(4000) {
            return Ok(ramp);
        }
        if attempt < MAX_DOUBLINGS {
            width *= 2.0;
        }
    }
    Err(Error::RampConstruction {
        attempts: MAX_DOUBLINGS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_bound_holds_everywhere() {
        let ramp = build_ramp(0.2, 2, 1.0).unwrap();
        let h0 = ramp.h0();
        for k in 0..2000 {
            let r = k as f64 * ramp.identity_from / 1000.0;
            let (h, _, _) = ramp.eval(r);
            assert!(h >= r - 1e-12 && h <= r + h0 + 1e-12, "r = {r}");
        }
    }

    #[test]
    fn generous_budget_gives_short_horizon() {
        // ε beyond 2·max(d,1)·N makes every clause easy.
        let loose = build_ramp(8.0, 2, 1.0).unwrap();
        let tight = build_ramp(0.05, 2, 1.0).unwrap();
        assert!(loose.identity_from < tight.identity_from / 10.0);
    }

    #[test]
    fn horizon_scales_inversely_with_eps() {
        let a = build_ramp(0.1, 2, 1.0).unwrap();
        let b = build_ramp(0.05, 2, 1.0).unwrap();
        let ratio = b.identity_from / a.identity_from;
        assert!(ratio > 1.8 && ratio < 2.2, "ratio {ratio}");
    }

    #[test]
    fn curvature_clause_holds_on_finer_grid() {
        // The construction is verified on 4000 points; an independent 10x
        // finer scan must not find an exceedance.
        let ramp = build_ramp(0.3, 3, 2.0).unwrap();
        assert!(ramp.curvature_sup(40_000) <= ramp.eps / 2.0 + 1e-12);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let ramp = build_ramp(0.25, 2, 1.5).unwrap();
        let fd = 1e-6;
        for r in [
            0.5 * ramp.flat_until,
            ramp.flat_until + 0.3 * ramp.rise_width(),
            ramp.flat_until + 0.8 * ramp.rise_width(),
            ramp.identity_from + 2.0,
        ] {
            let (_, d1, d2) = ramp.eval(r);
            let (hp, _, _) = ramp.eval(r + fd);
            let (hm, _, _) = ramp.eval(r - fd);
            assert!(((hp - hm) / (2.0 * fd) - d1).abs() < 1e-8, "d1 at {r}");
            // Second difference with a wider step: h ~ 40 leaves ~4e-4 of
            // roundoff at fd = 1e-4.
            let fd2 = 1e-4;
            let (hp2, _, _) = ramp.eval(r + fd2);
            let (hm2, _, _) = ramp.eval(r - fd2);
            let (hc, _, _) = ramp.eval(r);
            assert!(
                ((hp2 - 2.0 * hc + hm2) / (fd2 * fd2) - d2).abs() < 2e-3,
                "d2 at {r}"
            );
        }
    }

    #[test]
    fn one_dimensional_ramp_skips_the_radial_budget() {
        let ramp = build_ramp(0.2, 1, 1.0).unwrap();
        assert_eq!(ramp.flat_until, 1.0);
        assert!(ramp.verify(2000));
    }
}
