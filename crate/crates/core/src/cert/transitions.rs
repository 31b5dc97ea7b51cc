//! Monotone perturbation-amplitude transitions `p₁`, `p₂`.
//!
//! `p₁` decreases from `2a` to `1` and `p₂` increases from `1` to `2b`
//! across `[-M, M]`, constant outside, C² throughout. All four derivative
//! sup-norms must respect the speed-dependent bound
//! `min{1, 1/((1+d)c + d), 1/(c + 2)}`; the half-width doubles until they
//! do.

use crate::numeric::smoothstep::{
    smoothstep, smoothstep_d1, smoothstep_d2, SMOOTHSTEP_MAX_D1, SMOOTHSTEP_MAX_D2,
};

#[derive(Debug, Clone)]
pub struct TransitionPair {
    /// Transition half-width `M`.
    pub half_width: f64,
    /// Derivative sup-norm bound the pair satisfies.
    pub derivative_bound: f64,
    left_value: f64,  // p1(-∞) = 2a
    right_value: f64, // p2(+∞) = 2b
}

impl TransitionPair {
    /// `p₁` with two derivatives: decreasing, `2a` before `-M`, `1` after
    /// `M`.
    pub fn p1(&self, xi: f64) -> (f64, f64, f64) {
        let m = self.half_width;
        let s = (xi + m) / (2.0 * m);
        let span = self.left_value - 1.0;
        (
            self.left_value - span * smoothstep(s),
            -span * smoothstep_d1(s) / (2.0 * m),
            -span * smoothstep_d2(s) / (2.0 * m).powi(2),
        )
    }

    /// `p₂` with two derivatives: increasing, `1` before `-M`, `2b` after
    /// `M`.
    pub fn p2(&self, xi: f64) -> (f64, f64, f64) {
        let m = self.half_width;
        let s = (xi + m) / (2.0 * m);
        let span = self.right_value - 1.0;
        (
            1.0 + span * smoothstep(s),
            span * smoothstep_d1(s) / (2.0 * m),
            span * smoothstep_d2(s) / (2.0 * m).powi(2),
        )
    }

    fn sup_norms(&self) -> f64 {
        let m2 = 2.0 * self.half_width;
        let span = (self.left_value - 1.0).max(self.right_value - 1.0);
        (span * SMOOTHSTEP_MAX_D1 / m2).max(span * SMOOTHSTEP_MAX_D2 / (m2 * m2))
    }
}

/// The speed-dependent derivative bound.
pub fn derivative_bound(d: f64, c_uv: f64) -> f64 {
    1f64.min(1.0 / ((1.0 + d) * c_uv + d))
        .min(1.0 / (c_uv + 2.0))
}

/// Builds the pair at the smallest power-of-two multiple of
/// `min_half_width` whose derivative sup-norms meet the bound.
pub fn build_transitions(min_half_width: f64, a: f64, b: f64, d: f64, c_uv: f64) -> TransitionPair {
    assert!(min_half_width > 0.0);
    let bound = derivative_bound(d, c_uv);
    let mut pair = TransitionPair {
        half_width: min_half_width,
        derivative_bound: bound,
        left_value: 2.0 * a,
        right_value: 2.0 * b,
    };
    while pair.sup_norms() > bound {
        pair.half_width *= 2.0;
    }
    pair
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_values_are_exact() {
        let p = build_transitions(5.0, 2.0, 2.0, 1.0, 0.0);
        let m = p.half_width;
        assert_eq!(p.p1(-m).0, 4.0);
        assert_eq!(p.p1(m).0, 1.0);
        assert_eq!(p.p2(-m).0, 1.0);
        assert_eq!(p.p2(m).0, 4.0);
        assert_eq!(p.p1(-m - 10.0).0, 4.0, "constant beyond the transition");
        assert_eq!(p.p2(m + 10.0).0, 4.0);
    }

    #[test]
    fn endpoint_derivatives_vanish() {
        let p = build_transitions(5.0, 2.0, 3.0, 1.0, 0.3);
        let m = p.half_width;
        for xi in [-m, m] {
            let (_, d1, d2) = p.p1(xi);
            assert_eq!(d1, 0.0);
            assert_eq!(d2, 0.0);
            let (_, d1, d2) = p.p2(xi);
            assert_eq!(d1, 0.0);
            assert_eq!(d2, 0.0);
        }
    }

    #[test]
    fn derivative_bound_golden_value() {
        // (a, b, d, c) = (2, 2, 1, 0): min{1, 1/1, 1/2} = 1/2, evaluated
        // directly from the three printed terms.
        assert_eq!(derivative_bound(1.0, 0.0), 0.5);
    }

    #[test]
    fn sup_norms_meet_the_bound_on_a_scan() {
        let p = build_transitions(3.0, 2.0, 5.0, 1.0, 0.25);
        let bound = p.derivative_bound;
        let m = p.half_width;
        for k in 0..=4000 {
            let xi = -m + 2.0 * m * k as f64 / 4000.0;
            let (_, d1, d2) = p.p1(xi);
            assert!(d1.abs() <= bound + 1e-12 && d2.abs() <= bound + 1e-12);
            let (_, d1, d2) = p.p2(xi);
            assert!(d1.abs() <= bound + 1e-12 && d2.abs() <= bound + 1e-12);
        }
    }

    #[test]
    fn monotonicity() {
        let p = build_transitions(4.0, 1.5, 5.0, 1.0, 0.5);
        let m = p.half_width;
        let mut last1 = f64::INFINITY;
        let mut last2 = f64::NEG_INFINITY;
        for k in 0..=500 {
            let xi = -m - 1.0 + (2.0 * m + 2.0) * k as f64 / 500.0;
            let v1 = p.p1(xi).0;
            let v2 = p.p2(xi).0;
            assert!(v1 <= last1 + 1e-12);
            assert!(v2 >= last2 - 1e-12);
            last1 = v1;
            last2 = v2;
        }
    }

    #[test]
    fn half_width_grows_until_the_bound_holds() {
        // Steep contrast (b = 5) at a small requested width forces doubling.
        let p = build_transitions(1.0, 1.5, 5.0, 1.0, 0.5);
        assert!(p.half_width > 1.0);
        assert!(p.sup_norms() <= p.derivative_bound);
    }
}
