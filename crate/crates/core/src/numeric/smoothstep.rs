//! Quintic smoothstep and its calculus, used by the monotone transition
//! functions and the radial ramp.

/// `S(s) = 6s^5 - 15s^4 + 10s^3` on [0, 1]: rises 0 -> 1 with vanishing
/// first and second derivatives at both ends.
#[inline]
pub fn smoothstep(s: f64) -> f64 {
    let s = s.clamp(0.0, 1.0);
    s * s * s * (s * (6.0 * s - 15.0) + 10.0)
}

#[inline]
pub fn smoothstep_d1(s: f64) -> f64 {
    if !(0.0..=1.0).contains(&s) {
        return 0.0;
    }
    30.0 * s * s * (s - 1.0) * (s - 1.0)
}

#[inline]
pub fn smoothstep_d2(s: f64) -> f64 {
    if !(0.0..=1.0).contains(&s) {
        return 0.0;
    }
    60.0 * s * (s - 1.0) * (2.0 * s - 1.0)
}

/// `∫_0^s S`, clamped integral: equals `s - 1/2` for `s >= 1`.
#[inline]
pub fn smoothstep_integral(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return s - 0.5;
    }
    s.powi(4) * (s * s - 3.0 * s + 2.5)
}

/// Maximum of `S'` on [0, 1], attained at `s = 1/2`.
pub const SMOOTHSTEP_MAX_D1: f64 = 1.875;

/// Maximum of `|S''|` on [0, 1], attained at `s = (3 ± √3)/6`.
pub const SMOOTHSTEP_MAX_D2: f64 = 5.773502691896258; // 10/√3
