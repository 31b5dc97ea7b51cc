//! Directional spreading speed and the envelope set.
//!
//! Given the unbounded directions of the initial support and the front
//! speed `c_uv > 0`, the directional speed is
//!
//! ```text
//! w(e) = sup { c_uv / √(1 - (ξ·e)²) : ξ unbounded, ξ·e >= 0 }
//! ```
//!
//! with `w(e) = c_uv` when no admissible ξ exists and `w(e) = +∞` when `e`
//! itself is an unbounded direction. The envelope is `{ r e : r < w(e) }`,
//! which equals the ray cone over the unbounded directions fattened by
//! `B(0, c_uv)`; membership is evaluated through both expressions and the
//! pair is returned so callers can assert their agreement.

use super::directions::DirectionClassification;
use super::vecn::{dot, norm};
use crate::error::{Error, Result};

fn check_cuv(c_uv: f64) -> Result<()> {
    if !(c_uv > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "c_uv",
            value: c_uv,
        });
    }
    Ok(())
}

/// Directional spreading speed `w(e)`; may return `+∞`.
pub fn speed_function(
    cls: &DirectionClassification,
    c_uv: f64,
    e: &[f64],
) -> Result<f64> {
    check_cuv(c_uv)?;
    let en = norm(e);
    if !(en > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "e",
            value: 0.0,
        });
    }
    // e counts as an unbounded direction when it lies within the sample
    // resolution of one.
    let align_cut = (cls.angular_resolution * 0.5).cos();
    let mut s_max: Option<f64> = None;
    for xi in cls.unbounded_directions() {
        let s = dot(xi, e) / en;
        if s >= align_cut {
            return Ok(f64::INFINITY);
        }
        if s >= 0.0 && s_max.map_or(true, |m| s > m) {
            s_max = Some(s);
        }
    }
    Ok(match s_max {
        None => c_uv,
        Some(s) => {
            let denom = (1.0 - s * s).max(0.0).sqrt();
            if denom == 0.0 {
                f64::INFINITY
            } else {
                c_uv / denom
            }
        }
    })
}

/// Membership of `x` in the envelope, via both defining expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvelopeMembership {
    /// Route A: `|x| < w(x/|x|)`.
    pub by_speed: bool,
    /// Route B: `dist(x, ray cone over unbounded directions) < c_uv`, with
    /// the empty cone reading as `B(0, c_uv)`.
    pub by_distance: bool,
}

impl EnvelopeMembership {
    pub fn agreed(&self) -> bool {
        self.by_speed == self.by_distance
    }

    pub fn is_member(&self) -> bool {
        self.by_distance
    }
}

pub fn envelope_membership(
    cls: &DirectionClassification,
    c_uv: f64,
    x: &[f64],
) -> Result<EnvelopeMembership> {
    check_cuv(c_uv)?;
    let r = norm(x);
    if r == 0.0 {
        return Ok(EnvelopeMembership {
            by_speed: true,
            by_distance: true,
        });
    }

    let by_speed = r < speed_function(cls, c_uv, x)?;

    // Distance from x to the closed cone of rays through the unbounded
    // directions: |x|·√(1-(ξ·e)²) for ξ·e >= 0, |x| otherwise (the ray's
    // closure meets the origin).
    let mut dist = f64::INFINITY;
    for xi in cls.unbounded_directions() {
        let t = dot(xi, x);
        let d = if t >= 0.0 {
            (r * r - t * t).max(0.0).sqrt()
        } else {
            r
        };
        dist = dist.min(d);
    }
    let by_distance = if dist.is_infinite() {
        r < c_uv
    } else {
        dist < c_uv
    };

    Ok(EnvelopeMembership {
        by_speed,
        by_distance,
    })
}

/// Checks that every sampled direction is either a bounded direction of the
/// original set or an unbounded direction of its eroded companion. The two
/// classifications must use the same direction sample.
pub fn covering_check(
    original: &DirectionClassification,
    eroded: &DirectionClassification,
) -> Result<bool> {
    if original.directions.len() != eroded.directions.len() {
        return Err(Error::DimensionMismatch {
            expected: original.directions.len(),
            got: eroded.directions.len(),
        });
    }
    Ok(original
        .bounded
        .iter()
        .zip(&eroded.bounded)
        .all(|(&b_orig, &b_eroded)| b_orig || !b_eroded))
}
