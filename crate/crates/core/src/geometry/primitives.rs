//! Set primitives with closed-form distance, interior depth and erosion.

use super::vecn::{axpy, distance as point_distance, dot, norm, normalized, sub};
use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_2;

/// One solid primitive. All sets are closed.
#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    /// `{ x : x·normal <= offset }` with a unit normal.
    HalfSpace {
        normal: Vec<f64>,
        offset: f64,
    },
    /// Solid infinite cone: points within `half_angle` of `axis` seen from
    /// `apex`. Requires `0 < half_angle < π/2`.
    Cone {
        apex: Vec<f64>,
        axis: Vec<f64>,
        half_angle: f64,
    },
    AxisBox {
        min: Vec<f64>,
        max: Vec<f64>,
    },
}

impl Primitive {
    pub fn dim(&self) -> usize {
        match self {
            Primitive::Ball { center, .. } => center.len(),
            Primitive::HalfSpace { normal, .. } => normal.len(),
            Primitive::Cone { apex, .. } => apex.len(),
            Primitive::AxisBox { min, .. } => min.len(),
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        match self {
            Primitive::Ball { radius, .. } => {
                if !(*radius > 0.0) {
                    return Err(Error::NonPositiveParameter {
                        name: "radius",
                        value: *radius,
                    });
                }
            }
            Primitive::HalfSpace { normal, .. } => {
                if !(norm(normal) > 0.0) {
                    return Err(Error::NonPositiveParameter {
                        name: "normal",
                        value: 0.0,
                    });
                }
            }
            Primitive::Cone {
                axis, half_angle, ..
            } => {
                if !(norm(axis) > 0.0) {
                    return Err(Error::NonPositiveParameter {
                        name: "axis",
                        value: 0.0,
                    });
                }
                if !(*half_angle > 0.0 && *half_angle < FRAC_PI_2) {
                    return Err(Error::OutOfRange {
                        name: "half_angle",
                        value: *half_angle,
                        range: "(0, π/2)".into(),
                    });
                }
            }
            Primitive::AxisBox { min, max } => {
                if min.len() != max.len() || min.iter().zip(max).any(|(a, b)| a >= b) {
                    return Err(Error::ScenarioConfig(
                        "axis box needs min < max componentwise".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Euclidean distance to the primitive; 0 inside.
    pub fn distance(&self, x: &[f64]) -> f64 {
        match self {
            Primitive::Ball { center, radius } => (point_distance(x, center) - radius).max(0.0),
            Primitive::HalfSpace { normal, offset } => (dot(x, normal) - offset).max(0.0),
            Primitive::Cone {
                apex,
                axis,
                half_angle,
            } => {
                let p = sub(x, apex);
                let len = norm(&p);
                if len == 0.0 {
                    return 0.0;
                }
                let t = dot(&p, axis);
                let perp = (len * len - t * t).max(0.0).sqrt();
                let theta = perp.atan2(t);
                if theta <= *half_angle {
                    0.0
                } else if theta <= half_angle + FRAC_PI_2 {
                    len * (theta - half_angle).sin()
                } else {
                    len
                }
            }
            Primitive::AxisBox { min, max } => x
                .iter()
                .zip(min.iter().zip(max))
                .map(|(&xi, (&lo, &hi))| (lo - xi).max(xi - hi).max(0.0).powi(2))
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Distance to the complement; 0 outside. Exact for every primitive.
    pub fn depth(&self, x: &[f64]) -> f64 {
        match self {
            Primitive::Ball { center, radius } => (radius - point_distance(x, center)).max(0.0),
            Primitive::HalfSpace { normal, offset } => (offset - dot(x, normal)).max(0.0),
            Primitive::Cone {
                apex,
                axis,
                half_angle,
            } => {
                let p = sub(x, apex);
                let len = norm(&p);
                if len == 0.0 {
                    return 0.0;
                }
                let t = dot(&p, axis);
                let perp = (len * len - t * t).max(0.0).sqrt();
                let theta = perp.atan2(t);
                if theta >= *half_angle {
                    0.0
                } else {
                    // half_angle < π/2 keeps the boundary foot on the
                    // lateral surface.
                    len * (half_angle - theta).sin()
                }
            }
            Primitive::AxisBox { min, max } => x
                .iter()
                .zip(min.iter().zip(max))
                .map(|(&xi, (&lo, &hi))| (xi - lo).min(hi - xi))
                .fold(f64::INFINITY, f64::min)
                .max(0.0),
        }
    }

    /// The primitive shrunk by `rho`, or `None` when erosion empties it.
    /// Exact for every primitive family.
    pub fn erode(&self, rho: f64) -> Option<Primitive> {
        match self {
            Primitive::Ball { center, radius } => (*radius > rho).then(|| Primitive::Ball {
                center: center.clone(),
                radius: radius - rho,
            }),
            Primitive::HalfSpace { normal, offset } => Some(Primitive::HalfSpace {
                normal: normal.clone(),
                offset: offset - rho,
            }),
            Primitive::Cone {
                apex,
                axis,
                half_angle,
            } => Some(Primitive::Cone {
                // Intersection of shifted tangent half-spaces: the apex
                // slides up the axis by rho / sin(α).
                apex: axpy(apex, rho / half_angle.sin(), axis),
                axis: axis.clone(),
                half_angle: *half_angle,
            }),
            Primitive::AxisBox { min, max } => {
                let new_min: Vec<f64> = min.iter().map(|v| v + rho).collect();
                let new_max: Vec<f64> = max.iter().map(|v| v - rho).collect();
                new_min
                    .iter()
                    .zip(&new_max)
                    .all(|(a, b)| a < b)
                    .then_some(Primitive::AxisBox {
                        min: new_min,
                        max: new_max,
                    })
            }
        }
    }
}

/// Finite union of primitives with exact distance queries.
///
/// The distance to a union is the minimum over members (exact). The interior
/// depth is the maximum over members, which is exact for a single primitive
/// and a conservative lower bound for overlapping unions.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorSet {
    dim: usize,
    primitives: Vec<Primitive>,
}

impl IndicatorSet {
    pub fn empty(dim: usize) -> Self {
        IndicatorSet {
            dim,
            primitives: Vec::new(),
        }
    }

    pub fn new(dim: usize, primitives: Vec<Primitive>) -> Result<Self> {
        for p in &primitives {
            p.validate(dim)?;
        }
        Ok(IndicatorSet { dim, primitives })
    }

    pub fn ball(center: Vec<f64>, radius: f64) -> Result<Self> {
        let dim = center.len();
        Self::new(dim, vec![Primitive::Ball { center, radius }])
    }

    pub fn half_space(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let dim = normal.len();
        let normal = normalized(&normal);
        Self::new(dim, vec![Primitive::HalfSpace { normal, offset }])
    }

    pub fn cone(apex: Vec<f64>, axis: Vec<f64>, half_angle: f64) -> Result<Self> {
        let dim = apex.len();
        let axis = normalized(&axis);
        Self::new(
            dim,
            vec![Primitive::Cone {
                apex,
                axis,
                half_angle,
            }],
        )
    }

    pub fn axis_box(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        let dim = min.len();
        Self::new(dim, vec![Primitive::AxisBox { min, max }])
    }

    pub fn union_with(mut self, other: IndicatorSet) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        self.primitives.extend(other.primitives);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    /// Exact Euclidean distance to the union; `+∞` for the empty set.
    pub fn distance(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.primitives
            .iter()
            .map(|p| p.distance(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Interior depth: exact for single primitives, conservative (never
    /// overestimates) for unions.
    pub fn depth(&self, x: &[f64]) -> f64 {
        self.primitives
            .iter()
            .map(|p| p.depth(x))
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.primitives.iter().any(|p| p.distance(x) == 0.0)
    }

    /// The positive-distance interior: members at depth at least `rho`.
    /// Evaluated exactly per primitive; for unions the result is the union
    /// of per-primitive erosions, a conservative subset of the true eroded
    /// set. May be empty.
    pub fn erode(&self, rho: f64) -> Result<IndicatorSet> {
        if !(rho > 0.0) {
            return Err(Error::NonPositiveParameter {
                name: "rho",
                value: rho,
            });
        }
        Ok(IndicatorSet {
            dim: self.dim,
            primitives: self
                .primitives
                .iter()
                .filter_map(|p| p.erode(rho))
                .collect(),
        })
    }
}
