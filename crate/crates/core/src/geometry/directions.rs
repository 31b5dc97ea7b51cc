//! Direction sampling on the unit sphere and the bounded/unbounded
//! classification of a set's directions.

use super::primitives::IndicatorSet;
use super::vecn::scale;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Quasi-uniform sample of the unit sphere: uniform angles in 2D, Fibonacci
/// sphere in 3D.
pub fn sphere_sample(dim: usize, m: usize) -> Vec<Vec<f64>> {
    match dim {
        2 => (0..m)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / m as f64;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        3 => {
            let golden = (1.0 + 5f64.sqrt()) / 2.0;
            (0..m)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let t = 2.0 * PI * k as f64 / golden;
                    vec![r * t.cos(), r * t.sin(), z]
                })
                .collect()
        }
        _ => panic!("direction sampling supports dimensions 2 and 3"),
    }
}

/// Geometric τ-ladder `{ base · 2^k : k = 0..=doublings }`. The limit ratio
/// is estimated over the top half of the ladder.
#[derive(Debug, Clone)]
pub struct TauLadder {
    pub base: f64,
    pub doublings: usize,
}

impl Default for TauLadder {
    fn default() -> Self {
        TauLadder {
            base: 1.0,
            doublings: 16,
        }
    }
}

impl TauLadder {
    fn rungs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.doublings).map(|k| self.base * (1u64 << k) as f64)
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Directions with a limit-ratio estimate below this threshold are
    /// labeled unbounded.
    pub ratio_threshold: f64,
    pub ladder: TauLadder,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            ratio_threshold: 0.05,
            ladder: TauLadder::default(),
        }
    }
}

/// Per-direction labels and limit-ratio estimates for one set.
#[derive(Debug, Clone)]
pub struct DirectionClassification {
    pub directions: Vec<Vec<f64>>,
    /// Estimated `lim inf dist(τξ, U) / τ`.
    pub ratios: Vec<f64>,
    /// `true` = bounded direction (positive limit ratio).
    pub bounded: Vec<bool>,
    /// Nominal angular spacing of the sample, used to decide when a query
    /// direction coincides with a sampled one.
    pub angular_resolution: f64,
}

impl DirectionClassification {
    pub fn unbounded_directions(&self) -> impl Iterator<Item = &Vec<f64>> {
        self.directions
            .iter()
            .zip(&self.bounded)
            .filter_map(|(d, &b)| (!b).then_some(d))
    }

    pub fn has_unbounded(&self) -> bool {
        self.bounded.iter().any(|b| !b)
    }
}

/// Labels each sampled direction of the sphere as bounded or unbounded for
/// `set`, estimating `lim inf dist(τξ, U)/τ` by the minimum over the top
/// half of the τ-ladder.
///
/// For the supported primitive families the ratio `dist(τξ, U)/τ` is
/// eventually monotone in τ, so the tail minimum converges to the true
/// limit; the threshold only decides ties within sampling resolution.
pub fn classify_directions(
    set: &IndicatorSet,
    m: usize,
    opts: &ClassifyOptions,
) -> Result<DirectionClassification> {
    if m < 64 {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
            range: ">= 64".into(),
        });
    }
    let dim = set.dim();
    let directions = sphere_sample(dim, m);
    let top_half = opts.ladder.doublings / 2;
    let mut ratios = Vec::with_capacity(m);
    let mut bounded = Vec::with_capacity(m);
    for dir in &directions {
        let mut est = f64::INFINITY;
        for (k, tau) in opts.ladder.rungs().enumerate() {
            if k < top_half {
                continue;
            }
            let p = scale(dir, tau);
            est = est.min(set.distance(&p) / tau);
        }
        ratios.push(est);
        bounded.push(!(est < opts.ratio_threshold));
    }
    let angular_resolution = match dim {
        2 => 2.0 * PI / m as f64,
        _ => (4.0 * PI / m as f64).sqrt(),
    };
    Ok(DirectionClassification {
        directions,
        ratios,
        bounded,
        angular_resolution,
    })
}
