//! Least-squares speed estimation over the settled half of a track.

use super::track::FrontTrack;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct SpeedEstimate {
    pub speed: f64,
    pub intercept: f64,
    pub fit_window: (f64, f64),
    pub rms_residual: f64,
}

const MIN_SAMPLES: usize = 8;

/// Fits a line through the attained positions with `t >= t_last / 2`,
/// discarding the transient first half.
pub fn fit_speed(track: &FrontTrack) -> Result<SpeedEstimate> {
    let attained: Vec<(f64, f64)> = track.attained().collect();
    let t_last = attained.last().map(|&(t, _)| t).unwrap_or(0.0);
    let window: Vec<(f64, f64)> = attained
        .into_iter()
        .filter(|&(t, _)| t >= 0.5 * t_last)
        .collect();
    if window.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_SAMPLES,
            got: window.len(),
        });
    }
    let n = window.len() as f64;
    let mean_t = window.iter().map(|&(t, _)| t).sum::<f64>() / n;
    let mean_p = window.iter().map(|&(_, p)| p).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for &(t, p) in &window {
        cov += (t - mean_t) * (p - mean_p);
        var += (t - mean_t) * (t - mean_t);
    }
    let speed = cov / var;
    let intercept = mean_p - speed * mean_t;
    let ss = window
        .iter()
        .map(|&(t, p)| (p - intercept - speed * t).powi(2))
        .sum::<f64>();
    Ok(SpeedEstimate {
        speed,
        intercept,
        fit_window: (window[0].0, window[window.len() - 1].0),
        rms_residual: (ss / n).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speed::track::Field;

    fn synthetic(positions: impl Fn(f64) -> f64, n: usize) -> FrontTrack {
        FrontTrack {
            field: Field::U,
            level: 0.5,
            samples: (0..n)
                .map(|k| {
                    let t = k as f64;
                    (t, Some(positions(t)))
                })
                .collect(),
        }
    }

    #[test]
    fn exact_line_is_recovered() {
        let est = fit_speed(&synthetic(|t| 3.0 * t + 1.0, 30)).unwrap();
        assert!((est.speed - 3.0).abs() < 1e-12);
        assert!((est.intercept - 1.0).abs() < 1e-12);
        assert!(est.rms_residual < 1e-12);
    }

    #[test]
    fn affine_equivariance() {
        // Shifting every position by s shifts the intercept, not the speed.
        let base = fit_speed(&synthetic(|t| 1.7 * t + 0.3 + (t * 0.9).sin() * 0.01, 40)).unwrap();
        let shifted =
            fit_speed(&synthetic(|t| 1.7 * t + 5.3 + (t * 0.9).sin() * 0.01, 40)).unwrap();
        assert!((base.speed - shifted.speed).abs() < 1e-12);
        assert!((shifted.intercept - base.intercept - 5.0).abs() < 1e-9);
    }

    #[test]
    fn transient_half_is_discarded() {
        // Positions that settle onto a line after a transient: only the
        // settled half is fitted.
        let est = fit_speed(&synthetic(
            |t| if t < 15.0 { 0.1 * t } else { 2.0 * t - 28.5 },
            31,
        ))
        .unwrap();
        assert!((est.speed - 2.0).abs() < 1e-12, "speed {}", est.speed);
        assert!(est.fit_window.0 >= 15.0);
    }

    #[test]
    fn too_few_samples_is_an_error() {
        let err = fit_speed(&synthetic(|t| t, 5)).unwrap_err();
        assert!(matches!(err, Error::TooFewSamples { .. }));
    }

    #[test]
    fn unattained_snapshots_are_skipped() {
        let mut track = synthetic(|t| 2.0 * t, 30);
        track.samples[3].1 = None;
        track.samples[20].1 = None;
        let est = fit_speed(&track).unwrap();
        assert!((est.speed - 2.0).abs() < 1e-12);
    }
}
