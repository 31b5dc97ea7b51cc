//! System coefficients, derived invasion speeds and the perturbation margin.

use crate::error::{Error, Result};

/// The four positive coefficients of the competition-diffusion system
///
/// ```text
/// u_t = d Δu + r u (1 - u - a v)
/// v_t =   Δv +   v (1 - v - b u)
/// ```
///
/// `d` is the diffusion rate of `u`, `r` its intrinsic growth rate, and
/// `a`, `b` the competition coefficients felt by `u` and `v` respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub d: f64,
    pub r: f64,
    pub a: f64,
    pub b: f64,
}

/// Invasion speeds derived from [`ModelParams`].
///
/// `c_u` and `c_v` are the minimal logistic-front speeds of each species in
/// the absence of the other. `c_uv` is the speed of the front connecting the
/// two exclusion states; it has no closed form and stays `None` until a
/// boundary-value solve fills it in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Speeds {
    pub c_u: f64,
    pub c_v: f64,
    pub c_uv: Option<f64>,
}

impl ModelParams {
    pub fn new(d: f64, r: f64, a: f64, b: f64) -> Result<Self> {
        let p = ModelParams { d, r, a, b };
        p.validate()?;
        Ok(p)
    }

    fn check_positive(&self) -> Result<()> {
        for (name, value) in [
            ("d", self.d),
            ("r", self.r),
            ("a", self.a),
            ("b", self.b),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        Ok(())
    }

    /// Both exclusion states are stable iff both competition coefficients
    /// exceed one.
    pub fn strong_competition(&self) -> bool {
        self.a > 1.0 && self.b > 1.0
    }

    /// Checks positivity and returns the derived speeds, `c_uv` unset.
    pub fn validate(&self) -> Result<Speeds> {
        self.check_positive()?;
        Ok(Speeds {
            c_u: 2.0 * (self.d * self.r).sqrt(),
            c_v: 2.0,
            c_uv: None,
        })
    }

    /// Like [`validate`](Self::validate) but additionally rejects parameter
    /// sets outside the strong-competition (bistable) regime.
    pub fn validate_strong(&self) -> Result<Speeds> {
        let speeds = self.validate()?;
        if !self.strong_competition() {
            return Err(Error::NotStrongCompetition {
                a: self.a,
                b: self.b,
            });
        }
        Ok(speeds)
    }

    /// Largest perturbation amplitude admitted by the barrier constructions.
    ///
    /// Six-term minimum, evaluated term by term with no simplification so
    /// each factor can be audited:
    ///
    /// ```text
    /// min{ 1 / (2(3 + 4 max{a,b})),
    ///      (a-1) / (2(1 + 2b) a),
    ///      (b-1) / (2(4a + 1) b),
    ///      1/6,
    ///      (a-1) / (2(4b + 1) a),
    ///      (b-1) / (2(1 + 2a) b) }
    /// ```
    ///
    /// Requires strong competition; for `a <= 1` or `b <= 1` some terms are
    /// non-positive and the margin is meaningless.
    pub fn delta0(&self) -> Result<f64> {
        self.check_positive()?;
        if !self.strong_competition() {
            return Err(Error::NotStrongCompetition {
                a: self.a,
                b: self.b,
            });
        }
        let (a, b) = (self.a, self.b);
        let terms = [
            1.0 / (2.0 * (3.0 + 4.0 * a.max(b))),
            (a - 1.0) / (2.0 * (1.0 + 2.0 * b) * a),
            (b - 1.0) / (2.0 * (4.0 * a + 1.0) * b),
            1.0 / 6.0,
            (a - 1.0) / (2.0 * (4.0 * b + 1.0) * a),
            (b - 1.0) / (2.0 * (1.0 + 2.0 * a) * b),
        ];
        Ok(terms.into_iter().fold(f64::INFINITY, f64::min))
    }
}

impl Speeds {
    /// Admissible open interval for the two-component front speed.
    pub fn front_speed_bounds(&self) -> (f64, f64) {
        (-self.c_v, self.c_u)
    }

    /// Records a computed front speed after checking it lies in the
    /// admissible interval `(-c_v, c_u)`.
    pub fn with_front_speed(mut self, c_uv: f64) -> Result<Self> {
        let (lo, hi) = self.front_speed_bounds();
        if !(c_uv > lo && c_uv < hi) {
            return Err(Error::OutOfRange {
                name: "c_uv",
                value: c_uv,
                range: format!("({lo}, {hi})"),
            });
        }
        self.c_uv = Some(c_uv);
        Ok(self)
    }
}
