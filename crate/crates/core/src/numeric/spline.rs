//! Natural cubic spline interpolation with two derivatives.

use super::banded::BandedMatrix;

/// Natural cubic spline through `(x_i, y_i)` with constant extension beyond
/// the sampled interval (value clamped to the end sample, derivatives zero).
///
/// The constant extension matches the use case of front profiles that have
/// settled to their equilibria at the ends of the solve interval.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    /// Builds the spline. Requires at least 3 strictly increasing knots.
    pub fn new(x: &[f64], y: &[f64]) -> Self {
        assert_eq!(x.len(), y.len());
        assert!(x.len() >= 3, "need at least 3 knots");
        assert!(
            x.windows(2).all(|w| w[1] > w[0]),
            "knots must be strictly increasing"
        );
        let n = x.len();
        // Natural end conditions: M_0 = M_{n-1} = 0; tridiagonal system for
        // the interior second derivatives.
        let mut sys = BandedMatrix::zeros(n, 1, 1);
        let mut rhs = vec![0.0; n];
        sys.set(0, 0, 1.0);
        sys.set(n - 1, n - 1, 1.0);
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            sys.set(i, i - 1, h0 / 6.0);
            sys.set(i, i, (h0 + h1) / 3.0);
            sys.set(i, i + 1, h1 / 6.0);
            rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        let lu = sys.factor().expect("spline system is nonsingular");
        lu.solve_in_place(&mut rhs);
        CubicSpline {
            x: x.to_vec(),
            y: y.to_vec(),
            m: rhs,
        }
    }

    fn segment(&self, xq: f64) -> usize {
        // Index i with x[i] <= xq < x[i+1]; clamped to valid segments.
        match self.x.binary_search_by(|v| v.total_cmp(&xq)) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.x.len() - 2),
        }
    }

    /// Value, first and second derivative at `xq`.
    pub fn eval(&self, xq: f64) -> (f64, f64, f64) {
        let n = self.x.len();
        if xq <= self.x[0] {
            return (self.y[0], 0.0, 0.0);
        }
        if xq >= self.x[n - 1] {
            return (self.y[n - 1], 0.0, 0.0);
        }
        let i = self.segment(xq);
        let h = self.x[i + 1] - self.x[i];
        let lo = self.x[i + 1] - xq;
        let hi = xq - self.x[i];
        let (mi, mj) = (self.m[i], self.m[i + 1]);
        let value = mi * lo.powi(3) / (6.0 * h)
            + mj * hi.powi(3) / (6.0 * h)
            + (self.y[i] / h - mi * h / 6.0) * lo
            + (self.y[i + 1] / h - mj * h / 6.0) * hi;
        let d1 = -mi * lo.powi(2) / (2.0 * h)
            + mj * hi.powi(2) / (2.0 * h)
            - (self.y[i] / h - mi * h / 6.0)
            + (self.y[i + 1] / h - mj * h / 6.0);
        let d2 = (mi * lo + mj * hi) / h;
        (value, d1, d2)
    }

    pub fn value(&self, xq: f64) -> f64 {
        self.eval(xq).0
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }
}
