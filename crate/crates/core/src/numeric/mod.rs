//! Small self-contained numerical kernels shared by the solvers.

pub mod banded;
pub mod smoothstep;
pub mod spline;

pub use banded::{BandedLu, BandedMatrix};
pub use spline::CubicSpline;
