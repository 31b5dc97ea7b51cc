//! Numerics for a two-species competition-diffusion system on the line, on
//! radially symmetric domains and in the plane.
//!
//! The crate is organized around five pieces of machinery:
//!
//! - [`model`]: the four system coefficients, derived invasion speeds and the
//!   perturbation-margin constant used by the barrier constructions.
//! - [`front`]: traveling-wave solvers — the scalar logistic front, the
//!   two-component front with unknown speed, and related one-off ODE tools.
//! - [`sim`]: explicit finite-difference time stepping of the Cauchy problem
//!   from indicator initial data, plus the critical-radius search.
//! - [`speed`]: level-set front tracking, speed regression and the
//!   zone-convergence reports for spreading runs.
//! - [`geometry`]: constructive sets with exact distance queries, direction
//!   classification on the sphere, the directional speed function and the
//!   envelope-set membership test.
//! - [`cert`]: explicit sub/supersolution certificates assembled from a
//!   computed front profile and verified pointwise on space-time grids.

pub mod cert;
pub mod error;
pub mod front;
pub mod geometry;
pub mod io;
pub mod model;
pub mod numeric;
pub mod sim;
pub mod speed;

pub use error::{Error, Result};
pub use model::{ModelParams, Speeds};
