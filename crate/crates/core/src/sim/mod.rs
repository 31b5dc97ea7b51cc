//! Explicit finite-difference time stepping of the competition system on
//! truncated domains.
//!
//! The scheme is forward Euler in time with second-order central differences
//! in space and zero-flux outer boundaries. Under the stability bound the
//! scheme is monotone for the competitive order (`u` up, `v` down), which is
//! the discrete backbone of every comparison argument in this crate, so no
//! implicit or higher-order alternative is used.

mod grid;
mod radius;
mod run;
mod scenario;
mod stepper;

pub use grid::{Grid, GridKind};
pub use radius::{invasion_radius_search, RadiusSearchOptions, RadiusSearchResult};
pub use run::{run, run_from, RunOptions, Trajectory};
pub use scenario::{init_state, Scenario};
pub use stepper::{max_stable_dt, step, GridState};
