//! Traveling-wave solvers.
//!
//! Three problems are handled here:
//!
//! - the scalar logistic front at prescribed speed (two-point BVP, damped
//!   Newton on central differences),
//! - the two-component competition front with *unknown* speed, closed by the
//!   phase condition `Φ(0) = 1/2`,
//! - the auxiliary compactly-supported "bump" solution of the speed-capped
//!   logistic ODE, integrated as an initial value problem.

mod bistable;
mod bump;
mod kpp;

pub use bistable::{solve_bistable_front, BistableOptions, FrontProfile};
pub use bump::{modified_kpp_speed, solve_bump, BumpSolution};
pub use kpp::{solve_kpp_front, KppProfile};
