//! Explicit barrier (sub/supersolution) certificates.
//!
//! A certificate packages a computed two-component front profile with the
//! auxiliary functions and constants needed to turn it into a moving
//! sub- or supersolution of the full system: a radial ramp `h_ε` that
//! flattens the moving coordinate near the origin, a pair of monotone
//! transition profiles `p₁`, `p₂` modulating the perturbation amplitude
//! across the front, and the constants `δ, μ, ω, M, k₁, k₂, R, ρ` tied
//! together by explicit inequalities. The differential inequalities are then
//! verified pointwise on space-time grids rather than taken on faith.

mod assemble;
mod expbound;
mod ramp;
mod scan;
mod transitions;

pub use assemble::{assemble_certificate, Certificate, CertificateKind, CertificateParams};
pub use expbound::{exponential_bound_check, ExpBoundReport};
pub use ramp::{build_ramp, RampFunction};
pub use scan::{
    shrinking_ball_check, RegionReport, ResidualReport, ScanGrid, ShrinkingBallReport, Verdict,
};
pub use transitions::{build_transitions, TransitionPair};
