//! Constructive sets with exact distance queries, direction classification
//! on the unit sphere, the directional speed function and the envelope set.
//!
//! Sets are finite unions of primitives (balls, half-spaces, solid cones,
//! axis boxes), each with a closed-form distance. Rasterized masks cannot
//! support the `τ -> ∞` limits the direction classification needs; the
//! constructive representation can.

mod directions;
mod envelope;
mod primitives;
pub mod vecn;

pub use directions::{
    classify_directions, sphere_sample, ClassifyOptions, DirectionClassification, TauLadder,
};
pub use envelope::{covering_check, envelope_membership, speed_function, EnvelopeMembership};
pub use primitives::{IndicatorSet, Primitive};
