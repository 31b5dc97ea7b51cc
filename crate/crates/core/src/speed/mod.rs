//! Front positions, spreading speeds and zone-convergence reports extracted
//! from recorded trajectories.

mod fit;
mod track;
mod zones;

pub use fit::{fit_speed, SpeedEstimate};
pub use track::{track_level, Direction, Field, FrontTrack};
pub use zones::{check_zones, zone_sup, ZoneCheck, ZoneReport, ZoneSpec, ZoneTarget};
