//! Structured-text run configuration.
//!
//! A run has around twenty knobs, so they live in a `key = value` file with
//! sections rather than positional flags. Every knob has a default; unknown
//! keys are rejected so typos cannot silently fall back to defaults. The
//! effective post-default configuration is echoed into the manifest, which
//! makes runs reproducible from the manifest alone.

use compfront_core::error::{Error as CoreError, Result as CoreResult};
use compfront_core::geometry::IndicatorSet;
use compfront_core::sim::{Grid, GridKind, Scenario};
use compfront_core::ModelParams;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub params: ParamsSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub front: FrontSection,
    #[serde(default)]
    pub simulate: SimulateSection,
    #[serde(default)]
    pub speed: SpeedSection,
    #[serde(default)]
    pub zones: ZonesSection,
    #[serde(default)]
    pub geometry: GeometrySection,
    #[serde(default)]
    pub certify: CertifySection,
    #[serde(default)]
    pub radius: RadiusSection,
    #[serde(default)]
    pub output: OutputSection,
}

fn default_one() -> f64 {
    1.0
}
fn default_two() -> f64 {
    2.0
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    #[serde(default = "default_one")]
    pub d: f64,
    #[serde(default = "default_one")]
    pub r: f64,
    #[serde(default = "default_two")]
    pub a: f64,
    #[serde(default = "default_two")]
    pub b: f64,
}

impl Default for ParamsSection {
    fn default() -> Self {
        ParamsSection {
            d: 1.0,
            r: 1.0,
            a: 2.0,
            b: 2.0,
        }
    }
}

impl ParamsSection {
    pub fn to_model(&self) -> CoreResult<ModelParams> {
        ModelParams::new(self.d, self.r, self.a, self.b)
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    /// "line", "radial" or "plane".
    #[serde(default = "GridSection::default_kind")]
    pub kind: String,
    /// Spatial dimension for radial grids.
    #[serde(default = "GridSection::default_dim")]
    pub dim: usize,
    #[serde(default = "GridSection::default_spacing")]
    pub spacing: f64,
    #[serde(default = "GridSection::default_extent")]
    pub extent: f64,
}

impl GridSection {
    fn default_kind() -> String {
        "line".into()
    }
    fn default_dim() -> usize {
        2
    }
    fn default_spacing() -> f64 {
        0.2
    }
    fn default_extent() -> f64 {
        400.0
    }
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            kind: "line".into(),
            dim: 2,
            spacing: 0.2,
            extent: 400.0,
        }
    }
}

impl GridSection {
    pub fn to_grid(&self) -> CoreResult<Grid> {
        let kind = match self.kind.as_str() {
            "line" => GridKind::Line,
            "radial" => GridKind::Radial { dim: self.dim },
            "plane" => GridKind::Plane,
            other => {
                return Err(CoreError::ScenarioConfig(format!(
                    "unknown grid kind `{other}` (expected line, radial or plane)"
                )))
            }
        };
        Grid::new(kind, self.spacing, self.extent)
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields, tag = "shape", rename_all = "kebab-case")]
pub enum ShapeSpec {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    HalfSpace {
        normal: Vec<f64>,
        offset: f64,
    },
    Cone {
        apex: Vec<f64>,
        axis: Vec<f64>,
        half_angle_deg: f64,
    },
    Box {
        min: Vec<f64>,
        max: Vec<f64>,
    },
}

pub fn to_indicator_set(dim: usize, shapes: &[ShapeSpec]) -> CoreResult<IndicatorSet> {
    let mut set = IndicatorSet::empty(dim);
    for shape in shapes {
        let piece = match shape {
            ShapeSpec::Ball { center, radius } => IndicatorSet::ball(center.clone(), *radius)?,
            ShapeSpec::HalfSpace { normal, offset } => {
                IndicatorSet::half_space(normal.clone(), *offset)?
            }
            ShapeSpec::Cone {
                apex,
                axis,
                half_angle_deg,
            } => IndicatorSet::cone(apex.clone(), axis.clone(), half_angle_deg.to_radians())?,
            ShapeSpec::Box { min, max } => IndicatorSet::axis_box(min.clone(), max.clone())?,
        };
        set = set.union_with(piece)?;
    }
    Ok(set)
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    /// "compact-pair" (both species on bounded supports) or "complement"
    /// (`v` fills the rest of space).
    #[serde(default = "ScenarioSection::default_kind")]
    pub kind: String,
    #[serde(default)]
    pub u_support: Vec<ShapeSpec>,
    #[serde(default)]
    pub v_support: Vec<ShapeSpec>,
}

impl ScenarioSection {
    fn default_kind() -> String {
        "compact-pair".into()
    }
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection {
            kind: "compact-pair".into(),
            u_support: vec![ShapeSpec::Ball {
                center: vec![0.0],
                radius: 5.0,
            }],
            v_support: Vec::new(),
        }
    }
}

impl ScenarioSection {
    pub fn to_scenario(&self, grid: &Grid) -> CoreResult<Scenario> {
        let dim = grid.point_dim();
        match self.kind.as_str() {
            "compact-pair" => Ok(Scenario::CompactPair {
                u_support: to_indicator_set(dim, &self.u_support)?,
                v_support: to_indicator_set(dim, &self.v_support)?,
            }),
            "complement" => {
                if !self.v_support.is_empty() {
                    return Err(CoreError::ScenarioConfig(
                        "complement scenarios derive v from u; drop v_support".into(),
                    ));
                }
                Ok(Scenario::Complement {
                    u_support: to_indicator_set(dim, &self.u_support)?,
                })
            }
            other => Err(CoreError::ScenarioConfig(format!(
                "unknown scenario kind `{other}` (expected compact-pair or complement)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FrontSection {
    #[serde(default = "FrontSection::default_l_xi")]
    pub l_xi: f64,
    #[serde(default = "FrontSection::default_n_points")]
    pub n_points: usize,
    #[serde(default = "FrontSection::default_tol")]
    pub tol: f64,
    /// Also solve and export the two single-species fronts.
    #[serde(default)]
    pub kpp: bool,
}

impl FrontSection {
    fn default_l_xi() -> f64 {
        60.0
    }
    fn default_n_points() -> usize {
        2401
    }
    fn default_tol() -> f64 {
        1e-10
    }
}

impl Default for FrontSection {
    fn default() -> Self {
        FrontSection {
            l_xi: 60.0,
            n_points: 2401,
            tol: 1e-10,
            kpp: false,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    #[serde(default = "SimulateSection::default_t_final")]
    pub t_final: f64,
    #[serde(default = "default_one")]
    pub snapshot_every: f64,
    /// Explicit time step; omitted means the largest monotone step.
    #[serde(default)]
    pub dt: Option<f64>,
}

impl SimulateSection {
    fn default_t_final() -> f64 {
        100.0
    }
}

impl Default for SimulateSection {
    fn default() -> Self {
        SimulateSection {
            t_final: 100.0,
            snapshot_every: 1.0,
            dt: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SpeedSection {
    /// "u" or "v".
    #[serde(default = "SpeedSection::default_field")]
    pub field: String,
    #[serde(default = "SpeedSection::default_level")]
    pub level: f64,
    /// "positive", "negative", or a unit vector for plane runs.
    #[serde(default = "SpeedSection::default_direction")]
    pub direction: DirectionSpec,
}

impl SpeedSection {
    fn default_field() -> String {
        "u".into()
    }
    fn default_level() -> f64 {
        0.5
    }
    fn default_direction() -> DirectionSpec {
        DirectionSpec::Named("positive".into())
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum DirectionSpec {
    Named(String),
    Vector(Vec<f64>),
}

impl Default for SpeedSection {
    fn default() -> Self {
        SpeedSection {
            field: "u".into(),
            level: 0.5,
            direction: DirectionSpec::Named("positive".into()),
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ZonesSection {
    /// "u-faster" (u outruns v, v dies globally) or
    /// "v-faster" (v outruns u, three zones).
    #[serde(default = "ZonesSection::default_case")]
    pub case: String,
    #[serde(default = "ZonesSection::default_tolerance")]
    pub tolerance: f64,
    /// Two-component front speed; solved from the parameters when omitted.
    pub c_uv: Option<f64>,
    /// Optional explicit zone speeds; sensible defaults are derived from
    /// the model speeds.
    #[serde(default)]
    pub inner_speed: Option<f64>,
    #[serde(default)]
    pub c1: Option<f64>,
    #[serde(default)]
    pub c2: Option<f64>,
    #[serde(default)]
    pub outer_speed: Option<f64>,
}

impl ZonesSection {
    fn default_case() -> String {
        "v-faster".into()
    }
    fn default_tolerance() -> f64 {
        0.05
    }
}

impl Default for ZonesSection {
    fn default() -> Self {
        ZonesSection {
            case: "v-faster".into(),
            tolerance: 0.05,
            c_uv: None,
            inner_speed: None,
            c1: None,
            c2: None,
            outer_speed: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    /// Direction sample size.
    #[serde(default = "GeometrySection::default_m")]
    pub m: usize,
    #[serde(default = "GeometrySection::default_threshold")]
    pub ratio_threshold: f64,
    #[serde(default = "default_one")]
    pub tau_base: f64,
    #[serde(default = "GeometrySection::default_doublings")]
    pub tau_doublings: usize,
    /// Front speed entering the directional speed and envelope.
    #[serde(default = "GeometrySection::default_c_uv")]
    pub c_uv: f64,
    /// Erosion radius for the covering check; skipped when absent.
    #[serde(default)]
    pub rho: Option<f64>,
    #[serde(default)]
    pub set: Vec<ShapeSpec>,
    /// Ambient dimension of the set.
    #[serde(default = "GridSection::default_dim")]
    pub dim: usize,
}

impl GeometrySection {
    fn default_m() -> usize {
        512
    }
    fn default_threshold() -> f64 {
        0.05
    }
    fn default_doublings() -> usize {
        16
    }
    fn default_c_uv() -> f64 {
        0.5
    }
}

impl Default for GeometrySection {
    fn default() -> Self {
        GeometrySection {
            m: 512,
            ratio_threshold: 0.05,
            tau_base: 1.0,
            tau_doublings: 16,
            c_uv: 0.5,
            rho: None,
            set: vec![ShapeSpec::Ball {
                center: vec![0.0, 0.0],
                radius: 5.0,
            }],
            dim: 2,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CertifySection {
    /// "sub" (lower barrier) or "super" (upper barrier).
    #[serde(default = "CertifySection::default_kind")]
    pub kind: String,
    /// Speed margin ε; defaults to half the front speed for sub barriers
    /// and 0.1 for super barriers.
    #[serde(default)]
    pub eps: Option<f64>,
    /// Ambient dimension the barrier lives in.
    #[serde(default = "GridSection::default_dim")]
    pub dim: usize,
    #[serde(default = "CertifySection::default_t_max")]
    pub t_max: f64,
    #[serde(default = "CertifySection::default_span")]
    pub x_span_factor: f64,
    /// Profile CSV from a previous front run; solved fresh when absent.
    #[serde(default)]
    pub profile: Option<String>,
}

impl CertifySection {
    fn default_kind() -> String {
        "sub".into()
    }
    fn default_t_max() -> f64 {
        50.0
    }
    fn default_span() -> f64 {
        3.0
    }
}

impl Default for CertifySection {
    fn default() -> Self {
        CertifySection {
            kind: "sub".into(),
            eps: None,
            dim: 2,
            t_max: 50.0,
            x_span_factor: 3.0,
            profile: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusSection {
    #[serde(default = "RadiusSection::default_rho_max")]
    pub rho_max: f64,
    #[serde(default = "RadiusSection::default_n_bisect")]
    pub n_bisect: usize,
    #[serde(default = "RadiusSection::default_t_probe")]
    pub t_probe: f64,
    #[serde(default = "RadiusSection::default_success")]
    pub success_level: f64,
}

impl RadiusSection {
    fn default_rho_max() -> f64 {
        12.0
    }
    fn default_n_bisect() -> usize {
        10
    }
    fn default_t_probe() -> f64 {
        30.0
    }
    fn default_success() -> f64 {
        0.9
    }
}

impl Default for RadiusSection {
    fn default() -> Self {
        RadiusSection {
            rho_max: 12.0,
            n_bisect: 10,
            t_probe: 30.0,
            success_level: 0.9,
        }
    }
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "OutputSection::default_directory")]
    pub directory: String,
    /// Worker-thread cap; 0 keeps the library default.
    #[serde(default)]
    pub threads: usize,
}

impl OutputSection {
    fn default_directory() -> String {
        "out".into()
    }
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            directory: "out".into(),
            threads: 0,
        }
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = ConfigFile::parse("[params]\nd = 1.0\nr = 1.0\na = 2.0\nb = 2.0\n").unwrap();
        assert_eq!(cfg.front.l_xi, 60.0);
        assert_eq!(cfg.front.n_points, 2401);
        assert_eq!(cfg.output.directory, "out");
        assert!(cfg.params.to_model().is_ok());
    }

    #[test]
    fn unknown_key_is_rejected_by_name() {
        let err = ConfigFile::parse("[params]\ndiffusionn = 1.0\n").unwrap_err();
        assert!(err.contains("diffusionn"), "{err}");
    }

    #[test]
    fn shapes_deserialize() {
        let cfg = ConfigFile::parse(
            r#"
[geometry]
dim = 2
c_uv = 0.7

[[geometry.set]]
shape = "cone"
apex = [0.0, 0.0]
axis = [1.0, 0.0]
half_angle_deg = 30.0
"#,
        )
        .unwrap();
        let set = to_indicator_set(2, &cfg.geometry.set).unwrap();
        assert!(set.contains(&[5.0, 0.0]));
        assert!(!set.contains(&[-5.0, 0.0]));
    }

    #[test]
    fn empty_config_is_fully_defaulted() {
        let cfg = ConfigFile::parse("").unwrap();
        let grid = cfg.grid.to_grid().unwrap();
        assert_eq!(grid.spacing, 0.2);
        let scenario = cfg.scenario.to_scenario(&grid).unwrap();
        assert!(matches!(scenario, Scenario::CompactPair { .. }));
    }
}
