//! Grid descriptions for the three supported domain reductions.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// One-dimensional line, x in [-extent, extent].
    Line,
    /// Radially symmetric reduction of `dim`-dimensional space,
    /// r in [0, extent]. `dim = 1` degenerates to half-line symmetry and is
    /// used to validate the radial operator against the line kind.
    Radial { dim: usize },
    /// Full two-dimensional square, both axes in [-extent, extent].
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub kind: GridKind,
    pub spacing: f64,
    /// Half-width for line/plane grids, radius for radial grids.
    pub extent: f64,
}

impl Grid {
    pub fn new(kind: GridKind, spacing: f64, extent: f64) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::NonPositiveParameter {
                name: "spacing",
                value: spacing,
            });
        }
        if !(extent > 0.0) {
            return Err(Error::NonPositiveParameter {
                name: "extent",
                value: extent,
            });
        }
        if let GridKind::Radial { dim } = kind {
            if dim == 0 {
                return Err(Error::OutOfRange {
                    name: "dim",
                    value: 0.0,
                    range: ">= 1".into(),
                });
            }
        }
        let cells = extent / spacing;
        if (cells - cells.round()).abs() > 1e-9 {
            return Err(Error::ScenarioConfig(format!(
                "spacing {spacing} does not divide extent {extent}"
            )));
        }
        Ok(Grid {
            kind,
            spacing,
            extent,
        })
    }

    /// Cells from the origin to the extent along one axis.
    fn half_cells(&self) -> usize {
        (self.extent / self.spacing).round() as usize
    }

    /// Nodes along one axis.
    pub fn nodes_per_axis(&self) -> usize {
        match self.kind {
            GridKind::Line | GridKind::Plane => 2 * self.half_cells() + 1,
            GridKind::Radial { .. } => self.half_cells() + 1,
        }
    }

    /// Total number of nodes.
    pub fn len(&self) -> usize {
        match self.kind {
            GridKind::Plane => self.nodes_per_axis() * self.nodes_per_axis(),
            _ => self.nodes_per_axis(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of node `i` along one axis.
    pub fn axis_coord(&self, i: usize) -> f64 {
        match self.kind {
            GridKind::Line | GridKind::Plane => -self.extent + i as f64 * self.spacing,
            GridKind::Radial { .. } => i as f64 * self.spacing,
        }
    }

    /// Spatial dimension of the points handed to set queries.
    pub fn point_dim(&self) -> usize {
        match self.kind {
            GridKind::Line => 1,
            GridKind::Radial { dim } => dim,
            GridKind::Plane => 2,
        }
    }

    /// Sampling point of node `idx` in the coordinates of the underlying
    /// space. Radially symmetric grids sample along the positive first axis,
    /// so sets used with them are read through their restriction to that
    /// ray.
    pub fn point(&self, idx: usize) -> Vec<f64> {
        match self.kind {
            GridKind::Line => vec![self.axis_coord(idx)],
            GridKind::Radial { dim } => {
                let mut p = vec![0.0; dim];
                p[0] = self.axis_coord(idx);
                p
            }
            GridKind::Plane => {
                let n = self.nodes_per_axis();
                vec![self.axis_coord(idx % n), self.axis_coord(idx / n)]
            }
        }
    }

    /// Distance from node `idx` to the outer boundary.
    pub fn boundary_distance(&self, idx: usize) -> f64 {
        match self.kind {
            GridKind::Line => self.extent - self.axis_coord(idx).abs(),
            GridKind::Radial { .. } => self.extent - self.axis_coord(idx),
            GridKind::Plane => {
                let n = self.nodes_per_axis();
                let dx = self.extent - self.axis_coord(idx % n).abs();
                let dy = self.extent - self.axis_coord(idx / n).abs();
                dx.min(dy)
            }
        }
    }

    /// Distance of node `idx` from the origin.
    pub fn radius(&self, idx: usize) -> f64 {
        match self.kind {
            GridKind::Line => self.axis_coord(idx).abs(),
            GridKind::Radial { .. } => self.axis_coord(idx),
            GridKind::Plane => {
                let n = self.nodes_per_axis();
                let x = self.axis_coord(idx % n);
                let y = self.axis_coord(idx / n);
                (x * x + y * y).sqrt()
            }
        }
    }

    /// Stencil dimension factor entering the stability bound.
    pub fn dim_factor(&self) -> f64 {
        match self.kind {
            GridKind::Line => 1.0,
            GridKind::Radial { dim } => dim as f64,
            GridKind::Plane => 2.0,
        }
    }
}
