use serde::{Deserialize, Serialize};

use crate::math::{abs, round};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    /// A window [x_min, x_max] of the real line.
    Line,
    /// (0, ∞) truncated to [r_min, r_max] with r_min > 0.
    Radial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Dirichlet,
}

/// Uniform grid x_i = x_min + i·h, i = 0..n_points.
///
/// Both end nodes carry the Dirichlet condition ψ = 0, so the unknowns are the
/// `n_points − 2` interior nodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
    pub kind: GridKind,
    pub boundary: Boundary,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize, kind: GridKind) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite"));
        }
        if !(x_min < x_max) {
            return Err(Error::InvalidGrid("x_min must be below x_max"));
        }
        if n_points < 3 {
            return Err(Error::InvalidGrid("need at least 3 points"));
        }
        if kind == GridKind::Radial && !(x_min > 0.0) {
            return Err(Error::InvalidGrid("radial grids need r_min > 0"));
        }
        Ok(Grid1D {
            x_min,
            x_max,
            n_points,
            kind,
            boundary: Boundary::Dirichlet,
        })
    }

    /// Grid with spacing as close to `h` as the interval allows.
    pub fn with_spacing(x_min: f64, x_max: f64, h: f64, kind: GridKind) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid("spacing must be positive"));
        }
        let cells = round((x_max - x_min) / h);
        if !(cells >= 2.0) || cells > 1e9 {
            return Err(Error::InvalidGrid("spacing incompatible with the interval"));
        }
        Self::new(x_min, x_max, cells as usize + 1, kind)
    }

    pub fn line(x_min: f64, x_max: f64, h: f64) -> Result<Self> {
        Self::with_spacing(x_min, x_max, h, GridKind::Line)
    }

    pub fn radial(r_min: f64, r_max: f64, h: f64) -> Result<Self> {
        Self::with_spacing(r_min, r_max, h, GridKind::Radial)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn interior_len(&self) -> usize {
        self.n_points - 2
    }

    /// Coordinates of the interior (unknown) nodes.
    pub fn interior_points(&self) -> impl Iterator<Item = f64> + '_ {
        (1..self.n_points - 1).map(move |i| self.point(i))
    }

    pub fn span(&self) -> f64 {
        self.x_max - self.x_min
    }

    /// The region counted by the inner-mass diagnostic: the middle half of a
    /// line window, or the half adjacent to r_min on a radial grid.
    pub fn inner_half(&self) -> (f64, f64) {
        match self.kind {
            GridKind::Line => {
                let c = 0.5 * (self.x_min + self.x_max);
                let q = 0.25 * self.span();
                (c - q, c + q)
            }
            GridKind::Radial => (self.x_min, self.x_min + 0.5 * self.span()),
        }
    }

    /// Same spacing, twice the extent: symmetric about the centre on a line,
    /// extended outwards on a radial grid.
    pub fn doubled(&self) -> Self {
        let (x_min, x_max) = match self.kind {
            GridKind::Line => {
                let c = 0.5 * (self.x_min + self.x_max);
                (c - self.span(), c + self.span())
            }
            GridKind::Radial => (self.x_min, self.x_min + 2.0 * self.span()),
        };
        Grid1D {
            x_min,
            x_max,
            n_points: 2 * (self.n_points - 1) + 1,
            kind: self.kind,
            boundary: self.boundary,
        }
    }

    pub(crate) fn same_spacing(&self, other: &Grid1D) -> bool {
        let (a, b) = (self.spacing(), other.spacing());
        abs(a - b) <= 1e-12 * a.max(b)
    }
}
