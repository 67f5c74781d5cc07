//! Second-order difference plot (SODP) and its radius-based indicators.
//!
//! Each point is built from three consecutive intervals `a, b, c` as
//! `(b - a, c - b)`. The quadrant of a point tells whether the intervals
//! rose monotonically (I), fell monotonically (III), or changed direction
//! (II, IV). Points with a zero coordinate sit on an axis and belong to no
//! quadrant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::MIN_SERIES_LEN;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    I,
    II,
    III,
    IV,
    OnAxis,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::I, Quadrant::II, Quadrant::III, Quadrant::IV];

    pub fn of(x: f64, y: f64) -> Quadrant {
        if x > 0.0 && y > 0.0 {
            Quadrant::I
        } else if x < 0.0 && y > 0.0 {
            Quadrant::II
        } else if x < 0.0 && y < 0.0 {
            Quadrant::III
        } else if x > 0.0 && y < 0.0 {
            Quadrant::IV
        } else {
            Quadrant::OnAxis
        }
    }

    /// Zero-based quadrant index (I → 0 … IV → 3), `None` on an axis.
    pub fn index(self) -> Option<usize> {
        match self {
            Quadrant::I => Some(0),
            Quadrant::II => Some(1),
            Quadrant::III => Some(2),
            Quadrant::IV => Some(3),
            Quadrant::OnAxis => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Quadrant::I => "I",
            Quadrant::II => "II",
            Quadrant::III => "III",
            Quadrant::IV => "IV",
            Quadrant::OnAxis => "axis",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SodpPoint {
    pub x: f64,
    pub y: f64,
    /// Position of the first of the three source intervals.
    pub index: usize,
    pub quadrant: Quadrant,
}

impl SodpPoint {
    pub fn new(index: usize, x: f64, y: f64) -> Self {
        Self {
            x,
            y,
            index,
            quadrant: Quadrant::of(x, y),
        }
    }

    /// Euclidean distance from the origin, `sqrt(x² + y²)`.
    pub fn radius(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// Builds the `n - 2` difference-plot points of a series of `n` intervals.
pub fn second_order_diff(intervals: &[f64]) -> Result<Vec<SodpPoint>> {
    if intervals.len() < MIN_SERIES_LEN {
        return Err(Error::TooShort {
            len: intervals.len(),
        });
    }
    Ok(intervals
        .windows(3)
        .enumerate()
        .map(|(i, w)| SodpPoint::new(i, w[1] - w[0], w[2] - w[1]))
        .collect())
}

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r))
    }
}

fn check_inputs(points: &[SodpPoint], r: f64) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    check_radius(r)
}

/// Point tallies relative to a radius; CTM and CCTM are ratios of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RadiusCounts {
    pub total: usize,
    /// Points strictly inside the radius.
    pub inside: usize,
    /// Inside points per quadrant, I..IV.
    pub quadrant: [usize; 4],
    /// Inside points lying on an axis.
    pub on_axis: usize,
}

pub fn radius_counts(points: &[SodpPoint], r: f64) -> Result<RadiusCounts> {
    check_inputs(points, r)?;
    let mut counts = RadiusCounts {
        total: points.len(),
        ..RadiusCounts::default()
    };
    for p in points.iter().filter(|p| p.radius() < r) {
        counts.inside += 1;
        match p.quadrant.index() {
            Some(k) => counts.quadrant[k] += 1,
            None => counts.on_axis += 1,
        }
    }
    Ok(counts)
}

/// Central tendency measure: fraction of points strictly inside radius `r`.
pub fn ctm(points: &[SodpPoint], r: f64) -> Result<f64> {
    let c = radius_counts(points, r)?;
    Ok(c.inside as f64 / c.total as f64)
}

/// Quadrant-wise CTM. The denominator is the total point count, so on-axis
/// points lower every component without being counted in any of them.
pub fn cctm(points: &[SodpPoint], r: f64) -> Result<[f64; 4]> {
    let c = radius_counts(points, r)?;
    let total = c.total as f64;
    Ok(c.quadrant.map(|k| k as f64 / total))
}

/// Mean distance from the origin over the points strictly inside radius `r`.
pub fn mean_distance_d(points: &[SodpPoint], r: f64) -> Result<f64> {
    check_inputs(points, r)?;
    let (sum, count) = points
        .iter()
        .map(SodpPoint::radius)
        .filter(|&d| d < r)
        .fold((0.0, 0usize), |(s, c), d| (s + d, c + 1));
    if count == 0 {
        return Err(Error::NoPointInRadius { r });
    }
    Ok(sum / count as f64)
}
