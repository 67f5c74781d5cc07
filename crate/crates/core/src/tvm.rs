//! Temporal variation measure.
//!
//! Every difference-plot point is lifted to 3-D with
//!
//! ```text
//! d_co = |y| - |x|
//! le   = sqrt(x² + y²)
//! l    = 1 / (1 + exp(-le / mean(le)))
//! z    = d_co · l
//! ```
//!
//! The bounding cuboid of the lifted points is cut into `nx·ny·nz` equal
//! subspaces and the temporal variation entropy is
//!
//! ```text
//! E_TV = Σ_i  n_i · S_i · p_i · (-ln p_i),   p_i = |n_i - M/N| / M
//! ```
//!
//! where `n_i` is the point count of cell `i`, `S_i` the sum of `|z|` over
//! those points, `M` the number of points and `N` the number of cells.
//! Terms with `p_i = 0` contribute nothing.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sodp::{second_order_diff, Quadrant, SodpPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TvmPoint {
    pub base: SodpPoint,
    pub d_co: f64,
    pub le: f64,
    pub l: f64,
    pub z: f64,
}

impl TvmPoint {
    pub fn coords(&self) -> [f64; 3] {
        [self.base.x, self.base.y, self.z]
    }

    pub fn quadrant(&self) -> Quadrant {
        self.base.quadrant
    }
}

/// Lifts difference-plot points to 3-D. `mean(le)` is taken over the whole
/// input; if it is zero (every point at the origin) all `l` are 0.5.
pub fn build_tvm_points(points: &[SodpPoint]) -> Result<Vec<TvmPoint>> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let les: Vec<f64> = points.iter().map(SodpPoint::radius).collect();
    let mean_le = les.iter().sum::<f64>() / les.len() as f64;

    Ok(points
        .iter()
        .zip(les)
        .map(|(p, le)| {
            let d_co = p.y.abs() - p.x.abs();
            let l = if mean_le > 0.0 {
                1.0 / (1.0 + (-le / mean_le).exp())
            } else {
                0.5
            };
            TvmPoint {
                base: *p,
                d_co,
                le,
                l,
                z: d_co * l,
            }
        })
        .collect())
}

/// Requested number of equal-width bins along x, y and z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisions {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl Divisions {
    pub fn new(nx: usize, ny: usize, nz: usize) -> Result<Self> {
        if nx == 0 || ny == 0 || nz == 0 {
            return Err(Error::InvalidDivisions(format!(
                "{nx},{ny},{nz}: every axis needs at least one bin"
            )));
        }
        Ok(Self { nx, ny, nz })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(n, n, n)
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }
}

impl Default for Divisions {
    fn default() -> Self {
        Self {
            nx: 10,
            ny: 10,
            nz: 10,
        }
    }
}

impl fmt::Display for Divisions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.nx, self.ny, self.nz)
    }
}

impl FromStr for Divisions {
    type Err = Error;

    /// Parses `NX,NY,NZ`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidDivisions(format!("{s:?}: expected NX,NY,NZ"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut n = [0usize; 3];
        for (slot, part) in n.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| bad())?;
        }
        Self::new(n[0], n[1], n[2])
    }
}

/// Closed extent of one axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisBounds {
    pub min: f64,
    pub max: f64,
}

impl AxisBounds {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(
            AxisBounds {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            },
            |b, v| AxisBounds {
                min: b.min.min(v),
                max: b.max.max(v),
            },
        )
    }

    pub fn extent(&self) -> f64 {
        self.max - self.min
    }

    /// Bin of `v` among `bins` half-open bins; the last bin is closed on top.
    fn bin(&self, v: f64, bins: usize) -> usize {
        if bins == 1 {
            return 0;
        }
        // multiply before dividing so integer-valued data lands exactly on
        // bin edges
        let pos = ((v - self.min) * bins as f64 / self.extent()).floor();
        if pos <= 0.0 {
            0
        } else {
            (pos as usize).min(bins - 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Cell {
    pub count: usize,
    pub abs_z_sum: f64,
}

/// Bounding cuboid of a 3-D point set cut into equal-width subspaces.
///
/// Only occupied cells are stored; every other cell has count 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceGrid {
    bounds: [AxisBounds; 3],
    requested: Divisions,
    divisions: [usize; 3],
    cells: BTreeMap<[usize; 3], Cell>,
    total_points: usize,
}

impl SubspaceGrid {
    /// Per-axis bounds in x, y, z order.
    pub fn bounds(&self) -> &[AxisBounds; 3] {
        &self.bounds
    }

    pub fn requested_divisions(&self) -> Divisions {
        self.requested
    }

    /// Effective bins per axis. A zero-extent axis has a single bin whatever
    /// was requested.
    pub fn divisions(&self) -> [usize; 3] {
        self.divisions
    }

    /// Total cell count `N`, empty cells included.
    pub fn cell_count(&self) -> usize {
        self.divisions.iter().product()
    }

    pub fn total_points(&self) -> usize {
        self.total_points
    }

    pub fn cell(&self, ix: usize, iy: usize, iz: usize) -> Cell {
        self.cells.get(&[ix, iy, iz]).copied().unwrap_or_default()
    }

    /// Occupied cells in lexicographic `(ix, iy, iz)` order.
    pub fn occupied(&self) -> impl Iterator<Item = (&[usize; 3], &Cell)> {
        self.cells.iter()
    }

    /// Mean points per cell, `M / N`.
    pub fn mean_occupancy(&self) -> f64 {
        self.total_points as f64 / self.cell_count() as f64
    }
}

pub fn build_grid(points: &[TvmPoint], divisions: Divisions) -> Result<SubspaceGrid> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let bounds = [0, 1, 2].map(|axis| AxisBounds::of(points.iter().map(|p| p.coords()[axis])));
    if bounds
        .iter()
        .any(|b| !b.min.is_finite() || !b.max.is_finite())
    {
        return Err(Error::InvalidDivisions(
            "point coordinates must be finite".to_string(),
        ));
    }
    let requested = divisions.as_array();
    let mut effective = [1usize; 3];
    for axis in 0..3 {
        if bounds[axis].extent() > 0.0 {
            effective[axis] = requested[axis];
        }
    }
    effective
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or_else(|| Error::InvalidDivisions(format!("{divisions}: too many cells")))?;

    let mut members: Vec<([usize; 3], f64)> = points
        .iter()
        .map(|p| {
            let c = p.coords();
            let key = [0, 1, 2].map(|axis| bounds[axis].bin(c[axis], effective[axis]));
            (key, p.z.abs())
        })
        .collect();
    // sorting makes each cell's |z| sum independent of input order
    members.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut cells: BTreeMap<[usize; 3], Cell> = BTreeMap::new();
    for (key, abs_z) in members {
        let cell = cells.entry(key).or_default();
        cell.count += 1;
        cell.abs_z_sum += abs_z;
    }

    Ok(SubspaceGrid {
        bounds,
        requested: divisions,
        divisions: effective,
        cells,
        total_points: points.len(),
    })
}

pub fn temporal_variation_entropy(grid: &SubspaceGrid) -> f64 {
    let total = grid.total_points() as f64;
    if total == 0.0 {
        return 0.0;
    }
    let mean = grid.mean_occupancy();
    // empty cells carry a zero count weight and are skipped
    grid.occupied()
        .map(|(_, cell)| {
            let n = cell.count as f64;
            let p = (n - mean).abs() / total;
            if p > 0.0 {
                n * cell.abs_z_sum * p * -p.ln()
            } else {
                0.0
            }
        })
        .sum()
}

/// E_TV of each quadrant's points on a grid fitted to that quadrant alone.
/// `l` keeps the global scaling it was built with; an empty quadrant scores 0.
pub fn quadrant_etv(points: &[TvmPoint], divisions: Divisions) -> Result<[f64; 4]> {
    if points.is_empty() {
        return Err(Error::EmptyPoints);
    }
    let mut out = [0.0; 4];
    for (slot, quadrant) in out.iter_mut().zip(Quadrant::ALL) {
        let subset: Vec<TvmPoint> = points
            .iter()
            .filter(|p| p.quadrant() == quadrant)
            .copied()
            .collect();
        if !subset.is_empty() {
            *slot = temporal_variation_entropy(&build_grid(&subset, divisions)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TvmAnalysis {
    pub points: Vec<TvmPoint>,
    pub etv_global: f64,
    pub etv_quadrant: [f64; 4],
}

/// Series → difference plot → 3-D points → grid → global and quadrant E_TV.
pub fn tvm_pipeline(intervals: &[f64], divisions: Divisions) -> Result<TvmAnalysis> {
    let sodp = second_order_diff(intervals)?;
    let points = build_tvm_points(&sodp)?;
    let etv_global = temporal_variation_entropy(&build_grid(&points, divisions)?);
    let etv_quadrant = quadrant_etv(&points, divisions)?;
    Ok(TvmAnalysis {
        points,
        etv_global,
        etv_quadrant,
    })
}
