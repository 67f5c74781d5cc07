//! Per-recording indicator reports, radius sweeps and per-dataset summaries.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{DatasetGroup, RRSeries};
use crate::sodp::{self, SodpPoint};
use crate::tvm::{self, Divisions};

pub const DEFAULT_R_CTM: f64 = 3.0;
pub const DEFAULT_R_D: f64 = 6.0;

/// Radii and grid shape used to compute an [`IndicatorReport`]. CTM and
/// CCTM share `r_ctm`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorParams {
    pub r_ctm: f64,
    pub r_d: f64,
    pub divisions: Divisions,
}

impl Default for IndicatorParams {
    fn default() -> Self {
        Self {
            r_ctm: DEFAULT_R_CTM,
            r_d: DEFAULT_R_D,
            divisions: Divisions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorReport {
    pub source_id: String,
    pub ctm: f64,
    pub cctm: [f64; 4],
    /// `None` when no point lies inside `r_d`.
    pub d: Option<f64>,
    pub etv_global: f64,
    pub etv_quadrant: [f64; 4],
    pub params: IndicatorParams,
}

impl IndicatorReport {
    pub fn value(&self, indicator: Indicator) -> Option<f64> {
        use Indicator::*;
        match indicator {
            Ctm => Some(self.ctm),
            D => self.d,
            Cctm1 => Some(self.cctm[0]),
            Cctm2 => Some(self.cctm[1]),
            Cctm3 => Some(self.cctm[2]),
            Cctm4 => Some(self.cctm[3]),
            Etv => Some(self.etv_global),
            Etv1 => Some(self.etv_quadrant[0]),
            Etv2 => Some(self.etv_quadrant[1]),
            Etv3 => Some(self.etv_quadrant[2]),
            Etv4 => Some(self.etv_quadrant[3]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Indicator {
    Ctm,
    D,
    Cctm1,
    Cctm2,
    Cctm3,
    Cctm4,
    Etv,
    Etv1,
    Etv2,
    Etv3,
    Etv4,
}

impl Indicator {
    pub const ALL: [Indicator; 11] = [
        Indicator::Ctm,
        Indicator::D,
        Indicator::Cctm1,
        Indicator::Cctm2,
        Indicator::Cctm3,
        Indicator::Cctm4,
        Indicator::Etv,
        Indicator::Etv1,
        Indicator::Etv2,
        Indicator::Etv3,
        Indicator::Etv4,
    ];

    pub fn name(self) -> &'static str {
        use Indicator::*;
        match self {
            Ctm => "ctm",
            D => "d",
            Cctm1 => "cctm1",
            Cctm2 => "cctm2",
            Cctm3 => "cctm3",
            Cctm4 => "cctm4",
            Etv => "etv",
            Etv1 => "etv1",
            Etv2 => "etv2",
            Etv3 => "etv3",
            Etv4 => "etv4",
        }
    }

    /// True for the indicators that depend on a radius and can be swept.
    pub fn is_radius_based(self) -> bool {
        !matches!(
            self,
            Indicator::Etv | Indicator::Etv1 | Indicator::Etv2 | Indicator::Etv3 | Indicator::Etv4
        )
    }

    /// Evaluates a radius-based indicator on precomputed points. `Ok(None)`
    /// means D had no point inside `r`.
    pub fn at_radius(self, points: &[SodpPoint], r: f64) -> Result<Option<f64>> {
        use Indicator::*;
        let quadrant = |k: usize| sodp::cctm(points, r).map(|c| Some(c[k]));
        match self {
            Ctm => sodp::ctm(points, r).map(Some),
            D => match sodp::mean_distance_d(points, r) {
                Ok(v) => Ok(Some(v)),
                Err(Error::NoPointInRadius { .. }) => Ok(None),
                Err(e) => Err(e),
            },
            Cctm1 => quadrant(0),
            Cctm2 => quadrant(1),
            Cctm3 => quadrant(2),
            Cctm4 => quadrant(3),
            Etv | Etv1 | Etv2 | Etv3 | Etv4 => Err(Error::NotRadiusBased(self.name())),
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Indicator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let lower = s.to_ascii_lowercase();
        Indicator::ALL
            .into_iter()
            .find(|i| i.name() == lower)
            .ok_or_else(|| {
                let names: Vec<_> = Indicator::ALL.iter().map(|i| i.name()).collect();
                format!(
                    "unknown indicator {s:?}, expected one of {}",
                    names.join(", ")
                )
            })
    }
}

/// Computes every indicator for one recording.
pub fn report(series: &RRSeries, params: &IndicatorParams) -> Result<IndicatorReport> {
    let points = sodp::second_order_diff(series.intervals())?;
    let ctm = sodp::ctm(&points, params.r_ctm)?;
    let cctm = sodp::cctm(&points, params.r_ctm)?;
    let d = match sodp::mean_distance_d(&points, params.r_d) {
        Ok(v) => Some(v),
        Err(Error::NoPointInRadius { .. }) => None,
        Err(e) => return Err(e),
    };
    let lifted = tvm::build_tvm_points(&points)?;
    let etv_global = tvm::temporal_variation_entropy(&tvm::build_grid(&lifted, params.divisions)?);
    let etv_quadrant = tvm::quadrant_etv(&lifted, params.divisions)?;
    Ok(IndicatorReport {
        source_id: series.source_id().to_string(),
        ctm,
        cctm,
        d,
        etv_global,
        etv_quadrant,
        params: *params,
    })
}

/// Reports for every recording of a group, in recording order.
pub fn group_reports(
    group: &DatasetGroup,
    params: &IndicatorParams,
) -> Result<Vec<IndicatorReport>> {
    group
        .recordings
        .par_iter()
        .map(|s| report(s, params))
        .collect()
}

/// Mean of one radius-based indicator per dataset and radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub indicator: Indicator,
    pub r_values: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub dataset: String,
    /// Aligned with `r_values`; `None` where no recording produced a value.
    pub values: Vec<Option<f64>>,
}

/// Builds an ascending radius grid `start, start+step, …` up to `stop`
/// (included when it lies on the grid).
pub fn radius_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && start > 0.0) {
        return Err(Error::InvalidRadius(start));
    }
    if !(step.is_finite() && step > 0.0) || !stop.is_finite() || stop < start {
        return Err(Error::InvalidRadiusGrid(format!(
            "{start}:{stop}:{step} needs step > 0 and stop >= start"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

pub fn sweep_r(
    groups: &[DatasetGroup],
    indicator: Indicator,
    r_values: &[f64],
) -> Result<SweepTable> {
    if groups.is_empty() {
        return Err(Error::NoGroups);
    }
    if !indicator.is_radius_based() {
        return Err(Error::NotRadiusBased(indicator.name()));
    }
    if r_values.is_empty() {
        return Err(Error::InvalidRadiusGrid("no radii".to_string()));
    }
    for (i, &r) in r_values.iter().enumerate() {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRadius(r));
        }
        if i > 0 && r <= r_values[i - 1] {
            return Err(Error::InvalidRadiusGrid(
                "radii must be strictly ascending".to_string(),
            ));
        }
    }

    let mut rows = Vec::with_capacity(groups.len());
    for group in groups {
        if group.recordings.is_empty() {
            return Err(Error::EmptyGroup(group.name.clone()));
        }
        let per_recording: Vec<Vec<Option<f64>>> = group
            .recordings
            .par_iter()
            .map(|s| {
                let points = sodp::second_order_diff(s.intervals())?;
                r_values
                    .iter()
                    .map(|&r| indicator.at_radius(&points, r))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let values = (0..r_values.len())
            .map(|j| mean(per_recording.iter().filter_map(|rec| rec[j])))
            .collect();
        rows.push(SweepRow {
            dataset: group.name.clone(),
            values,
        });
    }
    rows.sort_by(|a, b| a.dataset.cmp(&b.dataset));
    Ok(SweepTable {
        indicator,
        r_values: r_values.to_vec(),
        rows,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Sample statistics of one indicator over a dataset, with the raw values
/// kept for boxplots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n − 1); 0 for a single value.
    pub std: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub values: Vec<f64>,
}

/// Linear-interpolation quantile of sorted data (`h = (n − 1)·p`).
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n >= 2 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(Summary {
        n,
        mean,
        std,
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[n - 1],
        values: values.to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorSummary {
    pub indicator: Indicator,
    /// `None` when no recording produced a value (possible for D only).
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub dataset: String,
    pub params: IndicatorParams,
    pub indicators: Vec<IndicatorSummary>,
}

/// Summarizes already computed reports of one dataset.
pub fn aggregate_reports(
    dataset: &str,
    params: &IndicatorParams,
    reports: &[IndicatorReport],
) -> Result<GroupSummary> {
    if reports.is_empty() {
        return Err(Error::EmptyGroup(dataset.to_string()));
    }
    let indicators = Indicator::ALL
        .into_iter()
        .map(|indicator| {
            let values: Vec<f64> = reports.iter().filter_map(|r| r.value(indicator)).collect();
            IndicatorSummary {
                indicator,
                summary: summarize(&values),
            }
        })
        .collect();
    Ok(GroupSummary {
        dataset: dataset.to_string(),
        params: *params,
        indicators,
    })
}

pub fn aggregate(group: &DatasetGroup, params: &IndicatorParams) -> Result<GroupSummary> {
    if group.recordings.is_empty() {
        return Err(Error::EmptyGroup(group.name.clone()));
    }
    let reports = group_reports(group, params)?;
    aggregate_reports(&group.name, params, &reports)
}
