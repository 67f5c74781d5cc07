//! CSV and JSON export of points, reports, sweeps, summaries and
//! classification results.
//!
//! Every number is written with 9 significant digits so that repeated runs
//! produce byte-identical files. JSON carries the same rounded values as
//! the CSV.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analysis::{GroupSummary, IndicatorReport, SweepTable};
use crate::sodp::SodpPoint;
use crate::tvm::TvmPoint;

pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}, expected csv or json")),
        }
    }
}

/// Formats like C's `%.9g`: fixed notation for exponents in [-5, 9),
/// scientific otherwise, trailing zeros removed.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim_fraction(mantissa.to_string()), exp)
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// The value the formatted text denotes, for JSON output.
pub fn round_sig(v: f64) -> f64 {
    fmt_sig(v).parse().unwrap_or(v)
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing memory writer")).expect("csv is utf-8")
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub const SODP_HEADER: [&str; 4] = ["index", "x", "y", "quadrant"];

#[derive(Serialize)]
struct SodpRow {
    index: usize,
    x: f64,
    y: f64,
    quadrant: &'static str,
}

pub fn sodp_points(points: &[SodpPoint], format: Format) -> String {
    match format {
        Format::Csv => csv_table(
            &SODP_HEADER,
            points.iter().map(|p| {
                vec![
                    p.index.to_string(),
                    fmt_sig(p.x),
                    fmt_sig(p.y),
                    p.quadrant.label().to_string(),
                ]
            }),
        ),
        Format::Json => json(
            &points
                .iter()
                .map(|p| SodpRow {
                    index: p.index,
                    x: round_sig(p.x),
                    y: round_sig(p.y),
                    quadrant: p.quadrant.label(),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

pub const TVM_HEADER: [&str; 8] = ["index", "x", "y", "d_co", "le", "l", "z", "quadrant"];

#[derive(Serialize)]
struct TvmRow {
    index: usize,
    x: f64,
    y: f64,
    d_co: f64,
    le: f64,
    l: f64,
    z: f64,
    quadrant: &'static str,
}

pub fn tvm_points(points: &[TvmPoint], format: Format) -> String {
    match format {
        Format::Csv => csv_table(
            &TVM_HEADER,
            points.iter().map(|p| {
                vec![
                    p.base.index.to_string(),
                    fmt_sig(p.base.x),
                    fmt_sig(p.base.y),
                    fmt_sig(p.d_co),
                    fmt_sig(p.le),
                    fmt_sig(p.l),
                    fmt_sig(p.z),
                    p.base.quadrant.label().to_string(),
                ]
            }),
        ),
        Format::Json => json(
            &points
                .iter()
                .map(|p| TvmRow {
                    index: p.base.index,
                    x: round_sig(p.base.x),
                    y: round_sig(p.base.y),
                    d_co: round_sig(p.d_co),
                    le: round_sig(p.le),
                    l: round_sig(p.l),
                    z: round_sig(p.z),
                    quadrant: p.base.quadrant.label(),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

pub const REPORT_HEADER: [&str; 18] = [
    "dataset",
    "source_id",
    "ctm",
    "cctm1",
    "cctm2",
    "cctm3",
    "cctm4",
    "d",
    "etv",
    "etv1",
    "etv2",
    "etv3",
    "etv4",
    "r_ctm",
    "r_d",
    "nx",
    "ny",
    "nz",
];

#[derive(Serialize)]
struct ReportRow<'a> {
    dataset: &'a str,
    source_id: &'a str,
    ctm: f64,
    cctm1: f64,
    cctm2: f64,
    cctm3: f64,
    cctm4: f64,
    d: Option<f64>,
    etv: f64,
    etv1: f64,
    etv2: f64,
    etv3: f64,
    etv4: f64,
    r_ctm: f64,
    r_d: f64,
    nx: usize,
    ny: usize,
    nz: usize,
}

/// One row per `(dataset, report)` pair, in the order given.
pub fn reports(rows: &[(String, IndicatorReport)], format: Format) -> String {
    match format {
        Format::Csv => csv_table(
            &REPORT_HEADER,
            rows.iter().map(|(dataset, r)| {
                let mut row = vec![dataset.clone(), r.source_id.clone(), fmt_sig(r.ctm)];
                row.extend(r.cctm.iter().map(|&v| fmt_sig(v)));
                row.push(opt(r.d));
                row.push(fmt_sig(r.etv_global));
                row.extend(r.etv_quadrant.iter().map(|&v| fmt_sig(v)));
                row.push(fmt_sig(r.params.r_ctm));
                row.push(fmt_sig(r.params.r_d));
                row.extend(r.params.divisions.as_array().map(|n| n.to_string()));
                row
            }),
        ),
        Format::Json => json(
            &rows
                .iter()
                .map(|(dataset, r)| ReportRow {
                    dataset,
                    source_id: &r.source_id,
                    ctm: round_sig(r.ctm),
                    cctm1: round_sig(r.cctm[0]),
                    cctm2: round_sig(r.cctm[1]),
                    cctm3: round_sig(r.cctm[2]),
                    cctm4: round_sig(r.cctm[3]),
                    d: r.d.map(round_sig),
                    etv: round_sig(r.etv_global),
                    etv1: round_sig(r.etv_quadrant[0]),
                    etv2: round_sig(r.etv_quadrant[1]),
                    etv3: round_sig(r.etv_quadrant[2]),
                    etv4: round_sig(r.etv_quadrant[3]),
                    r_ctm: round_sig(r.params.r_ctm),
                    r_d: round_sig(r.params.r_d),
                    nx: r.params.divisions.nx,
                    ny: r.params.divisions.ny,
                    nz: r.params.divisions.nz,
                })
                .collect::<Vec<_>>(),
        ),
    }
}

pub const SWEEP_HEADER: [&str; 4] = ["dataset", "indicator", "r", "value"];

#[derive(Serialize)]
struct SweepJson<'a> {
    indicator: &'a str,
    r_values: Vec<f64>,
    rows: Vec<SweepJsonRow<'a>>,
}

#[derive(Serialize)]
struct SweepJsonRow<'a> {
    dataset: &'a str,
    values: Vec<Option<f64>>,
}

pub fn sweep(table: &SweepTable, format: Format) -> String {
    match format {
        Format::Csv => csv_table(
            &SWEEP_HEADER,
            table.rows.iter().flat_map(|row| {
                table.r_values.iter().zip(&row.values).map(|(&r, &v)| {
                    vec![
                        row.dataset.clone(),
                        table.indicator.name().to_string(),
                        fmt_sig(r),
                        opt(v),
                    ]
                })
            }),
        ),
        Format::Json => json(&SweepJson {
            indicator: table.indicator.name(),
            r_values: table.r_values.iter().map(|&r| round_sig(r)).collect(),
            rows: table
                .rows
                .iter()
                .map(|row| SweepJsonRow {
                    dataset: &row.dataset,
                    values: row.values.iter().map(|v| v.map(round_sig)).collect(),
                })
                .collect(),
        }),
    }
}

pub const SUMMARY_HEADER: [&str; 11] = [
    "dataset",
    "indicator",
    "n",
    "mean",
    "std",
    "min",
    "q1",
    "median",
    "q3",
    "max",
    "values",
];

#[derive(Serialize)]
struct SummaryJson<'a> {
    dataset: &'a str,
    indicator: &'a str,
    n: usize,
    mean: Option<f64>,
    std: Option<f64>,
    min: Option<f64>,
    q1: Option<f64>,
    median: Option<f64>,
    q3: Option<f64>,
    max: Option<f64>,
    values: Vec<f64>,
}

/// Five-number summary, mean ± std and the raw values per dataset and
/// indicator. In CSV the raw values are `;`-separated.
pub fn summaries(groups: &[GroupSummary], format: Format) -> String {
    let flat = groups
        .iter()
        .flat_map(|g| g.indicators.iter().map(move |i| (g.dataset.as_str(), i)));
    match format {
        Format::Csv => csv_table(
            &SUMMARY_HEADER,
            flat.map(|(dataset, ind)| {
                let mut row = vec![dataset.to_string(), ind.indicator.name().to_string()];
                match &ind.summary {
                    Some(s) => {
                        row.push(s.n.to_string());
                        row.extend(
                            [s.mean, s.std, s.min, s.q1, s.median, s.q3, s.max].map(fmt_sig),
                        );
                        let values: Vec<String> = s.values.iter().map(|&v| fmt_sig(v)).collect();
                        row.push(values.join(";"));
                    }
                    None => {
                        row.push("0".to_string());
                        row.extend(std::iter::repeat_n(String::new(), 8));
                    }
                }
                row
            }),
        ),
        Format::Json => json(
            &flat
                .map(|(dataset, ind)| {
                    let s = ind.summary.as_ref();
                    let field =
                        |f: fn(&crate::analysis::Summary) -> f64| s.map(|s| round_sig(f(s)));
                    SummaryJson {
                        dataset,
                        indicator: ind.indicator.name(),
                        n: s.map_or(0, |s| s.n),
                        mean: field(|s| s.mean),
                        std: field(|s| s.std),
                        min: field(|s| s.min),
                        q1: field(|s| s.q1),
                        median: field(|s| s.median),
                        q3: field(|s| s.q3),
                        max: field(|s| s.max),
                        values: s
                            .map(|s| s.values.iter().map(|&v| round_sig(v)).collect())
                            .unwrap_or_default(),
                    }
                })
                .collect::<Vec<_>>(),
        ),
    }
}

pub const CLASSIFY_HEADER: [&str; 3] = ["pair", "indicator", "ri"];

/// One pairwise classification result; `ri` is `None` when clustering was
/// not possible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyRow {
    pub pair: String,
    pub indicator: String,
    pub ri: Option<f64>,
}

pub fn classification(rows: &[ClassifyRow], format: Format) -> String {
    match format {
        Format::Csv => csv_table(
            &CLASSIFY_HEADER,
            rows.iter()
                .map(|r| vec![r.pair.clone(), r.indicator.clone(), opt(r.ri)]),
        ),
        Format::Json => json(
            &rows
                .iter()
                .map(|r| ClassifyRow {
                    ri: r.ri.map(round_sig),
                    ..r.clone()
                })
                .collect::<Vec<_>>(),
        ),
    }
}
