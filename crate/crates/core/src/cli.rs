//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::analysis::{self, Indicator, IndicatorParams, IndicatorReport};
use crate::cluster::{self, GroupFeatures};
use crate::output::{self, ClassifyRow, Format};
use crate::series::{self, DatasetGroup, Unit};
use crate::sodp;
use crate::tvm::{self, Divisions};

#[derive(Debug, Parser)]
#[command(
    name = "sodp-tvm",
    version,
    about = "Second-order difference plot indicators and temporal variation entropy for RR intervals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One row of CTM, CCTM, D and E_TV values per recording.
    Indicators(IndicatorsArgs),
    /// 2-D difference-plot and 3-D lifted point files per recording.
    Points(PointsArgs),
    /// Mean of a radius-based indicator per dataset over a grid of radii.
    Sweep(SweepArgs),
    /// Per-dataset statistics and boxplot data for every indicator.
    Aggregate(AggregateArgs),
    /// Two-cluster k-means accuracy for every pair of datasets.
    Classify(ClassifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// RR files or dataset directories (.txt/.csv files inside).
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_parser = parse_unit, default_value = "ms")]
    pub unit: Unit,

    /// Split every recording into consecutive segments of this many intervals.
    #[arg(long)]
    pub segment_len: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Radius for CTM and CCTM, in input units.
    #[arg(long, default_value_t = analysis::DEFAULT_R_CTM)]
    pub r_ctm: f64,

    /// Radius for D, in input units.
    #[arg(long, default_value_t = analysis::DEFAULT_R_D)]
    pub r_d: f64,

    /// Subspace bins along x, y and z.
    #[arg(long, default_value = "10,10,10")]
    pub divisions: Divisions,
}

impl ParamArgs {
    pub fn params(&self) -> IndicatorParams {
        IndicatorParams {
            r_ctm: self.r_ctm,
            r_d: self.r_d,
            divisions: self.divisions,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (standard output when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct IndicatorsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PointsArgs {
    /// RR files or dataset directories.
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,

    #[arg(long, value_parser = parse_unit, default_value = "ms")]
    pub unit: Unit,

    /// Directory receiving `<dataset>/<source_id>.sodp.<ext>` and `.tvm.<ext>`.
    #[arg(long)]
    pub out: PathBuf,

    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value = "ctm")]
    pub indicator: Indicator,

    /// Radius grid as start:stop:step.
    #[arg(long, default_value = "0.5:10:0.5")]
    pub r_grid: String,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AggregateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub params: ParamArgs,

    /// Comma-separated indicators, or `all`.
    #[arg(long, default_value = "all")]
    pub indicator: String,

    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_unit(s: &str) -> std::result::Result<Unit, String> {
    match s {
        "ms" => Ok(Unit::Milliseconds),
        "s" => Ok(Unit::Seconds),
        "none" => Ok(Unit::Unitless),
        _ => Err(format!("unknown unit {s:?}, expected ms, s or none")),
    }
}

/// Parses `start:stop:step`.
pub fn parse_r_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        bail!("radius grid {s:?} must look like start:stop:step");
    }
    let mut n = [0.0; 3];
    for (slot, p) in n.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse()
            .with_context(|| format!("radius grid {s:?}: {p:?} is not a number"))?;
    }
    Ok(analysis::radius_grid(n[0], n[1], n[2])?)
}

fn parse_indicators(s: &str) -> Result<Vec<Indicator>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Indicator::ALL.to_vec());
    }
    s.split(',')
        .map(|p| p.trim().parse::<Indicator>().map_err(anyhow::Error::msg))
        .collect()
}

/// Each input becomes a group: a directory with its files, or a single file
/// named after its stem.
fn load_groups(input: &InputArgs) -> Result<Vec<DatasetGroup>> {
    let mut groups = Vec::with_capacity(input.inputs.len());
    for path in &input.inputs {
        let group = if path.is_dir() {
            series::load_dataset_group(path, input.unit)?
        } else {
            let s = series::load_rr_series(path, input.unit)?;
            DatasetGroup::new(s.source_id().to_string(), vec![s])
        };
        groups.push(match input.segment_len {
            Some(len) => group
                .segmented(len)
                .with_context(|| format!("segmenting {}", path.display()))?,
            None => group,
        });
    }
    Ok(groups)
}

/// Like [`load_groups`], but a lone file is filed under its parent directory.
fn load_recordings(input: &InputArgs) -> Result<Vec<DatasetGroup>> {
    let mut groups = load_groups(input)?;
    for (group, path) in groups.iter_mut().zip(&input.inputs) {
        if !path.is_dir() {
            group.name = parent_name(path);
        }
    }
    Ok(groups)
}

fn parent_name(path: &Path) -> String {
    path.canonicalize()
        .ok()
        .and_then(|p| {
            p.parent()
                .and_then(Path::file_name)
                .map(|n| n.to_string_lossy().into_owned())
        })
        .unwrap_or_default()
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn cmd_indicators(args: &IndicatorsArgs) -> Result<()> {
    let params = args.params.params();
    let mut rows: Vec<(String, IndicatorReport)> = Vec::new();
    for group in load_recordings(&args.input)? {
        let reports = analysis::group_reports(&group, &params)
            .with_context(|| format!("computing indicators for {}", group.name))?;
        rows.extend(reports.into_iter().map(|r| (group.name.clone(), r)));
    }
    rows.sort_by(|a, b| a.1.source_id.cmp(&b.1.source_id));
    emit(
        &output::reports(&rows, args.output.format),
        args.output.out.as_deref(),
    )
}

pub fn cmd_points(args: &PointsArgs) -> Result<()> {
    let input = InputArgs {
        inputs: args.inputs.clone(),
        unit: args.unit,
        segment_len: None,
    };
    let ext = args.format.extension();
    for group in load_recordings(&input)? {
        let dir = args.out.join(&group.name);
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        for rec in &group.recordings {
            let points = sodp::second_order_diff(rec.intervals())?;
            let lifted = tvm::build_tvm_points(&points)?;
            let base = dir.join(rec.source_id());
            emit(
                &output::sodp_points(&points, args.format),
                Some(&base.with_extension(format!("sodp.{ext}"))),
            )?;
            emit(
                &output::tvm_points(&lifted, args.format),
                Some(&base.with_extension(format!("tvm.{ext}"))),
            )?;
        }
    }
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let r_values = parse_r_grid(&args.r_grid)?;
    let groups = load_groups(&args.input)?;
    let table = analysis::sweep_r(&groups, args.indicator, &r_values)?;
    emit(
        &output::sweep(&table, args.output.format),
        args.output.out.as_deref(),
    )
}

pub fn cmd_aggregate(args: &AggregateArgs) -> Result<()> {
    let params = args.params.params();
    let mut groups = load_groups(&args.input)?;
    groups.sort_by(|a, b| a.name.cmp(&b.name));
    let summaries = groups
        .iter()
        .map(|g| analysis::aggregate(g, &params).with_context(|| format!("aggregating {}", g.name)))
        .collect::<Result<Vec<_>>>()?;
    emit(
        &output::summaries(&summaries, args.output.format),
        args.output.out.as_deref(),
    )
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<()> {
    let indicators = parse_indicators(&args.indicator)?;
    let params = args.params.params();
    let groups = load_groups(&args.input)?;
    if groups.len() < 2 {
        bail!("classify needs at least two datasets, got {}", groups.len());
    }
    let reports = groups
        .iter()
        .map(|g| analysis::group_reports(g, &params))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let features = |i: usize, indicator: Indicator| {
        GroupFeatures::new(
            groups[i].name.clone(),
            reports[i]
                .iter()
                .filter_map(|r| r.value(indicator))
                .collect(),
        )
    };

    let mut rows = Vec::new();
    for i in 0..groups.len() {
        for j in i + 1..groups.len() {
            let pair = format!("{}/{}", groups[i].name, groups[j].name);
            for &indicator in &indicators {
                let ri = match cluster::pairwise_classify(
                    &features(i, indicator),
                    &features(j, indicator),
                ) {
                    Ok(outcome) => Some(outcome.ri),
                    Err(e) => {
                        eprintln!("warning: {pair} {indicator}: {e}");
                        None
                    }
                };
                rows.push(ClassifyRow {
                    pair: pair.clone(),
                    indicator: indicator.name().to_string(),
                    ri,
                });
            }
        }
    }
    emit(
        &output::classification(&rows, args.output.format),
        args.output.out.as_deref(),
    )
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Indicators(a) => cmd_indicators(a),
        Command::Points(a) => cmd_points(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Aggregate(a) => cmd_aggregate(a),
        Command::Classify(a) => cmd_classify(a),
    }
}
