//! RR-interval series and dataset groups.
//!
//! Input files are plain text: one interval per line, or a single CSV row
//! (values may be separated by commas and/or whitespace). Blank lines and
//! lines starting with `#` are skipped. Units are carried as metadata only;
//! no indicator depends on them.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// File extensions picked up when loading a directory as a dataset group.
pub const ACCEPTED_EXTENSIONS: [&str; 2] = ["txt", "csv"];

/// Smallest series that yields at least one difference-plot point.
pub const MIN_SERIES_LEN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    #[default]
    Milliseconds,
    Seconds,
    Unitless,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Milliseconds => "ms",
            Unit::Seconds => "s",
            Unit::Unitless => "none",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An ordered sequence of strictly positive, finite interval durations.
///
/// Construction validates the invariants, so every `RRSeries` in circulation
/// has at least [`MIN_SERIES_LEN`] intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct RRSeries {
    intervals: Vec<f64>,
    unit: Unit,
    source_id: String,
}

impl RRSeries {
    /// Builds a series from in-memory values. Invalid values are reported
    /// with their 1-based position in place of a line number.
    pub fn new(intervals: Vec<f64>, unit: Unit, source_id: impl Into<String>) -> Result<Self> {
        for (i, &value) in intervals.iter().enumerate() {
            check_interval(i + 1, value)?;
        }
        if intervals.len() < MIN_SERIES_LEN {
            return Err(Error::TooShort {
                len: intervals.len(),
            });
        }
        Ok(Self {
            intervals,
            unit,
            source_id: source_id.into(),
        })
    }

    /// Parses the text format described at module level.
    pub fn parse(text: &str, unit: Unit, source_id: impl Into<String>) -> Result<Self> {
        let mut intervals = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for token in line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
            {
                let value: f64 = token.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    token: token.to_string(),
                })?;
                check_interval(line_no, value)?;
                intervals.push(value);
            }
        }
        if intervals.len() < MIN_SERIES_LEN {
            return Err(Error::TooShort {
                len: intervals.len(),
            });
        }
        Ok(Self {
            intervals,
            unit,
            source_id: source_id.into(),
        })
    }

    pub fn intervals(&self) -> &[f64] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    /// Always false for a constructed series; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    /// One interval per line, using the shortest representation that parses
    /// back to the identical `f64`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.intervals.len() * 8);
        for v in &self.intervals {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Splits the series into consecutive non-overlapping segments of
    /// `segment_len` intervals. A trailing remainder shorter than
    /// `segment_len` is dropped. Segment ids are `<source_id>#<k>` with a
    /// zero-padded 1-based `k`, so they sort in order.
    pub fn segments(&self, segment_len: usize) -> Result<Vec<RRSeries>> {
        if segment_len < MIN_SERIES_LEN {
            return Err(Error::InvalidSegmentLength(segment_len));
        }
        Ok(self
            .intervals
            .chunks_exact(segment_len)
            .enumerate()
            .map(|(k, chunk)| RRSeries {
                intervals: chunk.to_vec(),
                unit: self.unit,
                source_id: format!("{}#{:04}", self.source_id, k + 1),
            })
            .collect())
    }
}

fn check_interval(line: usize, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInterval { line, value })
    }
}

/// Recordings that belong to one dataset, e.g. all files of `nsr2db/`.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetGroup {
    pub name: String,
    pub recordings: Vec<RRSeries>,
}

impl DatasetGroup {
    pub fn new(name: impl Into<String>, recordings: Vec<RRSeries>) -> Self {
        Self {
            name: name.into(),
            recordings,
        }
    }

    /// Replaces every recording by its fixed-length segments.
    pub fn segmented(&self, segment_len: usize) -> Result<DatasetGroup> {
        let mut recordings = Vec::new();
        for rec in &self.recordings {
            recordings.extend(rec.segments(segment_len)?);
        }
        if recordings.is_empty() {
            return Err(Error::EmptyGroup(self.name.clone()));
        }
        Ok(DatasetGroup {
            name: self.name.clone(),
            recordings,
        })
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

/// Loads one RR file. Any failure is wrapped with the file path.
pub fn load_rr_series(path: impl AsRef<Path>, unit: Unit) -> Result<RRSeries> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    RRSeries::parse(&text, unit, file_stem(path)).map_err(|e| Error::File {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

/// Loads every `.txt`/`.csv` file directly inside `dir`, in lexicographic
/// file-name order. The group takes the directory's name.
pub fn load_dataset_group(dir: impl AsRef<Path>, unit: Unit) -> Result<DatasetGroup> {
    let dir = dir.as_ref();
    let io_err = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<PathBuf> = Vec::new();
    for entry in fs::read_dir(dir).map_err(io_err)? {
        let path = entry.map_err(io_err)?.path();
        let accepted = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| ACCEPTED_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()));
        if accepted && path.is_file() {
            files.push(path);
        }
    }
    if files.is_empty() {
        return Err(Error::EmptyDirectory(dir.to_path_buf()));
    }
    files.sort();

    let recordings = files
        .iter()
        .map(|p| load_rr_series(p, unit))
        .collect::<Result<Vec<_>>>()?;

    let name = dir
        .canonicalize()
        .ok()
        .as_deref()
        .and_then(Path::file_name)
        .or_else(|| dir.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| dir.to_string_lossy().into_owned());

    Ok(DatasetGroup::new(name, recordings))
}
