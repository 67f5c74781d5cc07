use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: cannot parse {token:?} as a number")]
    Parse { line: usize, token: String },

    #[error("line {line}: interval {value} is not finite and strictly positive")]
    InvalidInterval { line: usize, value: f64 },

    #[error("series has {len} intervals, at least 3 are required")]
    TooShort { len: usize },

    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("no .txt or .csv recordings found in {}", .0.display())]
    EmptyDirectory(PathBuf),

    #[error("dataset group {0:?} has no recordings")]
    EmptyGroup(String),

    #[error("point set is empty")]
    EmptyPoints,

    #[error("radius must be finite and strictly positive, got {0}")]
    InvalidRadius(f64),

    #[error("no point lies strictly inside radius {r}")]
    NoPointInRadius { r: f64 },

    #[error("{0} does not depend on a radius")]
    NotRadiusBased(&'static str),

    #[error("no dataset groups given")]
    NoGroups,

    #[error("invalid radius grid: {0}")]
    InvalidRadiusGrid(String),

    #[error("invalid subspace divisions: {0}")]
    InvalidDivisions(String),

    #[error("invalid segment length {0}, at least 3 intervals are required")]
    InvalidSegmentLength(usize),

    #[error("k-means needs at least {k} distinct values, found {distinct}")]
    TooFewDistinct { k: usize, distinct: usize },

    #[error("feature value {0} is not finite")]
    NonFiniteFeature(f64),

    #[error("assignments and labels differ in length ({assignments} vs {labels})")]
    LengthMismatch { assignments: usize, labels: usize },

    #[error("expected exactly two distinct labels, found {0}")]
    LabelCount(usize),

    #[error("cluster id {0} is outside {{0, 1}}")]
    InvalidClusterId(usize),
}
