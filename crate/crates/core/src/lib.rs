//! Second-order difference plot (SODP) analysis of RR-interval series.
//!
//! The crate builds the difference plot of a series, computes the
//! radius-based indicators CTM, CCTM and D, lifts the plot to three
//! dimensions and scores it with the temporal variation entropy (E_TV).
//! It also provides radius sweeps, per-dataset summaries and a two-group
//! k-means classification harness.
//!
//! ```
//! use sodp_tvm::{sodp, tvm};
//!
//! let rr = [800.0, 810.0, 790.0, 805.0, 795.0];
//! let points = sodp::second_order_diff(&rr).unwrap();
//! assert_eq!(sodp::ctm(&points, 30.0).unwrap(), 1.0);
//!
//! let analysis = tvm::tvm_pipeline(&rr, tvm::Divisions::default()).unwrap();
//! assert!(analysis.etv_global >= 0.0);
//! ```

pub mod analysis;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod output;
pub mod series;
pub mod sodp;
pub mod tvm;

pub use error::{Error, Result};
pub use series::{DatasetGroup, RRSeries, Unit};
