//! JSON job files and batch evaluation on top of `conductor-core`.
//!
//! A job file is `{"version": "1", "jobs": [{"kind", "label", "payload"}]}`.
//! Every payload is checked against its kind's schema before anything runs;
//! results carry rationals as exact `"num/den"` strings.

pub mod exact;
pub mod payload;
pub mod report;
pub mod run;

pub use payload::Kind;
pub use report::{
    batch, from_upstream, parse_job_file, render_table, single, ErrorKind, JobEntry, JobFile, JobReport, LabError,
    Report, Status,
};
