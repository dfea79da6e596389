use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::payload::{parse_payload, Kind, Payload};
use crate::run::run_payload;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub version: String,
    pub jobs: Vec<JobEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobEntry {
    pub kind: String,
    pub payload: Value,
    pub label: String,
}

/// The whole file was unusable; no job ran.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("cannot parse job file: {0}")]
    Parse(String),
    #[error("unsupported job file version {0:?}, expected {FORMAT_VERSION:?}")]
    Version(String),
    #[error("{0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum ErrorKind {
    SchemaError,
    ModuleError,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JobError {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JobReport {
    pub label: String,
    pub kind: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<JobError>,
    pub provenance: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub ok: usize,
    pub error: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub version: String,
    pub jobs: Vec<JobReport>,
    pub warnings: Vec<String>,
    pub summary: Summary,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.summary.error == 0
    }

    /// Jobs sorted by label (stable), for comparing runs whose input order
    /// differs.
    pub fn normalized(&self) -> Report {
        let mut r = self.clone();
        r.jobs.sort_by(|a, b| a.label.cmp(&b.label));
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn parse_job_file(text: &str) -> Result<JobFile, LabError> {
    let file: JobFile = serde_json::from_str(text).map_err(|e| LabError::Parse(e.to_string()))?;
    if file.version != FORMAT_VERSION {
        return Err(LabError::Version(file.version));
    }
    Ok(file)
}

fn schema_error(entry: &JobEntry, message: String) -> JobReport {
    JobReport {
        label: entry.label.clone(),
        kind: entry.kind.clone(),
        status: Status::Error,
        result: None,
        error: Some(JobError {
            kind: ErrorKind::SchemaError,
            message,
        }),
        provenance: vec![],
    }
}

fn execute(entry: &JobEntry, payload: &Payload) -> JobReport {
    // core functions assert their cross-checks; a failed assertion is
    // reported as a job error rather than taking down the batch
    let outcome = std::panic::catch_unwind(|| run_payload(payload))
        .unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal check failed".into());
            Err(format!("internal consistency check failed: {msg}"))
        });
    match outcome {
        Ok(o) => JobReport {
            label: entry.label.clone(),
            kind: entry.kind.clone(),
            status: Status::Ok,
            result: Some(o.result),
            error: None,
            provenance: o.provenance,
        },
        Err(message) => JobReport {
            label: entry.label.clone(),
            kind: entry.kind.clone(),
            status: Status::Error,
            result: None,
            error: Some(JobError {
                kind: ErrorKind::ModuleError,
                message,
            }),
            provenance: vec![],
        },
    }
}

/// Validates every payload, then runs the valid ones. Output order follows
/// input order whether or not `parallel` is set.
pub fn batch(file: &JobFile, parallel: bool) -> Report {
    let parsed: Vec<Result<Payload, String>> = file
        .jobs
        .iter()
        .map(|j| match Kind::from_name(&j.kind) {
            Some(k) => parse_payload(k, &j.payload),
            None => Err(format!("unknown job kind {:?}", j.kind)),
        })
        .collect();

    let run_one = |(entry, p): (&JobEntry, &Result<Payload, String>)| match p {
        Ok(p) => execute(entry, p),
        Err(m) => schema_error(entry, m.clone()),
    };
    let jobs: Vec<JobReport> = if parallel {
        file.jobs.par_iter().zip(parsed.par_iter()).map(run_one).collect()
    } else {
        file.jobs.iter().zip(parsed.iter()).map(run_one).collect()
    };

    let mut seen: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, j) in file.jobs.iter().enumerate() {
        seen.entry(j.label.as_str()).or_default().push(i);
    }
    let warnings = seen
        .iter()
        .filter(|(_, ix)| ix.len() > 1)
        .map(|(l, ix)| format!("duplicate label {l:?} used by jobs {ix:?}"))
        .collect();

    let ok = jobs.iter().filter(|j| j.status == Status::Ok).count();
    Report {
        version: FORMAT_VERSION.to_string(),
        summary: Summary {
            total: jobs.len(),
            ok,
            error: jobs.len() - ok,
        },
        jobs,
        warnings,
    }
}

/// Runs one payload as a single-job batch labelled with its kind.
pub fn single(kind: Kind, payload: Value) -> Report {
    let file = JobFile {
        version: FORMAT_VERSION.to_string(),
        jobs: vec![JobEntry {
            kind: kind.name().to_string(),
            payload,
            label: kind.name().to_string(),
        }],
    };
    batch(&file, false)
}

/// Reads the output of an earlier run as input: each job whose result
/// carries a `graph` becomes a `kind` job with that graph as payload, under
/// the same label. Returns `None` when `v` is not a report. Jobs without a
/// graph are listed in the second component.
pub fn from_upstream(kind: Kind, v: &Value) -> Option<(JobFile, Vec<String>)> {
    let obj = v.as_object()?;
    if !(obj.contains_key("version") && obj.contains_key("summary")) {
        return None;
    }
    let mut jobs = vec![];
    let mut skipped = vec![];
    for j in obj.get("jobs")?.as_array()? {
        let label = j.get("label").and_then(Value::as_str).unwrap_or("").to_string();
        match j.get("result").and_then(|r| r.get("graph")) {
            Some(g) => jobs.push(JobEntry {
                kind: kind.name().to_string(),
                payload: g.clone(),
                label,
            }),
            None => skipped.push(label),
        }
    }
    Some((
        JobFile {
            version: FORMAT_VERSION.to_string(),
            jobs,
        },
        skipped,
    ))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        _ => None,
    }
}

/// Plain-text table: one row per job showing its top-level scalar results.
pub fn render_table(r: &Report) -> String {
    let rows: Vec<[String; 4]> = r
        .jobs
        .iter()
        .map(|j| {
            let detail = match (&j.result, &j.error) {
                (Some(Value::Object(m)), _) => m
                    .iter()
                    .filter_map(|(k, v)| scalar(v).map(|s| format!("{k}={s}")))
                    .collect::<Vec<_>>()
                    .join(" "),
                (_, Some(e)) => format!("{:?}: {}", e.kind, e.message),
                _ => String::new(),
            };
            let status = match j.status {
                Status::Ok => "ok",
                Status::Error => "error",
            };
            [j.label.clone(), j.kind.clone(), status.to_string(), detail]
        })
        .collect();
    let header = ["label", "kind", "status", "result"].map(String::from);
    let mut width = [0usize; 3];
    for row in std::iter::once(&header).chain(&rows) {
        for (w, cell) in width.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let line = format!(
            "{:<w0$}  {:<w1$}  {:<w2$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = width[0],
            w1 = width[1],
            w2 = width[2]
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out.push_str(&format!(
        "{} jobs, {} ok, {} error\n",
        r.summary.total, r.summary.ok, r.summary.error
    ));
    out
}
