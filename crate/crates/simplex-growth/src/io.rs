//! File formats: CSV for tabular data (profiles, partition traces), JSON for
//! urn results and run manifests. Floats are written with 17 significant
//! digits so re-importing reproduces them bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::profile::{DegreeProfile, ProfileEntry, Provenance};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl IoError {
    fn file(path: &Path, source: std::io::Error) -> IoError {
        IoError::File {
            path: path.display().to_string(),
            source,
        }
    }
}

fn fmt_f64(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{x}")
    } else {
        format!("{x:.16e}")
    }
}

pub fn profile_to_csv(profile: &DegreeProfile) -> String {
    let mut out = String::from("k,count,fraction,stderr\n");
    for e in &profile.entries {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.k,
            fmt_f64(e.count),
            fmt_f64(e.fraction),
            fmt_f64(e.stderr)
        );
    }
    out
}

pub fn write_profile_csv(path: &Path, profile: &DegreeProfile) -> Result<(), IoError> {
    std::fs::write(path, profile_to_csv(profile)).map_err(|e| IoError::file(path, e))
}

/// Parses a profile from CSV text. The returned profile carries `Imported`
/// provenance; run metadata lives in the manifest.
pub fn profile_from_csv(text: &str) -> Result<DegreeProfile, IoError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(IoError::Parse {
        line: 1,
        col: 1,
        message: "empty file".into(),
    })?;
    if header.trim() != "k,count,fraction,stderr" {
        return Err(IoError::Parse {
            line: 1,
            col: 1,
            message: format!("unexpected header {header:?}"),
        });
    }
    let mut entries = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut col = 1usize;
        let mut fields = Vec::with_capacity(4);
        for field in line.split(',') {
            fields.push((col, field));
            col += field.len() + 1;
        }
        if fields.len() != 4 {
            return Err(IoError::Parse {
                line: lineno,
                col: 1,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let parse_f = |idx: usize| -> Result<f64, IoError> {
            let (c, s) = fields[idx];
            s.trim().parse::<f64>().map_err(|_| IoError::Parse {
                line: lineno,
                col: c,
                message: format!("not a number: {s:?}"),
            })
        };
        let (c0, s0) = fields[0];
        let k = s0.trim().parse::<u32>().map_err(|_| IoError::Parse {
            line: lineno,
            col: c0,
            message: format!("not a degree offset: {s0:?}"),
        })?;
        entries.push(ProfileEntry {
            k,
            count: parse_f(1)?,
            fraction: parse_f(2)?,
            stderr: parse_f(3)?,
        });
    }
    Ok(DegreeProfile {
        provenance: Provenance::Imported,
        steps: 0,
        replicas: 0,
        entries,
    })
}

pub fn read_profile_csv(path: &Path) -> Result<DegreeProfile, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    profile_from_csv(&text)
}

/// Partition-total trace: one row per recorded step.
pub fn trace_to_csv(trace: &[(u64, f64)]) -> String {
    let mut out = String::from("step,Z,Z/step\n");
    for &(step, z) in trace {
        let _ = writeln!(out, "{step},{},{}", fmt_f64(z), fmt_f64(z / step as f64));
    }
    out
}

pub fn write_trace_csv(path: &Path, trace: &[(u64, f64)]) -> Result<(), IoError> {
    std::fs::write(path, trace_to_csv(trace)).map_err(|e| IoError::file(path, e))
}

pub fn trace_from_csv(text: &str) -> Result<Vec<(u64, f64)>, IoError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(IoError::Parse {
        line: 1,
        col: 1,
        message: "empty file".into(),
    })?;
    if header.trim() != "step,Z,Z/step" {
        return Err(IoError::Parse {
            line: 1,
            col: 1,
            message: format!("unexpected header {header:?}"),
        });
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(IoError::Parse {
                line: lineno,
                col: 1,
                message: format!("expected 3 fields, found {}", fields.len()),
            });
        }
        let step = fields[0].trim().parse::<u64>().map_err(|_| IoError::Parse {
            line: lineno,
            col: 1,
            message: format!("not a step index: {:?}", fields[0]),
        })?;
        let z = fields[1].trim().parse::<f64>().map_err(|_| IoError::Parse {
            line: lineno,
            col: fields[0].len() + 2,
            message: format!("not a number: {:?}", fields[1]),
        })?;
        out.push((step, z));
    }
    Ok(out)
}

/// Serialized result of the urn analysis.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct UrnOutput {
    pub lambda: f64,
    pub residual: f64,
    pub iterations: u64,
    /// Sorted weight vectors, one per canonical type.
    pub types: Vec<Vec<f64>>,
    pub activity: Vec<f64>,
    /// Limiting type measure (lambda * eigenvector).
    pub pi: Vec<f64>,
    /// Limiting chosen-type law (fitness-biased, sums to 1).
    pub pi_hat: Vec<f64>,
}

impl UrnOutput {
    pub fn from_model(urn: &crate::urn::UrnModel) -> Option<UrnOutput> {
        let perron = urn.perron.as_ref()?;
        Some(UrnOutput {
            lambda: perron.lambda,
            residual: perron.residual,
            iterations: perron.iterations,
            types: urn.types.iter().map(|t| t.weights().to_vec()).collect(),
            activity: urn.activity.clone(),
            pi: urn.type_measure()?,
            pi_hat: urn.chosen_type_law()?,
        })
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| IoError::file(path, e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::file(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Everything needed to reproduce a run byte for byte on the same build.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub config: Option<crate::config::ModelConfig>,
    pub seed: u64,
    pub args: Vec<String>,
    pub outputs: Vec<String>,
    pub wall_clock_secs: f64,
}

impl RunManifest {
    pub fn new(subcommand: &str, config: Option<crate::config::ModelConfig>, seed: u64) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            config,
            seed,
            args: Vec::new(),
            outputs: Vec::new(),
            wall_clock_secs: 0.0,
        }
    }
}
