use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = concat!("lw ", env!("CARGO_PKG_VERSION"));

/// One experiment cell. Unused columns stay empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub experiment: String,
    pub r: usize,
    pub t: String,
    pub variant: Option<String>,
    pub theta: Option<f64>,
    pub precision_bits: Option<usize>,
    /// Outer iterations of the IPM.
    pub iterations: Option<usize>,
    /// Segments `p` of the IPM trajectory.
    pub segments: Option<usize>,
    pub gamma: Option<usize>,
    /// `2^{r−1}`.
    pub lower_bound: u64,
    pub curvature: Option<f64>,
    /// Tropical curvature lower bound in units of `π/2`.
    pub trop_bound: Option<usize>,
    /// `;`-separated angles (radians).
    pub angles: Option<String>,
    pub max_deviation: Option<f64>,
    pub budget: Option<f64>,
    pub bound_guaranteed: Option<bool>,
    pub threshold_met: Option<bool>,
    pub min_valid_t_digits: Option<usize>,
    pub pass: bool,
    pub invocation: String,
    pub config_hash: String,
}

impl CellRecord {
    pub fn new(experiment: &str, r: usize, t: &str, invocation: String) -> Self {
        let config_hash = config_hash(&invocation);
        CellRecord {
            experiment: experiment.into(),
            r,
            t: t.into(),
            variant: None,
            theta: None,
            precision_bits: None,
            iterations: None,
            segments: None,
            gamma: None,
            lower_bound: 1u64 << r.saturating_sub(1).min(63),
            curvature: None,
            trop_bound: None,
            angles: None,
            max_deviation: None,
            budget: None,
            bound_guaranteed: None,
            threshold_met: None,
            min_valid_t_digits: None,
            pass: false,
            invocation,
            config_hash,
        }
    }
}

/// First 16 hex digits of SHA-256 of the canonical invocation.
pub fn config_hash(invocation: &str) -> String {
    Sha256::digest(invocation.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub config: serde_json::Value,
    pub records: Vec<CellRecord>,
}

impl Report {
    pub fn new(config: serde_json::Value, records: Vec<CellRecord>) -> Self {
        Report { tool_version: TOOL_VERSION.into(), config, records }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn records_to_csv(records: &[CellRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn records_from_csv(s: &str) -> Result<Vec<CellRecord>> {
    csv::Reader::from_reader(s.as_bytes()).deserialize().map(|r| r.map_err(|e| Error::Parse(e.to_string()))).collect()
}
