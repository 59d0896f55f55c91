//! The JSON report schema shared by all subcommands.

use serde::Serialize;

/// One machine-readable report. Field order is fixed so identical inputs
/// and seeds serialize byte-identically (modulo the timestamp).
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(rename = "protocolName")]
    pub protocol_name: String,
    pub n: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "m_A")]
    pub m_a: usize,
    #[serde(rename = "m_B")]
    pub m_b: usize,
    #[serde(rename = "successExact")]
    pub success_exact: Option<f64>,
    #[serde(rename = "boundRhs")]
    pub bound_rhs: Option<f64>,
    pub margin: Option<f64>,
    #[serde(rename = "traceIdentityResidual")]
    pub trace_identity_residual: f64,
    #[serde(rename = "reconstructionResidual")]
    pub reconstruction_residual: f64,
    pub timestamp: String,
    pub seed: u64,
    #[serde(rename = "toolVersion")]
    pub tool_version: String,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            protocol_name: String::new(),
            n: 0,
            e: 0,
            m_a: 0,
            m_b: 0,
            success_exact: None,
            bound_rhs: None,
            margin: None,
            trace_identity_residual: 0.0,
            reconstruction_residual: 0.0,
            timestamp: now(),
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// CSV header matching [`Report::csv_row`].
    pub fn csv_header() -> &'static str {
        "command,protocolName,n,E,m_A,m_B,successExact,boundRhs,margin,\
         traceIdentityResidual,reconstructionResidual,timestamp,seed,toolVersion"
    }

    pub fn csv_row(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.command,
            self.protocol_name,
            self.n,
            self.e,
            self.m_a,
            self.m_b,
            opt(self.success_exact),
            opt(self.bound_rhs),
            opt(self.margin),
            self.trace_identity_residual,
            self.reconstruction_residual,
            self.timestamp,
            self.seed,
            self.tool_version
        )
    }
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Distribution entry attached to `run` reports.
#[derive(Debug, Clone, Serialize)]
pub struct DistEntry {
    pub output: String,
    pub probability: f64,
}

/// Per-message residuals attached to `certify` reports.
#[derive(Debug, Clone, Serialize)]
pub struct MessageRecord {
    pub input: String,
    #[serde(rename = "traceIdentityResidual")]
    pub trace_identity_residual: f64,
    #[serde(rename = "reconstructionResidual")]
    pub reconstruction_residual: f64,
}
