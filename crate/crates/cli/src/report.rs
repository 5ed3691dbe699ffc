use galosc_core::multispinor::Theory;
use galosc_core::spectrum::ExactRational;
use num_rational::Rational64;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::args::PhysicsArgs;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Failure(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Failure(_) | CliError::Io(_) => 1,
        }
    }
}

pub fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub two_s: u32,
    pub lambda: ExactRational,
    #[serde(rename = "M")]
    pub mass: f64,
    pub omega: f64,
    pub n_max: usize,
    pub tool_version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theory: Option<Theory>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e_max: Option<ExactRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
}

impl Meta {
    pub fn new(p: &PhysicsArgs) -> Self {
        Self {
            two_s: p.two_s,
            lambda: p.lambda.0.into(),
            mass: p.mass,
            omega: p.omega,
            n_max: p.n_max,
            tool_version: env!("CARGO_PKG_VERSION"),
            theory: None,
            e_max: None,
            l_max: None,
            r_max: None,
            points: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub defect: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Check {
    pub fn within(name: &str, defect: f64, tolerance: f64) -> Self {
        let status = if defect <= tolerance { Status::Pass } else { Status::Fail };
        Self {
            name: name.to_string(),
            status,
            defect,
            tolerance,
            detail: None,
        }
    }

    pub fn exact(name: &str, ok: bool) -> Self {
        Self::within(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn detail(mut self, v: Value) -> Self {
        self.detail = Some(v);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<R: Serialize> {
    pub meta: Meta,
    pub rows: Vec<R>,
    pub checks: Vec<Check>,
}

impl<R: Serialize> Envelope<R> {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }
}

/// Rendered command output and whether every check passed.
#[derive(Debug)]
pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

pub fn half_integer(two_x: u32) -> String {
    if two_x % 2 == 0 {
        (two_x / 2).to_string()
    } else {
        format!("{two_x}/2")
    }
}

pub fn decimal(r: Rational64) -> String {
    format!("{:.6}", galosc_core::spectrum::to_f64(r))
}

pub fn checks_table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
    let mut out = format!("{:<width$}  status  {:>12}  {:>9}\n", "check", "defect", "tolerance");
    for c in checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!("{:<width$}  {:<6}  {:>12.3e}  {:>9.1e}\n", c.name, status, c.defect, c.tolerance));
    }
    out
}

pub fn checks_csv(checks: &[Check]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "status", "defect", "tolerance"]).map_err(|e| CliError::Failure(e.to_string()))?;
    for c in checks {
        let status = if c.passed() { "pass" } else { "fail" };
        w.write_record([c.name.as_str(), status, &format!("{:e}", c.defect), &format!("{:e}", c.tolerance)])
            .map_err(|e| CliError::Failure(e.to_string()))?;
    }
    finish_csv(w)
}

pub fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}
