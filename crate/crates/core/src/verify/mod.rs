//! Scenario runner: end-to-end verification drills over the algebra stack,
//! each producing a machine-readable report whose checks name the exact
//! identity they certify. Reports are deterministic given (scenario,
//! parameters, seed) — wall time is carried separately and never
//! serialized into JSON.

pub mod algebra_spec;
pub mod cli;
pub mod fixtures;
pub mod free_module;
pub mod locally_finite;
pub mod perfect_field;
pub mod rng;
pub mod semiperfect_abelian;
pub mod torus_chain;

use crate::liealg::LieError;
use crate::radical::RadicalError;
use crate::scalars::ScalarError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors that abort a scenario before any verdict is reached: bad inputs,
/// unsupported algebra classes, or refused resource budgets. These map to
/// usage-error exits, distinct from a completed run with failing checks.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("degree budget exceeded: {0}")]
    DegreeBudget(String),
    #[error("invalid scenario input: {0}")]
    Input(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Radical(#[from] RadicalError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("algebra file error: {0}")]
    Spec(#[from] algebra_spec::SpecError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One verified identity: `anchor` states the mathematical fact being
/// checked, `witness` carries the concrete data that was examined.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub schema: u32,
    pub scenario: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<CheckRecord>,
    pub status: String,
    /// Wall-clock milliseconds; excluded from serialization so repeated
    /// runs produce byte-identical JSON.
    #[serde(skip)]
    pub wall_ms: u128,
}

impl ScenarioReport {
    pub fn new(scenario: &str, parameters: BTreeMap<String, serde_json::Value>) -> Self {
        ScenarioReport {
            schema: 1,
            scenario: scenario.to_string(),
            parameters,
            checks: Vec::new(),
            status: "fail".into(),
            wall_ms: 0,
        }
    }

    pub fn push(&mut self, id: &str, anchor: &str, pass: bool, witness: serde_json::Value) {
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor.to_string(),
            pass,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    /// Set the overall status from the recorded checks.
    pub fn finalize(&mut self, wall_ms: u128) {
        self.status = if self.passed() { "pass" } else { "fail" }.to_string();
        self.wall_ms = wall_ms;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("scenario: {}\n", self.scenario));
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} — {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.anchor
            ));
            if !c.pass {
                out.push_str(&format!("       witness: {}\n", c.witness));
            }
        }
        out.push_str(&format!(
            "status: {} ({} checks, {} ms)\n",
            self.status,
            self.checks.len(),
            self.wall_ms
        ));
        out
    }
}

/// Cap on the numerator degree that exact rational-function arithmetic is
/// allowed to reach in a scenario; overridable through the
/// `RESENV_DEGREE_BUDGET` environment variable. Runs whose worst-case
/// estimate exceeds the budget are refused up front rather than silently
/// truncated.
pub fn degree_budget() -> u32 {
    std::env::var("RESENV_DEGREE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(512)
}

/// Millisecond timer helper for report finalization.
pub(crate) fn elapsed_ms(start: std::time::Instant) -> u128 {
    start.elapsed().as_millis()
}
