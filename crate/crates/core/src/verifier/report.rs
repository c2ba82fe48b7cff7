use std::fmt;
use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::config::ExperimentConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "DIVERGENT-AS-EXPECTED")]
    DivergentAsExpected,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Verdict {
    /// `PASS` and `DIVERGENT-AS-EXPECTED` both confirm the claim under test.
    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::DivergentAsExpected)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::DivergentAsExpected => "DIVERGENT-AS-EXPECTED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    /// Folds sub-verdicts: any failure fails, then any inconclusive part
    /// makes the whole inconclusive.
    pub fn combine(parts: impl IntoIterator<Item = Verdict>, success: Verdict) -> Verdict {
        let mut out = success;
        for v in parts {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                _ => {}
            }
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Constants of the second-difference blow-up for the half-plane map.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlowupConstants {
    /// `1 / (e √π)`.
    pub c: f64,
    /// `1 - 2p`.
    pub exponent: f64,
    /// `2^{1-p} c`.
    pub prefactor: f64,
}

impl BlowupConstants {
    pub fn for_exponent(p: f64) -> Self {
        let c = 1.0 / (std::f64::consts::E * std::f64::consts::PI.sqrt());
        Self { c, exponent: 1.0 - 2.0 * p, prefactor: 2f64.powf(1.0 - p) * c }
    }

    pub fn lower_bound(&self, t: f64) -> f64 {
        self.prefactor * t.powf(self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub n: usize,
    pub nodes: Vec<Complex64>,
    pub gauge: f64,
    pub bound: f64,
    pub support_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support_measure: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<f64>,
}

impl StepRecord {
    pub fn new(n: usize, nodes: Vec<Complex64>, gauge: f64, bound: f64, support_ok: bool) -> Self {
        Self {
            n,
            nodes,
            gauge,
            bound,
            support_ok,
            phase: None,
            center: None,
            order: None,
            support_measure: None,
            closed_form: None,
            oracle: None,
        }
    }

    pub fn phase(mut self, phase: &str) -> Self {
        self.phase = Some(phase.to_string());
        self
    }

    pub fn center(mut self, z: Complex64) -> Self {
        self.center = Some(z);
        self
    }

    pub fn order(mut self, k: usize) -> Self {
        self.order = Some(k);
        self
    }

    pub fn support_measure(mut self, m: f64) -> Self {
        self.support_measure = Some(m);
        self
    }

    pub fn closed_form(mut self, v: f64) -> Self {
        self.closed_form = Some(v);
        self
    }

    pub fn oracle(mut self, v: f64) -> Self {
        self.oracle = Some(v);
        self
    }
}

/// A named sub-verdict, kept so a report explains its own verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self { name: name.into(), verdict, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub steps: Vec<StepRecord>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constants: Option<BlowupConstants>,
    pub wall_time_ms: u64,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidConfig(format!("report serialization: {e}")))
    }

    pub fn write_json<W: Write>(&self, w: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(w, self).map_err(std::io::Error::other)
    }

    /// One row per step with header `step,gauge,bound,support_ok`.
    pub fn write_csv<W: Write>(&self, w: W) -> std::io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["step", "gauge", "bound", "support_ok"])?;
        for s in &self.steps {
            out.write_record([s.n.to_string(), s.gauge.to_string(), s.bound.to_string(), s.support_ok.to_string()])?;
        }
        out.flush()
    }

    /// Report with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self { wall_time_ms: 0, ..self.clone() }
    }

    pub fn summary_line(&self) -> String {
        format!("{:<40} {:<22} ({} steps, {} ms)", self.config.report_id(), self.verdict, self.steps.len(), self.wall_time_ms)
    }
}
