//! Verification suites and their machine-readable report.
//!
//! A suite is a list of named checks. Checks run through [`Exec`] and the
//! report is ordered by check id, so the policy never changes the output.
//! Elapsed times are recorded only when `timings` is set; otherwise every
//! `ms` field is 0 and reports are byte-identical across runs.

mod checks;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::exactfield::Rat;
use crate::exec::Exec;
use crate::heisrep::{g7_table, sl2_table, G7Table, Sl2Table};
use crate::kleinmoduli::{sample_parameters, Coeff};

pub const REPORT_VERSION: &str = concat!("veritool/", env!("CARGO_PKG_VERSION"), "/report-1");

#[derive(Debug, Error)]
pub enum VeriError {
    #[error("unknown suite {0:?}; expected appendix, syzygy, moduli or all")]
    UnknownSuite(String),
    #[error("report serialisation failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Appendix,
    Syzygy,
    Moduli,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Appendix => "appendix",
            Suite::Syzygy => "syzygy",
            Suite::Moduli => "moduli",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VeriError;

    fn from_str(s: &str) -> Result<Suite, VeriError> {
        [Suite::Appendix, Suite::Syzygy, Suite::Moduli, Suite::All].into_iter().find(|x| x.name() == s).ok_or_else(|| VeriError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A displayed value disagrees with a computation that an independent
    /// route confirms, or a budget ran out. Never changes the exit code.
    Flagged,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub details: String,
    pub ms: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub suite: Suite,
    pub coeff: String,
    pub budget_degree: u32,
    pub samples: usize,
    pub alphas: usize,
    pub t: Option<Vec<String>>,
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub config: ConfigEcho,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> Result<String, VeriError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Plain-text projection of the report.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} seed={} suite={} coeff={} budget={}", self.version, self.seed, self.config.suite, self.config.coeff, self.config.budget_degree)?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Flagged => "FLAG",
            };
            writeln!(f, "{tag:<4} {:<28} {}", c.id, c.details)?;
        }
        write!(f, "{} pass, {} fail, {} flagged", self.summary.pass, self.summary.fail, self.summary.flagged)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Field for the resolution checks; `None` means F₃₁.
    pub coeff: Option<Coeff>,
    pub budget_degree: u32,
    /// Number of sampled parameter points.
    pub samples: usize,
    /// Number of random 3×2 matrices.
    pub alphas: usize,
    /// Run the parameter checks at this point instead of sampling.
    pub t: Option<Vec<Rat>>,
    pub timings: bool,
    /// Wall-clock limit of the full Betti computation before it is flagged.
    pub betti_seconds: u64,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, coeff: None, budget_degree: 8, samples: 20, alphas: 200, t: None, timings: false, betti_seconds: 900, exec: Exec::default() }
    }
}

impl VerifyConfig {
    pub fn resolution_coeff(&self) -> Coeff {
        self.coeff.unwrap_or(Coeff::Prime(31))
    }

    pub fn parameters(&self) -> Vec<Vec<Rat>> {
        match &self.t {
            Some(t) => vec![t.clone()],
            None => sample_parameters(self.seed, self.samples),
        }
    }
}

/// Shared inputs, built once per run.
pub struct Context {
    pub cfg: VerifyConfig,
    g7: OnceLock<G7Table>,
    sl2: OnceLock<Sl2Table>,
}

impl Context {
    pub fn new(cfg: VerifyConfig) -> Context {
        Context { cfg, g7: OnceLock::new(), sl2: OnceLock::new() }
    }

    pub fn g7(&self) -> &G7Table {
        self.g7.get_or_init(g7_table)
    }

    pub fn sl2(&self) -> &Sl2Table {
        self.sl2.get_or_init(sl2_table)
    }
}

/// What a check reports before it is timed and labelled.
pub struct Outcome {
    pub status: Status,
    pub details: String,
}

impl Outcome {
    pub fn pass(details: impl Into<String>) -> Outcome {
        Outcome { status: Status::Pass, details: details.into() }
    }

    pub fn fail(details: impl Into<String>) -> Outcome {
        Outcome { status: Status::Fail, details: details.into() }
    }

    pub fn flagged(details: impl Into<String>) -> Outcome {
        Outcome { status: Status::Flagged, details: details.into() }
    }

    pub fn verdict(ok: bool, details: impl Into<String>) -> Outcome {
        if ok {
            Outcome::pass(details)
        } else {
            Outcome::fail(details)
        }
    }
}

type CheckFn = fn(&Context) -> Result<Outcome, Box<dyn std::error::Error + Send + Sync>>;

pub struct CheckSpec {
    pub id: &'static str,
    pub suite: Suite,
    pub run: CheckFn,
}

/// Every check, in id order.
pub fn registry() -> Vec<CheckSpec> {
    let mut v = checks::all();
    v.sort_by_key(|c| c.id);
    v
}

pub fn run_check(spec: &CheckSpec, ctx: &Context) -> CheckResult {
    let start = Instant::now();
    let outcome = match (spec.run)(ctx) {
        Ok(o) => o,
        Err(e) => Outcome::fail(format!("error: {e}")),
    };
    let ms = if ctx.cfg.timings { start.elapsed().as_millis() as u64 } else { 0 };
    CheckResult { id: spec.id.to_string(), status: outcome.status, details: outcome.details, ms }
}

pub fn verify(suite: Suite, cfg: VerifyConfig) -> Report {
    verify_only(suite, cfg, |_| true)
}

/// Runs the checks of `suite` whose id passes `filter`.
pub fn verify_only(suite: Suite, cfg: VerifyConfig, filter: impl Fn(&str) -> bool) -> Report {
    let exec = cfg.exec;
    let echo = ConfigEcho {
        suite,
        coeff: cfg.resolution_coeff().to_string(),
        budget_degree: cfg.budget_degree,
        samples: if cfg.t.is_some() { 1 } else { cfg.samples },
        alphas: cfg.alphas,
        t: cfg.t.as_ref().map(|t| t.iter().map(|c| c.to_string()).collect()),
        timings: cfg.timings,
    };
    let seed = cfg.seed;
    let ctx = Context::new(cfg);
    let specs: Vec<CheckSpec> = registry().into_iter().filter(|c| suite.includes(c.suite) && filter(c.id)).collect();
    let mut checks = exec.map(&specs, |s| run_check(s, &ctx));
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let mut summary = Summary::default();
    for c in &checks {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Flagged => summary.flagged += 1,
        }
    }
    Report { version: REPORT_VERSION.to_string(), seed, config: echo, checks, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("moduli".parse::<Suite>().unwrap(), Suite::Moduli);
        assert!(matches!("everything".parse::<Suite>(), Err(VeriError::UnknownSuite(_))));
        assert!(Suite::All.includes(Suite::Syzygy));
        assert!(!Suite::Appendix.includes(Suite::Syzygy));
    }

    #[test]
    fn ids_are_unique_and_prefixed() {
        let r = registry();
        let mut ids: Vec<_> = r.iter().map(|c| c.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), r.len());
        for c in &r {
            assert!(c.id.starts_with(c.suite.name()), "{}", c.id);
        }
    }

    #[test]
    fn small_report_is_deterministic() {
        let cfg = VerifyConfig { samples: 2, alphas: 10, ..Default::default() };
        let pick = |id: &str| id == "moduli.klein_quartic" || id == "syzygy.b_matrices";
        let a = verify_only(Suite::All, cfg.clone(), pick).to_json().unwrap();
        let b = verify_only(Suite::All, VerifyConfig { exec: Exec::Seq, ..cfg }, pick).to_json().unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"status\": \"pass\""));
    }
}
