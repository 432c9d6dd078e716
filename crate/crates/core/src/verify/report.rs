//! Report plumbing shared by every verification suite.
//!
//! A report is a pure function of (suite, parameters, seed): cases are
//! sorted by id, parameters live in an ordered map, and serialization is
//! canonical, so identical inputs produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One verified statement instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyCase {
    /// Stable identifier; reports are sorted by this.
    pub case_id: String,
    /// Which claim the case instantiates.
    pub statement: String,
    /// Serialized predicted value (the claim's side).
    pub expected: String,
    /// Serialized computed value (the authoritative side).
    pub actual: String,
    pub pass: bool,
}

/// Aggregate counts; always consistent with the case list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A complete suite run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    /// Seed used by randomized sub-suites (0 when the suite draws nothing).
    pub seed: u64,
    /// Header remarks: conventions adopted, documented exceptions hit,
    /// sub-checks skipped and why.
    pub notes: Vec<String>,
    pub cases: Vec<VerifyCase>,
    pub summary: VerifySummary,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<VerifyReport> {
        Ok(serde_json::from_str(text)?)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let _ = writeln!(out, "  seed = {}", self.seed);
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for case in &self.cases {
            let _ = writeln!(
                out,
                "[{}] {} :: {}",
                if case.pass { "pass" } else { "FAIL" },
                case.case_id,
                case.statement
            );
            if !case.pass {
                let _ = writeln!(out, "       expected: {}", case.expected);
                let _ = writeln!(out, "       actual:   {}", case.actual);
            }
        }
        let _ = writeln!(
            out,
            "summary: {} total, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

/// Incremental construction; `build` sorts and summarizes.
pub struct ReportBuilder {
    suite: String,
    params: BTreeMap<String, String>,
    seed: u64,
    notes: Vec<String>,
    cases: Vec<VerifyCase>,
}

impl ReportBuilder {
    pub fn new(suite: &str) -> ReportBuilder {
        ReportBuilder {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            seed: 0,
            notes: Vec::new(),
            cases: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> ReportBuilder {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(mut self, seed: u64) -> ReportBuilder {
        self.seed = seed;
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn case(
        &mut self,
        case_id: impl Into<String>,
        statement: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
        pass: bool,
    ) {
        self.cases.push(VerifyCase {
            case_id: case_id.into(),
            statement: statement.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        });
    }

    /// A case that passes exactly when the two serialized sides agree.
    pub fn eq_case(
        &mut self,
        case_id: impl Into<String>,
        statement: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        let e = expected.to_string();
        let a = actual.to_string();
        let pass = e == a;
        self.cases.push(VerifyCase {
            case_id: case_id.into(),
            statement: statement.into(),
            expected: e,
            actual: a,
            pass,
        });
    }

    pub fn build(mut self) -> VerifyReport {
        self.cases.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        let total = self.cases.len();
        let passed = self.cases.iter().filter(|c| c.pass).count();
        VerifyReport {
            suite: self.suite,
            params: self.params,
            seed: self.seed,
            notes: self.notes,
            cases: self.cases,
            summary: VerifySummary {
                total,
                passed,
                failed: total - passed,
            },
        }
    }
}
