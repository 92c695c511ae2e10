//! The JSON report every subcommand emits, plus its CSV table.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::check::{BoundSource, DegreeCheck, Hypothesis};
use crate::error::AlgebraError;
use crate::linalg::Scalar;
use crate::sigma::{FormCollection, Projection};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
    pub hypothesis: Hypothesis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<usize>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, holds: bool, hypothesis: Hypothesis) -> Self {
        Verdict { name: name.into(), holds, hypothesis, degree_bound: None, first_failure: None }
    }

    pub fn from_check(name: impl Into<String>, check: &DegreeCheck) -> Self {
        Verdict {
            name: name.into(),
            holds: check.holds,
            hypothesis: check.hypothesis,
            degree_bound: Some(check.degree_bound),
            first_failure: check.first_failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `"rational"`, `"prime:p"`, or absent for field-free commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub degree_bounds: Vec<BoundRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genericity: Option<Genericity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionRecord>,
    pub version: String,
}

impl Provenance {
    pub fn new(field: Option<String>) -> Self {
        Provenance {
            field,
            degree_bounds: Vec::new(),
            genericity: None,
            projection: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn bound(&mut self, name: impl Into<String>, value: usize, source: BoundSource) {
        self.degree_bounds.push(BoundRecord { name: name.into(), value, source });
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub name: String,
    pub value: usize,
    pub source: BoundSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genericity {
    pub generic_support: bool,
    pub rank: usize,
    pub num_vars: usize,
    pub support_size: usize,
    pub total_multiplicity: usize,
}

impl Genericity {
    pub fn of<F: Scalar>(sigma: &FormCollection<F>) -> Self {
        Genericity {
            generic_support: sigma.is_generic_support(),
            rank: sigma.rank(),
            num_vars: sigma.nvars(),
            support_size: sigma.support_size(),
            total_multiplicity: sigma.total(),
        }
    }

    pub fn hypothesis(&self) -> Hypothesis {
        if self.generic_support && self.rank == self.num_vars {
            Hypothesis::Satisfied
        } else {
            Hypothesis::Violated
        }
    }
}

/// New variable `y_t` is the form `basis[t]`; coefficients as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionRecord {
    pub source_vars: usize,
    pub target_vars: usize,
    pub pivots: Vec<usize>,
    pub basis: Vec<Vec<String>>,
}

impl<F: Scalar> From<&Projection<F>> for ProjectionRecord {
    fn from(p: &Projection<F>) -> Self {
        ProjectionRecord {
            source_vars: p.source_vars,
            target_vars: p.target_vars,
            pivots: p.pivots.clone(),
            basis: p.basis.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
        }
    }
}

impl Report {
    /// Exit status under `--check`: a failed verdict whose hypotheses hold
    /// is a verification failure; one whose hypotheses fail is reported with
    /// the hypothesis code.
    pub fn check_status(&self) -> i32 {
        let failed = self.verdicts.iter().filter(|v| !v.holds);
        if failed.clone().any(|v| v.hypothesis != Hypothesis::Violated) {
            EXIT_VERIFICATION
        } else if failed.count() > 0 {
            EXIT_HYPOTHESIS
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// A flat table for `--format csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write_csv(&self, out: impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()
    }
}

/// Failure document printed instead of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub command: String,
    pub error: ErrorBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub exit_code: i32,
}

/// Exit code and kind for a library error.
pub fn classify(e: &AlgebraError) -> (i32, &'static str) {
    match e {
        AlgebraError::NonGenericSupport | AlgebraError::RankDeficient { .. } => (EXIT_HYPOTHESIS, "hypothesis"),
        AlgebraError::Parse(_)
        | AlgebraError::InvalidParameter(_)
        | AlgebraError::DegreeBoundTooSmall { .. }
        | AlgebraError::InvalidModulus(_)
        | AlgebraError::ZeroForm
        | AlgebraError::ZeroMultiplicity
        | AlgebraError::DimensionMismatch(_) => (EXIT_USAGE, "usage"),
        _ => (EXIT_VERIFICATION, "computation"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(verdicts: Vec<Verdict>) -> Report {
        Report {
            command: "t".into(),
            parameters: BTreeMap::new(),
            results: Value::Null,
            verdicts,
            provenance: Provenance::new(None),
        }
    }

    #[test]
    fn status_codes() {
        assert_eq!(report(vec![Verdict::new("a", true, Hypothesis::Satisfied)]).check_status(), EXIT_OK);
        assert_eq!(report(vec![Verdict::new("a", false, Hypothesis::Violated)]).check_status(), EXIT_HYPOTHESIS);
        let mixed = vec![Verdict::new("a", false, Hypothesis::Violated), Verdict::new("b", false, Hypothesis::NotRequired)];
        assert_eq!(report(mixed).check_status(), EXIT_VERIFICATION);
    }

    #[test]
    fn csv_quotes_fields() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["x + y".into(), "1,2".into()]);
        let mut out = Vec::new();
        t.write_csv(&mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "a,b\nx + y,\"1,2\"\n");
    }
}
