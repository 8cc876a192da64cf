//! JSON report objects and their validator.
//!
//! Every verification command emits one of two shapes, both documented as JSON
//! Schema under `schemas/`:
//!
//! * [`Report`]: `{verdict, witness_prime?, bound, per_equation: [{schema, verdict, counterexample?}], f_value?}`
//! * [`ExampleReport`]: the polynomial-example summary.
//!
//! [`validate_report`] and [`validate_example_report`] accept exactly the
//! documented shapes plus their cross-field rules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::models::ModelVerdict;

pub const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");
pub const EXAMPLE_REPORT_SCHEMA: &str = include_str!("../schemas/example-report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportVerdict {
    /// Some prime field satisfies every equation: not an initial specification of ℚ₀.
    NotASpec,
    /// Every prime up to `bound` falsifies the set. Evidence only.
    NoWitnessBelow,
    WitnessFound,
    Confirmed,
    Refuted,
}

impl ReportVerdict {
    fn carries_prime(self) -> bool {
        !matches!(self, ReportVerdict::NoWitnessBelow)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationVerdict {
    Satisfied,
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationReport {
    pub schema: String,
    pub verdict: EquationVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, String>>,
}

impl EquationReport {
    pub fn new(schema: impl Into<String>, verdict: &ModelVerdict) -> EquationReport {
        EquationReport {
            schema: schema.into(),
            verdict: if verdict.is_satisfied() {
                EquationVerdict::Satisfied
            } else {
                EquationVerdict::Falsified
            },
            counterexample: verdict.counterexample().map(|a| {
                a.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub verdict: ReportVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_prime: Option<u64>,
    pub bound: u64,
    pub per_equation: Vec<EquationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_value: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleReport {
    /// Every prime up to `bound` was searched for a root of the polynomial.
    pub bound: u64,
    pub primes_checked: u64,
    /// Primes without a root; empty when the claim holds up to `bound`.
    pub primes_without_root: Vec<u64>,
    /// Largest least root encountered, with its prime.
    pub largest_least_root: Option<[u64; 2]>,
    pub no_rational_root: bool,
    /// Odd primes up to `bound` at which none of 2, 3, 6 is a residue.
    pub residue_cover_failures: Vec<u64>,
    pub gaussian: GaussianReport,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianReport {
    pub samples: u64,
    pub seed: u64,
    pub forced_points: u64,
    pub i_squared_plus_one_is_zero: bool,
    pub unit_equation: EquationReport,
}

impl ExampleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Shape(#[from] serde_json::Error),
    #[error("inconsistent report: {0}")]
    Rule(String),
}

fn rule(msg: impl Into<String>) -> ReportError {
    ReportError::Rule(msg.into())
}

fn check_equation_entry(e: &EquationReport) -> Result<(), ReportError> {
    match (e.verdict, &e.counterexample) {
        (EquationVerdict::Satisfied, Some(_)) => {
            Err(rule(format!("{}: satisfied entry carries a counterexample", e.schema)))
        }
        (EquationVerdict::Falsified, None) => {
            Err(rule(format!("{}: falsified entry lacks a counterexample", e.schema)))
        }
        _ => Ok(()),
    }
}

/// Parses and checks a [`Report`] document.
pub fn validate_report(json: &str) -> Result<Report, ReportError> {
    let r: Report = serde_json::from_str(json)?;
    if r.verdict.carries_prime() != r.witness_prime.is_some() {
        return Err(rule("witness_prime must be present exactly when a prime is reported"));
    }
    if let Some(p) = r.witness_prime {
        if p > r.bound {
            return Err(rule("witness_prime exceeds bound"));
        }
    }
    for e in &r.per_equation {
        check_equation_entry(e)?;
    }
    let all_satisfied = r
        .per_equation
        .iter()
        .all(|e| e.verdict == EquationVerdict::Satisfied);
    match r.verdict {
        ReportVerdict::NotASpec | ReportVerdict::WitnessFound | ReportVerdict::Confirmed
            if !all_satisfied =>
        {
            Err(rule("a witness verdict requires every equation to be satisfied"))
        }
        ReportVerdict::Refuted if all_satisfied => {
            Err(rule("a refuted verdict requires a falsified equation"))
        }
        _ => Ok(r),
    }
}

/// Parses and checks an [`ExampleReport`] document.
pub fn validate_example_report(json: &str) -> Result<ExampleReport, ReportError> {
    let r: ExampleReport = serde_json::from_str(json)?;
    check_equation_entry(&r.gaussian.unit_equation)?;
    let expected = r.primes_without_root.is_empty()
        && r.no_rational_root
        && r.residue_cover_failures.is_empty()
        && r.gaussian.i_squared_plus_one_is_zero
        && r.gaussian.unit_equation.verdict == EquationVerdict::Satisfied;
    if expected != r.holds {
        return Err(rule("holds disagrees with the individual checks"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            verdict: ReportVerdict::NotASpec,
            witness_prime: Some(3),
            bound: 100,
            per_equation: vec![EquationReport::new("L:1", &ModelVerdict::Satisfied)],
            f_value: None,
        }
    }

    #[test]
    fn round_trip() {
        let json = sample().to_json();
        assert_eq!(validate_report(&json).unwrap(), sample());
        assert!(!json.contains("f_value"));
    }

    #[test]
    fn rejects_unknown_fields_and_bad_rules() {
        assert!(validate_report(r#"{"verdict":"not_a_spec","witness_prime":3,"bound":10,"per_equation":[],"extra":1}"#).is_err());
        assert!(validate_report(r#"{"verdict":"not_a_spec","bound":10,"per_equation":[]}"#).is_err());
        assert!(validate_report(r#"{"verdict":"no_witness_below","witness_prime":3,"bound":10,"per_equation":[]}"#).is_err());
        assert!(validate_report(r#"{"verdict":"no_witness_below","bound":10,"per_equation":[{"schema":"L:2","verdict":"falsified"}]}"#).is_err());
        assert!(validate_report(r#"{"verdict":"not_a_spec","witness_prime":3,"bound":10,"per_equation":[{"schema":"L:2","verdict":"falsified","counterexample":{"x":"1"}}]}"#).is_err());
        assert!(validate_report(r#"{"verdict":"no_witness_below","bound":10,"per_equation":[{"schema":"L:2","verdict":"falsified","counterexample":{"x1":"0","x2":"1"}}]}"#).is_ok());
    }

    #[test]
    fn shipped_schemas_are_json() {
        for doc in [REPORT_SCHEMA, EXAMPLE_REPORT_SCHEMA] {
            let v: serde_json::Value = serde_json::from_str(doc).unwrap();
            assert_eq!(v["type"], "object");
            assert_eq!(v["additionalProperties"], false);
        }
        let v: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
        let required: Vec<&str> = v["required"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap())
            .collect();
        assert_eq!(required, ["verdict", "bound", "per_equation"]);
    }
}
