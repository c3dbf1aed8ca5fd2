//! The machine-readable report emitted by every subcommand.
//!
//! Reports are JSON with a fixed field order; two runs on the same input
//! produce byte-identical output except for `elapsed_ms`, which is always the
//! last line. Every numeric field is an exact rational string. With
//! `--decimal`, rows additionally carry decimal renderings, explicitly
//! labeled approximate.

use std::collections::BTreeMap;

use serde::Serialize;

use lowprob::rational::{decimal_approx, format_rational};
use lowprob::Rational;

pub const SCHEMA_VERSION: &str = "1";
pub const DECIMAL_DIGITS: u32 = 6;
pub const DECIMAL_NOTE: &str =
    "fields ending in _decimal are approximate renderings; the rational strings are exact";

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal_note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<PredicateFlags>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Vec<VerifyRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: String, input: String) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            input,
            space: None,
            decimal_note: None,
            table: None,
            flags: None,
            witnesses: None,
            verification: None,
            verdict: None,
            elapsed_ms: 0,
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// One subset's results: lower and upper values plus, when the full table is
/// known, the mass-function value.
#[derive(Debug, Serialize)]
pub struct TableRow {
    pub set: String,
    pub lower: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_decimal: Option<String>,
    pub upper: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass_decimal: Option<String>,
}

impl TableRow {
    pub fn new(
        set: String,
        lower: &Rational,
        upper: &Rational,
        mass: Option<&Rational>,
        decimal: bool,
    ) -> TableRow {
        TableRow {
            set,
            lower: format_rational(lower),
            lower_decimal: decimal.then(|| decimal_approx(lower, DECIMAL_DIGITS)),
            upper: format_rational(upper),
            upper_decimal: decimal.then(|| decimal_approx(upper, DECIMAL_DIGITS)),
            mass: mass.map(format_rational),
            mass_decimal: match (decimal, mass) {
                (true, Some(m)) => Some(decimal_approx(m, DECIMAL_DIGITS)),
                _ => None,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PredicateFlags {
    pub lower_probability: bool,
    pub dominated: bool,
    pub lower_envelope: bool,
    /// `None` when only incomplete (sampled) evidence was gathered and no
    /// counterexample surfaced.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_monotone: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_monotone: Option<bool>,
    pub belief_function: bool,
    /// `"exhaustive"` or `"sampled seed=N samples=M"` (incomplete evidence).
    pub monotonicity_evidence: String,
}

#[derive(Debug, Serialize)]
pub struct Witnesses {
    /// Disjoint pair breaking superadditivity or its dual subadditivity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_probability: Option<[String; 2]>,
    /// A measure dominating the function, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominating_measure: Option<BTreeMap<String, String>>,
    /// First subset where the natural envelope exceeds the function.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub envelope_gap: Option<EnvelopeGapWitness>,
    /// Violating collections for the monotonicity orders.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_monotone: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_monotone: Option<Vec<String>>,
    /// First subset carrying negative mass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negative_mass: Option<MassWitness>,
}

impl Witnesses {
    pub fn empty() -> Witnesses {
        Witnesses {
            lower_probability: None,
            dominating_measure: None,
            envelope_gap: None,
            two_monotone: None,
            three_monotone: None,
            negative_mass: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EnvelopeGapWitness {
    pub set: String,
    pub value: String,
    pub envelope: String,
}

#[derive(Debug, Serialize)]
pub struct MassWitness {
    pub set: String,
    pub mass: String,
}

/// One subset's cross-check in `verify`: both routes and their agreement.
#[derive(Debug, Serialize)]
pub struct VerifyRow {
    pub set: String,
    pub family_minimum: String,
    pub reduced_minimum: String,
    pub equal: bool,
}
