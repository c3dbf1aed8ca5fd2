//! The problem-file format shared by every subcommand.
//!
//! Problem files are JSON. Rationals are strings `"a/b"` or integer strings;
//! subsets are named by their member labels sorted in space order and joined
//! with commas, the empty set being the empty string. Set-function tables
//! must be total: one entry per subset under its canonical name. Constraint
//! rows address joint masses by `"x|y"` variable names.
//!
//! Each subcommand requires an exact set of fields; missing and extraneous
//! fields are both rejected, with the field named in the diagnostic.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use lowprob::dempster::MultivaluedMap;
use lowprob::family::pair_index;
use lowprob::lp::{Constraint, Relation};
use lowprob::rational::parse_rational;
use lowprob::setfun::{ProbMeasure, SetFunction};
use lowprob::space::FiniteSpace;
use lowprob::Rational;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub x: Option<Vec<String>>,
    pub y: Option<Vec<String>>,
    pub p: Option<BTreeMap<String, String>>,
    pub gamma: Option<BTreeMap<String, Vec<String>>>,
    pub ell: Option<BTreeMap<String, String>>,
    pub lambda_y: Option<BTreeMap<String, BTreeMap<String, String>>>,
    pub constraints: Option<Vec<ConstraintRow>>,
    pub query: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintRow {
    pub coeffs: BTreeMap<String, String>,
    pub rel: String,
    pub rhs: String,
}

/// Field names as they appear in files, used for presence checks.
pub const FIELDS: &[&str] = &["x", "y", "p", "gamma", "ell", "lambda_y", "constraints", "query"];

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    fn has(&self, field: &str) -> bool {
        match field {
            "x" => self.x.is_some(),
            "y" => self.y.is_some(),
            "p" => self.p.is_some(),
            "gamma" => self.gamma.is_some(),
            "ell" => self.ell.is_some(),
            "lambda_y" => self.lambda_y.is_some(),
            "constraints" => self.constraints.is_some(),
            "query" => self.query.is_some(),
            _ => unreachable!("unknown field name {field}"),
        }
    }

    /// Exactly the `required` fields plus optionally the `optional` ones may
    /// be present.
    pub fn require_fields(&self, required: &[&str], optional: &[&str]) -> Result<(), String> {
        for field in required {
            if !self.has(field) {
                return Err(format!("missing required field {field:?}"));
            }
        }
        for field in FIELDS {
            if self.has(field) && !required.contains(field) && !optional.contains(field) {
                return Err(format!("field {field:?} does not belong in this command's input"));
            }
        }
        Ok(())
    }

    pub fn x_space(&self) -> Result<FiniteSpace, String> {
        let labels = self.x.as_ref().ok_or("missing required field \"x\"")?;
        FiniteSpace::new(labels.clone()).map_err(|e| format!("field \"x\": {e}"))
    }

    pub fn y_space(&self) -> Result<FiniteSpace, String> {
        let labels = self.y.as_ref().ok_or("missing required field \"y\"")?;
        FiniteSpace::new(labels.clone()).map_err(|e| format!("field \"y\": {e}"))
    }

    /// The point-mass table `p` over the given space; every element must be
    /// assigned exactly once.
    pub fn measure(&self, space: &FiniteSpace) -> Result<ProbMeasure, String> {
        let table = self.p.as_ref().ok_or("missing required field \"p\"")?;
        for key in table.keys() {
            if space.index_of(key).is_none() {
                return Err(format!("field \"p\": {key:?} is not an element of the space"));
            }
        }
        let masses = space
            .labels()
            .iter()
            .map(|l| {
                let s = table
                    .get(l)
                    .ok_or_else(|| format!("field \"p\": no mass for element {l:?}"))?;
                parse_rational(s).map_err(|e| format!("field \"p\" at {l:?}: {e}"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        ProbMeasure::new(space.clone(), masses).map_err(|e| format!("field \"p\": {e}"))
    }

    /// The mapping `gamma` from `y` labels to lists of `x` labels.
    pub fn mapping(
        &self,
        domain: &FiniteSpace,
        codomain: &FiniteSpace,
    ) -> Result<MultivaluedMap, String> {
        let table = self.gamma.as_ref().ok_or("missing required field \"gamma\"")?;
        for key in table.keys() {
            if domain.index_of(key).is_none() {
                return Err(format!("field \"gamma\": {key:?} is not an element of y"));
            }
        }
        let images = domain
            .labels()
            .iter()
            .map(|l| {
                let labels = table
                    .get(l)
                    .ok_or_else(|| format!("field \"gamma\": no image for element {l:?}"))?;
                codomain
                    .subset_from_labels(labels)
                    .map_err(|e| format!("field \"gamma\" at {l:?}: {e}"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        MultivaluedMap::new(domain.clone(), codomain.clone(), images)
            .map_err(|e| format!("field \"gamma\": {e}"))
    }

    /// A total set-function table keyed by canonical subset names.
    fn set_function_from(
        field: &str,
        table: &BTreeMap<String, String>,
        space: &FiniteSpace,
    ) -> Result<SetFunction, String> {
        if table.len() != space.num_subsets() {
            return Err(format!(
                "field {field:?}: {} entries, a space of {} elements needs {}",
                table.len(),
                space.size(),
                space.num_subsets()
            ));
        }
        let values = space
            .subsets()
            .map(|subset| {
                let name = subset.name();
                let s = table
                    .get(&name)
                    .ok_or_else(|| format!("field {field:?}: no value for subset {name:?}"))?;
                parse_rational(s).map_err(|e| format!("field {field:?} at {name:?}: {e}"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        SetFunction::new(space.clone(), values).map_err(|e| format!("field {field:?}: {e}"))
    }

    pub fn ell(&self, space: &FiniteSpace) -> Result<SetFunction, String> {
        let table = self.ell.as_ref().ok_or("missing required field \"ell\"")?;
        Self::set_function_from("ell", table, space)
    }

    /// One conditional bound table per element of `y`, each over `x`.
    pub fn lambdas(
        &self,
        y_space: &FiniteSpace,
        x_space: &FiniteSpace,
    ) -> Result<Vec<SetFunction>, String> {
        let tables = self
            .lambda_y
            .as_ref()
            .ok_or("missing required field \"lambda_y\"")?;
        for key in tables.keys() {
            if y_space.index_of(key).is_none() {
                return Err(format!("field \"lambda_y\": {key:?} is not an element of y"));
            }
        }
        y_space
            .labels()
            .iter()
            .map(|l| {
                let table = tables
                    .get(l)
                    .ok_or_else(|| format!("field \"lambda_y\": no table for element {l:?}"))?;
                Self::set_function_from("lambda_y", table, x_space)
            })
            .collect()
    }

    /// Constraint rows over `"x|y"` variables, in row order.
    pub fn constraint_rows(
        &self,
        x_space: &FiniteSpace,
        y_space: &FiniteSpace,
    ) -> Result<Vec<Constraint>, String> {
        let rows = self
            .constraints
            .as_ref()
            .ok_or("missing required field \"constraints\"")?;
        let ny = y_space.size();
        let width = x_space.size() * ny;
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                let mut coeffs = vec![Rational::from_integer(0.into()); width];
                for (var, value) in &row.coeffs {
                    let (xl, yl) = var.split_once('|').ok_or_else(|| {
                        format!("constraint {i}: variable {var:?} is not of the form \"x|y\"")
                    })?;
                    let xi = x_space
                        .index_of(xl)
                        .ok_or_else(|| format!("constraint {i}: {xl:?} is not an element of x"))?;
                    let yi = y_space
                        .index_of(yl)
                        .ok_or_else(|| format!("constraint {i}: {yl:?} is not an element of y"))?;
                    coeffs[pair_index(xi, yi, ny)] =
                        parse_rational(value).map_err(|e| format!("constraint {i}: {e}"))?;
                }
                let relation = match row.rel.as_str() {
                    "<=" => Relation::Le,
                    "=" => Relation::Eq,
                    ">=" => Relation::Ge,
                    other => {
                        return Err(format!(
                            "constraint {i}: relation {other:?} is not one of \"<=\", \"=\", \">=\""
                        ))
                    }
                };
                let rhs = parse_rational(&row.rhs).map_err(|e| format!("constraint {i}: {e}"))?;
                Ok(Constraint::new(coeffs, relation, rhs))
            })
            .collect()
    }
}
