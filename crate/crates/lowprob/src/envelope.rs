//! The lower-probability taxonomy: superadditivity, dominance, envelopes.
//!
//! A normalized set function may or may not be a lower probability
//! (superadditive, with subadditive upper dual); independently it may or may
//! not be dominated by some probability measure; and a dominated function may
//! or may not already equal the pointwise minimum of its dominating measures.
//! Each predicate here answers one of those questions with an exact witness,
//! and [`natural_envelope`] tightens any dominated function to the minimum
//! over its dominating measures, one linear program per subset.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{solve_min, Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;
use crate::setfun::{upper_from_lower, ProbMeasure, SetFunction};
use crate::space::Subset;

/// Result of the lower-probability predicate.
#[derive(Clone, Debug)]
pub struct LowerProbabilityCheck {
    pub holds: bool,
    /// A disjoint pair violating superadditivity of the function or
    /// subadditivity of its upper dual.
    pub witness: Option<(Subset, Subset)>,
}

/// A strict gap between a function and its natural envelope.
#[derive(Clone, Debug)]
pub struct EnvelopeGap {
    pub subset: Subset,
    pub lower_value: Rational,
    pub envelope_value: Rational,
}

/// Result of the lower-envelope predicate.
#[derive(Clone, Debug)]
pub struct EnvelopeCheck {
    pub holds: bool,
    pub gap: Option<EnvelopeGap>,
}

/// Full classification of one normalized set function, as reported by the
/// command-line `check`.
#[derive(Clone, Debug)]
pub struct LowerProbabilityReport {
    pub is_lower_probability: bool,
    pub lower_probability_witness: Option<(Subset, Subset)>,
    pub is_dominated: bool,
    pub dominating_witness: Option<ProbMeasure>,
    pub is_lower_envelope: bool,
    pub envelope_gap_witness: Option<EnvelopeGap>,
}

/// Superadditivity on disjoint pairs, plus subadditivity of the upper dual.
/// Scans pairs in ascending mask order and reports the first violation.
pub fn is_lower_probability(ell: &SetFunction) -> Result<LowerProbabilityCheck> {
    ell.require_normalized("lower-probability input")?;
    let upper = upper_from_lower(ell)?;
    let space = ell.space();
    let n = space.num_subsets() as u32;
    for a in 0..n {
        for b in (a + 1)..n {
            if a & b != 0 {
                continue;
            }
            let union = a | b;
            let super_ok = ell.value_at_mask(union) >= &(ell.value_at_mask(a) + ell.value_at_mask(b));
            let sub_ok =
                upper.value_at_mask(union) <= &(upper.value_at_mask(a) + upper.value_at_mask(b));
            if !(super_ok && sub_ok) {
                return Ok(LowerProbabilityCheck {
                    holds: false,
                    witness: Some((space.subset(a)?, space.subset(b)?)),
                });
            }
        }
    }
    Ok(LowerProbabilityCheck { holds: true, witness: None })
}

/// Constraints of `{ q a probability measure, q(E) >= ell(E) for all E }`
/// over the point masses of `q`.
fn dominating_measure_constraints(ell: &SetFunction) -> Vec<Constraint> {
    let space = ell.space();
    let n = space.size();
    let mut rows = Vec::with_capacity(space.num_subsets() + 1);
    rows.push(Constraint::new(
        vec![Rational::one(); n],
        Relation::Eq,
        Rational::one(),
    ));
    for mask in 0..space.num_subsets() as u32 {
        let coeffs = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rows.push(Constraint::new(coeffs, Relation::Ge, ell.value_at_mask(mask).clone()));
    }
    rows
}

fn minimize_over_dominating(ell: &SetFunction, objective: Vec<Rational>) -> LpOutcome {
    let lp = LinearProgram::new(objective, dominating_measure_constraints(ell), true)
        .expect("rows are dimensioned to the space");
    solve_min(&lp)
}

/// Searches for a probability measure dominating `ell`; `Some(q)` holds a
/// particular dominating measure, `None` means none exists.
pub fn is_dominated(ell: &SetFunction) -> Result<Option<ProbMeasure>> {
    ell.require_normalized("dominance input")?;
    let space = ell.space();
    match minimize_over_dominating(ell, vec![Rational::zero(); space.size()]) {
        LpOutcome::Optimal { witness, .. } => {
            Ok(Some(ProbMeasure::new(space.clone(), witness)?))
        }
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => unreachable!("the dominating set lives inside the simplex"),
    }
}

/// The tightest envelope above `ell`: subset by subset, the exact minimum of
/// `q(A)` over measures dominating `ell`. Errors when nothing dominates.
pub fn natural_envelope(ell: &SetFunction) -> Result<SetFunction> {
    ell.require_normalized("natural-envelope input")?;
    let space = ell.space().clone();
    let n = space.size();
    let mut values = Vec::with_capacity(space.num_subsets());
    for mask in 0..space.num_subsets() as u32 {
        let objective = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        match minimize_over_dominating(ell, objective) {
            LpOutcome::Optimal { value, .. } => values.push(value),
            LpOutcome::Infeasible => return Err(Error::NotDominated),
            LpOutcome::Unbounded => unreachable!("the dominating set lives inside the simplex"),
        }
    }
    SetFunction::new(space, values)
}

/// Dominated and already equal to its natural envelope. On a strict gap,
/// reports the first subset (ascending mask order) where the envelope
/// exceeds the function.
pub fn is_lower_envelope(ell: &SetFunction) -> Result<EnvelopeCheck> {
    ell.require_normalized("lower-envelope input")?;
    let envelope = match natural_envelope(ell) {
        Ok(e) => e,
        Err(Error::NotDominated) => return Ok(EnvelopeCheck { holds: false, gap: None }),
        Err(e) => return Err(e),
    };
    for (subset, tight) in envelope.iter() {
        let given = ell.value(&subset);
        if tight != given {
            debug_assert!(tight > given, "natural envelope fell below its input");
            return Ok(EnvelopeCheck {
                holds: false,
                gap: Some(EnvelopeGap {
                    subset,
                    lower_value: given.clone(),
                    envelope_value: tight.clone(),
                }),
            });
        }
    }
    Ok(EnvelopeCheck { holds: true, gap: None })
}

/// `max { q(A) : q a measure, q(E) <= u(E) for all E }` for a lower envelope
/// `ell` with upper dual `u`, solved as a minimization of `-q(A)`. Equals
/// `1 - natural_envelope(ell)(complement of A)`.
pub fn upper_envelope_value(ell: &SetFunction, a: &Subset) -> Result<Rational> {
    let check = is_lower_envelope(ell)?;
    if !check.holds {
        return Err(Error::NotLowerEnvelope(
            "upper_envelope_value needs a lower envelope".into(),
        ));
    }
    if a.space() != ell.space() {
        return Err(Error::SpaceMismatch(
            "query subset lives in a different space".into(),
        ));
    }
    let upper = upper_from_lower(ell)?;
    let space = ell.space();
    let n = space.size();
    let mut rows = Vec::with_capacity(space.num_subsets() + 1);
    rows.push(Constraint::new(
        vec![Rational::one(); n],
        Relation::Eq,
        Rational::one(),
    ));
    for mask in 0..space.num_subsets() as u32 {
        let coeffs = (0..n)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rows.push(Constraint::new(coeffs, Relation::Le, upper.value_at_mask(mask).clone()));
    }
    let objective = (0..n)
        .map(|i| {
            if a.contains(i) {
                -Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let lp = LinearProgram::new(objective, rows, true).expect("rows dimensioned to the space");
    match solve_min(&lp) {
        LpOutcome::Optimal { value, .. } => Ok(-value),
        LpOutcome::Infeasible => unreachable!("an envelope's dominating set is nonempty"),
        LpOutcome::Unbounded => unreachable!("the feasible set lives inside the simplex"),
    }
}

/// Runs all three predicates and assembles the report.
pub fn classify(ell: &SetFunction) -> Result<LowerProbabilityReport> {
    let lp_check = is_lower_probability(ell)?;
    let dominating = is_dominated(ell)?;
    let envelope = if dominating.is_some() {
        is_lower_envelope(ell)?
    } else {
        EnvelopeCheck { holds: false, gap: None }
    };
    Ok(LowerProbabilityReport {
        is_lower_probability: lp_check.holds,
        lower_probability_witness: lp_check.witness,
        is_dominated: dominating.is_some(),
        dominating_witness: dominating,
        is_lower_envelope: envelope.holds,
        envelope_gap_witness: envelope.gap,
    })
}
