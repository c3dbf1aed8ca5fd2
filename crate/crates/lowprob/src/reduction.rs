//! Reduced and closed-form evaluation of envelope-evidence lower values.
//!
//! For envelope evidence, the minimum of the `X`-marginal over the joint
//! family can instead be computed by a much smaller program over measures on
//! `Y` alone: minimize `sum_y q(y) * lambda_y(A)` over measures `q`
//! dominating the bound. [`reduced_lower_value`] builds that program directly
//! from the evidence, sharing no constraint machinery with
//! [`crate::family::lower_value`], so the equality of the two routes is a
//! genuine cross-check and not a tautology. Two special shapes of evidence
//! collapse further, to a plain mixture and to a preimage lookup.

use num_traits::{One, Zero};

use crate::dempster::MultivaluedMap;
use crate::envelope;
use crate::error::{Error, Result};
use crate::family::EnvelopeEvidence;
use crate::lp::{solve_min, Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::Rational;
use crate::setfun::{ProbMeasure, SetFunction};
use crate::space::Subset;

/// `min { sum_y q(y) * lambda_y(A) : q a measure on Y, q(E) >= ell(E) for
/// every E }`: the reduced program in `|Y|` variables. Feasibility is
/// guaranteed by the dominance of the bound, which the evidence validated.
pub fn reduced_lower_value(evidence: &EnvelopeEvidence, a: &Subset) -> Result<Rational> {
    if a.space() != evidence.x_space() {
        return Err(Error::SpaceMismatch(
            "reduced lower value queried with a subset outside X".into(),
        ));
    }
    let y_space = evidence.y_space();
    let ny = y_space.size();

    let mut rows = Vec::with_capacity(y_space.num_subsets() + 1);
    rows.push(Constraint::new(
        vec![Rational::one(); ny],
        Relation::Eq,
        Rational::one(),
    ));
    for mask in 0..y_space.num_subsets() as u32 {
        let coeffs = (0..ny)
            .map(|y| {
                if mask & (1 << y) != 0 {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rows.push(Constraint::new(
            coeffs,
            Relation::Ge,
            evidence.ell().value_at_mask(mask).clone(),
        ));
    }

    let objective = (0..ny).map(|y| evidence.lambda(y).value(a).clone()).collect();
    let lp = LinearProgram::new(objective, rows, true).expect("rows dimensioned to Y");
    match solve_min(&lp) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => {
            unreachable!("evidence validation guarantees a dominating measure")
        }
        LpOutcome::Unbounded => unreachable!("the feasible set lives inside the simplex"),
    }
}

/// The reduced lower value on every subset of `X`, as a set function.
pub fn reduced_lower_function(evidence: &EnvelopeEvidence) -> Result<SetFunction> {
    let x_space = evidence.x_space().clone();
    let mut values = Vec::with_capacity(x_space.num_subsets());
    for a in x_space.subsets() {
        values.push(reduced_lower_value(evidence, &a)?);
    }
    SetFunction::new(x_space, values)
}

/// `sum_y p(y) * lambda_y(A)`: no minimization. When the marginal bound is
/// the set function of `p` itself, the only dominating measure is `p`, and
/// the reduced program collapses to this mixture.
pub fn mixture_lower_value(
    p: &ProbMeasure,
    lambdas: &[SetFunction],
    a: &Subset,
) -> Result<Rational> {
    if lambdas.len() != p.space().size() {
        return Err(Error::InvalidInput(format!(
            "{} conditional bounds for {} outcomes",
            lambdas.len(),
            p.space().size()
        )));
    }
    let x_space = lambdas
        .first()
        .ok_or_else(|| Error::InvalidInput("no conditional bounds given".into()))?
        .space();
    if lambdas.iter().any(|l| l.space() != x_space) {
        return Err(Error::SpaceMismatch(
            "conditional bounds live over different spaces".into(),
        ));
    }
    if a.space() != x_space {
        return Err(Error::SpaceMismatch(
            "mixture queried with a subset outside X".into(),
        ));
    }
    for (y, lam) in lambdas.iter().enumerate() {
        if !lam.is_normalized() {
            return Err(Error::NotNormalized(format!(
                "conditional bound at {:?}",
                p.space().label(y)
            )));
        }
    }
    let mut total = Rational::zero();
    for (y, lam) in lambdas.iter().enumerate() {
        total += p.mass(y) * lam.value(a);
    }
    Ok(total)
}

/// The mixture on every subset of `X`.
pub fn mixture_lower_function(p: &ProbMeasure, lambdas: &[SetFunction]) -> Result<SetFunction> {
    let x_space = lambdas
        .first()
        .ok_or_else(|| Error::InvalidInput("no conditional bounds given".into()))?
        .space()
        .clone();
    let mut values = Vec::with_capacity(x_space.num_subsets());
    for a in x_space.subsets() {
        values.push(mixture_lower_value(p, lambdas, &a)?);
    }
    SetFunction::new(x_space, values)
}

/// `ell({ y : image(y) subset of A })`: the closed form when every
/// conditional bound is the simple support function of the corresponding
/// image. Requires `ell` to be a lower envelope; the collapse fails without
/// that, so weaker inputs are refused rather than silently mis-evaluated.
pub fn support_lower_value(
    ell: &SetFunction,
    mapping: &MultivaluedMap,
    a: &Subset,
) -> Result<Rational> {
    if ell.space() != mapping.domain() {
        return Err(Error::SpaceMismatch(
            "marginal bound and mapping domain differ".into(),
        ));
    }
    if a.space() != mapping.codomain() {
        return Err(Error::SpaceMismatch(
            "support lower value queried with a subset outside X".into(),
        ));
    }
    if !envelope::is_lower_envelope(ell)?.holds {
        return Err(Error::NotLowerEnvelope(
            "support_lower_value needs the marginal bound to be a lower envelope".into(),
        ));
    }
    let preimage = mapping.preimage_of_superset(a)?;
    Ok(ell.value(&preimage).clone())
}

/// The preimage closed form on every subset of `X`.
pub fn support_lower_function(ell: &SetFunction, mapping: &MultivaluedMap) -> Result<SetFunction> {
    let x_space = mapping.codomain().clone();
    let mut values = Vec::with_capacity(x_space.num_subsets());
    for a in x_space.subsets() {
        values.push(support_lower_value(ell, mapping, &a)?);
    }
    SetFunction::new(x_space, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dempster::{belief_from_mapping, simple_support};
    use crate::family::{self, FamilySpec};
    use crate::fixtures;
    use crate::rational::rat;
    use crate::space::FiniteSpace;

    #[test]
    fn reduced_value_on_canonical_evidence() {
        let ev = fixtures::e1_evidence();
        let x1 = ev.x_space().subset_from_labels(["x1"]).unwrap();
        assert_eq!(reduced_lower_value(&ev, &x1).unwrap(), rat(1, 4));
    }

    #[test]
    fn point_mass_bound_collapses_to_one_conditional() {
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let p = ProbMeasure::point_mass_at(y.clone(), 0);
        let lam0 = simple_support(&x, &x.subset_from_labels(["x1"]).unwrap()).unwrap();
        let lam1 = SetFunction::vacuous(&x);
        let ev = EnvelopeEvidence::new(p.to_set_function(), vec![lam0.clone(), lam1]).unwrap();
        for a in x.subsets() {
            assert_eq!(reduced_lower_value(&ev, &a).unwrap(), *lam0.value(&a));
        }
    }

    #[test]
    fn vacuous_conditionals_give_zero_off_the_full_set() {
        let ell = fixtures::e1();
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let ev = EnvelopeEvidence::new(
            ell,
            vec![SetFunction::vacuous(&x), SetFunction::vacuous(&x)],
        )
        .unwrap();
        for a in x.subsets() {
            let expected = if a.is_full() { rat(1, 1) } else { rat(0, 1) };
            assert_eq!(reduced_lower_value(&ev, &a).unwrap(), expected);
        }
    }

    #[test]
    fn reduced_route_matches_family_route_on_canonical_evidence() {
        let ev = fixtures::e1_evidence();
        let spec = FamilySpec::envelope_evidence(ev.clone());
        for a in ev.x_space().subsets() {
            assert_eq!(
                reduced_lower_value(&ev, &a).unwrap(),
                family::lower_value(&spec, &a).unwrap(),
                "mismatch at {a}"
            );
        }
    }

    #[test]
    fn mixture_examples() {
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let p = ProbMeasure::uniform(y.clone());
        let lam0 = simple_support(&x, &x.subset_from_labels(["x1"]).unwrap()).unwrap();
        let lam1 = SetFunction::vacuous(&x);
        let x1 = x.subset_from_labels(["x1"]).unwrap();
        assert_eq!(
            mixture_lower_value(&p, &[lam0.clone(), lam1.clone()], &x1).unwrap(),
            rat(1, 2)
        );

        // identical conditionals: the mixture is that conditional
        for a in x.subsets() {
            assert_eq!(
                mixture_lower_value(&p, &[lam0.clone(), lam0.clone()], &a).unwrap(),
                *lam0.value(&a)
            );
        }

        // point mass picks out one conditional
        let at_y2 = ProbMeasure::point_mass_at(y, 1);
        for a in x.subsets() {
            assert_eq!(
                mixture_lower_value(&at_y2, &[lam0.clone(), lam1.clone()], &a).unwrap(),
                *lam1.value(&a)
            );
        }
    }

    #[test]
    fn mixture_matches_first_canonical_belief() {
        let (p, mapping) = fixtures::d1();
        let x = mapping.codomain();
        let lambdas: Vec<SetFunction> = (0..2)
            .map(|y| simple_support(x, mapping.image(y)).unwrap())
            .collect();
        let beta = belief_from_mapping(&p, &mapping).unwrap();
        for a in x.subsets() {
            assert_eq!(mixture_lower_value(&p, &lambdas, &a).unwrap(), *beta.value(&a));
        }
    }

    #[test]
    fn support_closed_form_examples() {
        let ell = fixtures::e1();
        let (_, mapping) = fixtures::d1();
        let x = mapping.codomain();
        let x1 = x.subset_from_labels(["x1"]).unwrap();
        assert_eq!(support_lower_value(&ell, &mapping, &x1).unwrap(), rat(1, 4));

        // total-ignorance mapping sends every proper subset to the bound at empty
        let y = ell.space().clone();
        let ignorant = MultivaluedMap::new(y, x.clone(), vec![x.full(), x.full()]).unwrap();
        for a in x.subsets() {
            let expected = if a.is_full() { rat(1, 1) } else { rat(0, 1) };
            assert_eq!(support_lower_value(&ell, &ignorant, &a).unwrap(), expected);
        }
    }

    #[test]
    fn support_with_a_measure_is_the_direct_belief() {
        let (p, mapping) = fixtures::d2();
        let beta = belief_from_mapping(&p, &mapping).unwrap();
        let ell = p.to_set_function();
        for a in mapping.codomain().subsets() {
            assert_eq!(
                support_lower_value(&ell, &mapping, &a).unwrap(),
                *beta.value(&a)
            );
        }
    }

    #[test]
    fn support_refuses_non_envelopes() {
        let ell = fixtures::m1();
        let y = ell.space().clone();
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let images = vec![x.full(), x.full(), x.full()];
        let mapping = MultivaluedMap::new(y, x.clone(), images).unwrap();
        assert!(matches!(
            support_lower_value(&ell, &mapping, &x.full()),
            Err(Error::NotLowerEnvelope(_))
        ));
    }
}
