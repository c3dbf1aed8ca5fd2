//! Families of joint measures on `X x Y` compatible with evidence, and the
//! lower probabilities they induce on `X`.
//!
//! A [`FamilySpec`] describes a polyhedral set of joint probability measures:
//! either the measures compatible with a marginal and a multivalued mapping,
//! or those compatible with a dominated lower bound on the `Y`-marginal plus
//! per-column conditional lower envelopes, or an arbitrary list of linear
//! constraint rows. [`lower_value`] minimizes the `X`-marginal of a subset
//! over the family with the exact simplex.
//!
//! Joint masses are indexed `x * |Y| + y` everywhere: in constraint rows, in
//! solver witnesses, and in the `"x|y"` variable names of problem files.

use num_traits::{One, Zero};

use crate::dempster::MultivaluedMap;
use crate::envelope;
use crate::error::{Error, Result};
use crate::lp::{solve_min, Constraint, LinearProgram, LpOutcome, Relation};
use crate::rational::{format_rational, Rational};
use crate::setfun::{ProbMeasure, SetFunction};
use crate::space::{FiniteSpace, Subset};

/// A probability measure on the product of two spaces, stored as the dense
/// vector of point masses `P(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointMeasure {
    x_space: FiniteSpace,
    y_space: FiniteSpace,
    mass: Vec<Rational>,
}

/// Flat index of the pair `(x, y)`.
pub fn pair_index(x: usize, y: usize, y_size: usize) -> usize {
    x * y_size + y
}

impl JointMeasure {
    /// Validates nonnegativity and exact total mass 1.
    pub fn new(x_space: FiniteSpace, y_space: FiniteSpace, mass: Vec<Rational>) -> Result<Self> {
        let expected = x_space.size() * y_space.size();
        if mass.len() != expected {
            return Err(Error::InvalidMeasure(format!(
                "{} joint masses for a {}x{} product",
                mass.len(),
                x_space.size(),
                y_space.size()
            )));
        }
        for (i, m) in mass.iter().enumerate() {
            if m < &Rational::zero() {
                let x = i / y_space.size();
                let y = i % y_space.size();
                return Err(Error::InvalidMeasure(format!(
                    "negative joint mass {} at ({}, {})",
                    format_rational(m),
                    x_space.label(x),
                    y_space.label(y)
                )));
            }
        }
        let total: Rational = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "joint masses sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(JointMeasure { x_space, y_space, mass })
    }

    pub fn x_space(&self) -> &FiniteSpace {
        &self.x_space
    }

    pub fn y_space(&self) -> &FiniteSpace {
        &self.y_space
    }

    pub fn mass_at(&self, x: usize, y: usize) -> &Rational {
        &self.mass[pair_index(x, y, self.y_space.size())]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.mass
    }

    /// `P(A x Y)` for a subset of `X`.
    pub fn x_marginal(&self, a: &Subset) -> Result<Rational> {
        if a.space() != &self.x_space {
            return Err(Error::SpaceMismatch("x-marginal of a non-X subset".into()));
        }
        let mut total = Rational::zero();
        for x in a.indices() {
            for y in 0..self.y_space.size() {
                total += self.mass_at(x, y);
            }
        }
        Ok(total)
    }

    /// `P(X x F)` for a subset of `Y`.
    pub fn y_marginal(&self, f: &Subset) -> Result<Rational> {
        if f.space() != &self.y_space {
            return Err(Error::SpaceMismatch("y-marginal of a non-Y subset".into()));
        }
        let mut total = Rational::zero();
        for y in f.indices() {
            for x in 0..self.x_space.size() {
                total += self.mass_at(x, y);
            }
        }
        Ok(total)
    }

    /// Point mass of the `Y`-marginal at one element.
    pub fn y_marginal_at(&self, y: usize) -> Rational {
        (0..self.x_space.size()).map(|x| self.mass_at(x, y)).sum()
    }

    /// The `X`-marginal as a probability measure.
    pub fn x_marginal_measure(&self) -> ProbMeasure {
        let masses = (0..self.x_space.size())
            .map(|x| (0..self.y_space.size()).map(|y| self.mass_at(x, y)).sum())
            .collect();
        ProbMeasure::new(self.x_space.clone(), masses).expect("marginal of a joint measure")
    }
}

/// The product construction `P(x, y) = conditional_y(x) * q(y)`: a member of
/// every envelope-evidence family whose bounds the ingredients dominate.
pub fn product_joint(q: &ProbMeasure, conditionals: &[ProbMeasure]) -> Result<JointMeasure> {
    let y_space = q.space().clone();
    if conditionals.len() != y_space.size() {
        return Err(Error::InvalidInput(format!(
            "{} conditionals for {} outcomes",
            conditionals.len(),
            y_space.size()
        )));
    }
    let x_space = conditionals
        .first()
        .ok_or_else(|| Error::InvalidInput("no conditionals given".into()))?
        .space()
        .clone();
    if conditionals.iter().any(|c| c.space() != &x_space) {
        return Err(Error::SpaceMismatch(
            "conditionals live over different spaces".into(),
        ));
    }
    let ny = y_space.size();
    let mut mass = vec![Rational::zero(); x_space.size() * ny];
    for x in 0..x_space.size() {
        for y in 0..ny {
            mass[pair_index(x, y, ny)] = conditionals[y].mass(x) * q.mass(y);
        }
    }
    JointMeasure::new(x_space, y_space, mass)
}

/// Evidence for the conditional-envelope construction: a dominated lower
/// bound on the `Y`-marginal and one lower envelope on `X` per outcome of
/// `Y`. Validated on construction.
#[derive(Clone, Debug)]
pub struct EnvelopeEvidence {
    ell: SetFunction,
    lambdas: Vec<SetFunction>,
}

impl EnvelopeEvidence {
    pub fn new(ell: SetFunction, lambdas: Vec<SetFunction>) -> Result<Self> {
        let y_space = ell.space().clone();
        if lambdas.len() != y_space.size() {
            return Err(Error::InvalidInput(format!(
                "{} conditional bounds for {} outcomes",
                lambdas.len(),
                y_space.size()
            )));
        }
        let x_space = lambdas[0].space().clone();
        if lambdas.iter().any(|l| l.space() != &x_space) {
            return Err(Error::SpaceMismatch(
                "conditional bounds live over different spaces".into(),
            ));
        }
        if envelope::is_dominated(&ell)?.is_none() {
            return Err(Error::NotDominated);
        }
        for (y, lam) in lambdas.iter().enumerate() {
            if !envelope::is_lower_envelope(lam)?.holds {
                return Err(Error::NotLowerEnvelope(format!(
                    "conditional bound at {:?} is not a lower envelope",
                    y_space.label(y)
                )));
            }
        }
        Ok(EnvelopeEvidence { ell, lambdas })
    }

    pub fn ell(&self) -> &SetFunction {
        &self.ell
    }

    pub fn lambdas(&self) -> &[SetFunction] {
        &self.lambdas
    }

    pub fn lambda(&self, y: usize) -> &SetFunction {
        &self.lambdas[y]
    }

    pub fn y_space(&self) -> &FiniteSpace {
        self.ell.space()
    }

    pub fn x_space(&self) -> &FiniteSpace {
        self.lambdas[0].space()
    }
}

/// Declarative description of a polyhedral family of joint measures.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// Measures whose `Y`-marginal equals `p` and whose mass avoids every
    /// pair `(x, y)` with `x` outside the image of `y`.
    Dempster { p: ProbMeasure, mapping: MultivaluedMap },
    /// Measures whose `Y`-marginal dominates the lower bound and whose
    /// column conditionals dominate the per-outcome envelopes.
    Envelope(EnvelopeEvidence),
    /// Raw constraint rows over the `|X| * |Y|` joint masses, on top of the
    /// simplex constraints.
    Polyhedral {
        x_space: FiniteSpace,
        y_space: FiniteSpace,
        rows: Vec<Constraint>,
    },
}

impl FamilySpec {
    pub fn dempster(p: ProbMeasure, mapping: MultivaluedMap) -> Result<Self> {
        if p.space() != mapping.domain() {
            return Err(Error::SpaceMismatch(
                "measure and mapping domain differ".into(),
            ));
        }
        Ok(FamilySpec::Dempster { p, mapping })
    }

    pub fn envelope_evidence(evidence: EnvelopeEvidence) -> Self {
        FamilySpec::Envelope(evidence)
    }

    pub fn polyhedral(
        x_space: FiniteSpace,
        y_space: FiniteSpace,
        rows: Vec<Constraint>,
    ) -> Result<Self> {
        let width = x_space.size() * y_space.size();
        for (i, row) in rows.iter().enumerate() {
            if row.coeffs.len() != width {
                return Err(Error::InvalidInput(format!(
                    "constraint row {i} has {} coefficients, the product space has {width}",
                    row.coeffs.len()
                )));
            }
        }
        Ok(FamilySpec::Polyhedral { x_space, y_space, rows })
    }

    pub fn x_space(&self) -> &FiniteSpace {
        match self {
            FamilySpec::Dempster { mapping, .. } => mapping.codomain(),
            FamilySpec::Envelope(ev) => ev.x_space(),
            FamilySpec::Polyhedral { x_space, .. } => x_space,
        }
    }

    pub fn y_space(&self) -> &FiniteSpace {
        match self {
            FamilySpec::Dempster { p, .. } => p.space(),
            FamilySpec::Envelope(ev) => ev.y_space(),
            FamilySpec::Polyhedral { y_space, .. } => y_space,
        }
    }
}

/// The family-specific constraint rows over the `|X| * |Y|` joint masses.
/// Total mass and nonnegativity are not included; the solver adds them.
pub fn family_constraints(spec: &FamilySpec) -> Vec<Constraint> {
    let nx = spec.x_space().size();
    let ny = spec.y_space().size();
    let width = nx * ny;
    let mut rows = Vec::new();
    match spec {
        FamilySpec::Dempster { p, mapping } => {
            // Y-marginal pinned to p, column by column.
            for y in 0..ny {
                let mut coeffs = vec![Rational::zero(); width];
                for x in 0..nx {
                    coeffs[pair_index(x, y, ny)] = Rational::one();
                }
                rows.push(Constraint::new(coeffs, Relation::Eq, p.mass(y).clone()));
            }
            // Mass forbidden outside the images.
            for y in 0..ny {
                for x in 0..nx {
                    if !mapping.image(y).contains(x) {
                        let mut coeffs = vec![Rational::zero(); width];
                        coeffs[pair_index(x, y, ny)] = Rational::one();
                        rows.push(Constraint::new(coeffs, Relation::Eq, Rational::zero()));
                    }
                }
            }
        }
        FamilySpec::Envelope(ev) => {
            // Y-marginal dominates the lower bound on every subset of Y.
            for f_mask in 0..ev.y_space().num_subsets() as u32 {
                let mut coeffs = vec![Rational::zero(); width];
                for y in 0..ny {
                    if f_mask & (1 << y) != 0 {
                        for x in 0..nx {
                            coeffs[pair_index(x, y, ny)] = Rational::one();
                        }
                    }
                }
                rows.push(Constraint::new(
                    coeffs,
                    Relation::Ge,
                    ev.ell().value_at_mask(f_mask).clone(),
                ));
            }
            // Conditional bound per column, linearized:
            // P(E x {y}) - lambda_y(E) * P(X x {y}) >= 0. Equivalent to the
            // conditional inequality when the column has mass, vacuous when
            // it does not.
            for y in 0..ny {
                for e_mask in 0..ev.x_space().num_subsets() as u32 {
                    let bound = ev.lambda(y).value_at_mask(e_mask);
                    let mut coeffs = vec![Rational::zero(); width];
                    for x in 0..nx {
                        let mut c = -bound.clone();
                        if e_mask & (1 << x) != 0 {
                            c += Rational::one();
                        }
                        coeffs[pair_index(x, y, ny)] = c;
                    }
                    rows.push(Constraint::new(coeffs, Relation::Ge, Rational::zero()));
                }
            }
        }
        FamilySpec::Polyhedral { rows: given, .. } => {
            rows.extend(given.iter().cloned());
        }
    }
    rows
}

fn assemble_lp(spec: &FamilySpec, objective: Vec<Rational>) -> LinearProgram {
    let width = spec.x_space().size() * spec.y_space().size();
    let mut rows = Vec::with_capacity(1 + family_constraints(spec).len());
    rows.push(Constraint::new(
        vec![Rational::one(); width],
        Relation::Eq,
        Rational::one(),
    ));
    rows.extend(family_constraints(spec));
    LinearProgram::new(objective, rows, true).expect("rows dimensioned to the product space")
}

fn marginal_objective(spec: &FamilySpec, a: &Subset) -> Result<Vec<Rational>> {
    if a.space() != spec.x_space() {
        return Err(Error::SpaceMismatch(
            "lower value queried with a subset outside X".into(),
        ));
    }
    let nx = spec.x_space().size();
    let ny = spec.y_space().size();
    let mut objective = vec![Rational::zero(); nx * ny];
    for x in a.indices() {
        for y in 0..ny {
            objective[pair_index(x, y, ny)] = Rational::one();
        }
    }
    Ok(objective)
}

/// `min { P(A x Y) : P in the family }`, exactly.
pub fn lower_value(spec: &FamilySpec, a: &Subset) -> Result<Rational> {
    lower_value_with_witness(spec, a).map(|(v, _)| v)
}

/// Same minimum together with a joint measure attaining it.
pub fn lower_value_with_witness(spec: &FamilySpec, a: &Subset) -> Result<(Rational, JointMeasure)> {
    let objective = marginal_objective(spec, a)?;
    match solve_min(&assemble_lp(spec, objective)) {
        LpOutcome::Optimal { value, witness } => {
            let joint =
                JointMeasure::new(spec.x_space().clone(), spec.y_space().clone(), witness)?;
            Ok((value, joint))
        }
        LpOutcome::Infeasible => Err(Error::EmptyFamily),
        LpOutcome::Unbounded => unreachable!("the family lives inside the simplex"),
    }
}

/// The induced lower probability on `X`: one minimization per subset.
pub fn lower_function(spec: &FamilySpec) -> Result<SetFunction> {
    let x_space = spec.x_space().clone();
    let mut values = Vec::with_capacity(x_space.num_subsets());
    for a in x_space.subsets() {
        values.push(lower_value(spec, &a)?);
    }
    SetFunction::new(x_space, values)
}

/// Exact membership: does `p` satisfy every constraint of the family?
pub fn membership(p: &JointMeasure, spec: &FamilySpec) -> Result<bool> {
    if p.x_space() != spec.x_space() || p.y_space() != spec.y_space() {
        return Err(Error::SpaceMismatch(
            "joint measure and family live over different products".into(),
        ));
    }
    Ok(family_constraints(spec)
        .iter()
        .all(|c| c.satisfied_by(p.masses())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dempster::{belief_from_mapping, simple_support};
    use crate::fixtures;
    use crate::rational::rat;

    #[test]
    fn joint_measure_validation_and_marginals() {
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let m = JointMeasure::new(
            x.clone(),
            y.clone(),
            vec![rat(1, 2), rat(1, 4), rat(0, 1), rat(1, 4)],
        )
        .unwrap();
        assert_eq!(m.mass_at(0, 1), &rat(1, 4));
        let x1 = x.subset_from_labels(["x1"]).unwrap();
        assert_eq!(m.x_marginal(&x1).unwrap(), rat(3, 4));
        let y2 = y.subset_from_labels(["y2"]).unwrap();
        assert_eq!(m.y_marginal(&y2).unwrap(), rat(1, 2));
        assert_eq!(m.x_marginal_measure().masses(), &[rat(3, 4), rat(1, 4)]);

        assert!(JointMeasure::new(x.clone(), y.clone(), vec![rat(1, 1); 4]).is_err());
        assert!(JointMeasure::new(x, y, vec![rat(1, 2); 3]).is_err());
    }

    #[test]
    fn product_of_uniforms_is_uniform() {
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let q = ProbMeasure::uniform(y.clone());
        let conds = vec![ProbMeasure::uniform(x.clone()), ProbMeasure::uniform(x.clone())];
        let joint = product_joint(&q, &conds).unwrap();
        assert!(joint.masses().iter().all(|m| m == &rat(1, 4)));
    }

    #[test]
    fn product_with_point_mass_marginal_occupies_one_column() {
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        let q = ProbMeasure::point_mass_at(y.clone(), 0);
        let c0 = ProbMeasure::new(x.clone(), vec![rat(1, 3), rat(2, 3)]).unwrap();
        let c1 = ProbMeasure::uniform(x.clone());
        let joint = product_joint(&q, &[c0.clone(), c1]).unwrap();
        assert_eq!(joint.mass_at(0, 0), c0.mass(0));
        assert_eq!(joint.mass_at(1, 0), c0.mass(1));
        assert_eq!(joint.mass_at(0, 1), &rat(0, 1));
        assert_eq!(joint.mass_at(1, 1), &rat(0, 1));
        // the Y-marginal is q back
        assert_eq!(joint.y_marginal_at(0), rat(1, 1));
    }

    #[test]
    fn dempster_constraint_counts_on_first_fixture() {
        let (p, mapping) = fixtures::d1();
        let spec = FamilySpec::dempster(p, mapping).unwrap();
        let rows = family_constraints(&spec);
        let eq_marginals = rows
            .iter()
            .filter(|c| c.relation == Relation::Eq && c.rhs != rat(0, 1))
            .count();
        let zero_forcing = rows
            .iter()
            .filter(|c| c.relation == Relation::Eq && c.rhs == rat(0, 1))
            .count();
        assert_eq!(rows.len(), 3);
        assert_eq!(eq_marginals, 2);
        assert_eq!(zero_forcing, 1);
    }

    #[test]
    fn envelope_constraint_counts_on_two_by_two_evidence() {
        let ev = fixtures::e1_evidence();
        let spec = FamilySpec::envelope_evidence(ev);
        let rows = family_constraints(&spec);
        // 2^|Y| marginal inequalities + |Y| * 2^|X| conditional rows
        assert_eq!(rows.len(), 4 + 2 * 4);
    }

    #[test]
    fn dempster_lower_values_match_direct_belief() {
        let (p, mapping) = fixtures::d1();
        let beta = belief_from_mapping(&p, &mapping).unwrap();
        let spec = FamilySpec::dempster(p, mapping).unwrap();
        let x = spec.x_space().clone();
        let x1 = x.subset_from_labels(["x1"]).unwrap();
        assert_eq!(lower_value(&spec, &x1).unwrap(), rat(1, 2));
        assert_eq!(lower_function(&spec).unwrap(), beta);

        let (p, mapping) = fixtures::d2();
        let spec = FamilySpec::dempster(p, mapping).unwrap();
        let x = spec.x_space().clone();
        let x23 = x.subset_from_labels(["x2", "x3"]).unwrap();
        assert_eq!(lower_value(&spec, &x23).unwrap(), rat(1, 3));
    }

    #[test]
    fn envelope_evidence_lower_values() {
        let ev = fixtures::e1_evidence();
        let spec = FamilySpec::envelope_evidence(ev);
        let x = spec.x_space().clone();
        let x1 = x.subset_from_labels(["x1"]).unwrap();
        let x2 = x.subset_from_labels(["x2"]).unwrap();
        assert_eq!(lower_value(&spec, &x1).unwrap(), rat(1, 4));
        assert_eq!(lower_value(&spec, &x2).unwrap(), rat(0, 1));
    }

    #[test]
    fn polyhedral_family_examples() {
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let y = FiniteSpace::new(["y1", "y2"]).unwrap();
        // one row: P(x1, y1) >= 1/2
        let mut coeffs = vec![rat(0, 1); 4];
        coeffs[pair_index(0, 0, 2)] = rat(1, 1);
        let row = Constraint::new(coeffs, Relation::Ge, rat(1, 2));
        let spec = FamilySpec::polyhedral(x.clone(), y.clone(), vec![row]).unwrap();
        let x1 = x.subset_from_labels(["x1"]).unwrap();
        assert_eq!(lower_value(&spec, &x1).unwrap(), rat(1, 2));

        // no rows at all: the lower function is vacuous on X
        let free = FamilySpec::polyhedral(x.clone(), y.clone(), vec![]).unwrap();
        let lower = lower_function(&free).unwrap();
        assert_eq!(lower, SetFunction::vacuous(&x));

        // contradictory rows: the family is empty
        let mut c1 = vec![rat(0, 1); 4];
        c1[0] = rat(1, 1);
        let contradictory = FamilySpec::polyhedral(
            x.clone(),
            y,
            vec![
                Constraint::new(c1.clone(), Relation::Ge, rat(3, 4)),
                Constraint::new(c1, Relation::Le, rat(1, 4)),
            ],
        )
        .unwrap();
        assert!(matches!(lower_value(&contradictory, &x1), Err(Error::EmptyFamily)));
    }

    #[test]
    fn membership_checks_the_family_rows() {
        let (p, mapping) = fixtures::d1();
        let x = mapping.codomain().clone();
        let y = mapping.domain().clone();
        let spec = FamilySpec::dempster(p, mapping).unwrap();
        // mass on (x2, y1) is forbidden by the zero-forcing row
        let violating = JointMeasure::new(
            x.clone(),
            y.clone(),
            vec![rat(1, 2), rat(0, 1), rat(1, 2), rat(0, 1)],
        )
        .unwrap();
        assert!(!membership(&violating, &spec).unwrap());
        // the product of p with allowed columns is a member
        let member = JointMeasure::new(
            x.clone(),
            y.clone(),
            vec![rat(1, 2), rat(1, 4), rat(0, 1), rat(1, 4)],
        )
        .unwrap();
        assert!(membership(&member, &spec).unwrap());

        // a rowless polyhedral family contains every joint measure
        let free = FamilySpec::polyhedral(x, y, vec![]).unwrap();
        assert!(membership(&violating, &free).unwrap());
        assert!(membership(&member, &free).unwrap());
    }

    #[test]
    fn product_members_belong_to_their_envelope_family() {
        let ev = fixtures::e1_evidence();
        let y = ev.y_space().clone();
        let x = ev.x_space().clone();
        // q dominates the bound on the Y-marginal
        let q = ProbMeasure::new(y, vec![rat(1, 4), rat(3, 4)]).unwrap();
        // conditionals dominating the two simple supports
        let c0 = ProbMeasure::point_mass_at(x.clone(), 0);
        let c1 = ProbMeasure::new(x, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let spec = FamilySpec::envelope_evidence(ev);
        let joint = product_joint(&q, &[c0, c1]).unwrap();
        assert!(membership(&joint, &spec).unwrap());
    }

    #[test]
    fn family_minima_agree_with_the_enumeration_oracle() {
        use crate::lp::{oracle_min, LinearProgram};
        // small enough products for the oracle's size guard
        let (p, mapping) = fixtures::d1();
        let specs = [
            FamilySpec::dempster(p, mapping).unwrap(),
            FamilySpec::envelope_evidence(fixtures::e1_evidence()),
        ];
        for spec in &specs {
            let width = spec.x_space().size() * spec.y_space().size();
            for a in spec.x_space().clone().subsets() {
                let mut objective = vec![rat(0, 1); width];
                for x in a.indices() {
                    for y in 0..spec.y_space().size() {
                        objective[pair_index(x, y, spec.y_space().size())] = rat(1, 1);
                    }
                }
                let mut rows = vec![Constraint::new(
                    vec![rat(1, 1); width],
                    Relation::Eq,
                    rat(1, 1),
                )];
                rows.extend(family_constraints(spec));
                let lp = LinearProgram::new(objective, rows, true).unwrap();
                let by_oracle = oracle_min(&lp).unwrap();
                assert_eq!(
                    by_oracle.value().expect("family is nonempty"),
                    &lower_value(spec, &a).unwrap(),
                    "oracle disagrees at {a}"
                );
            }
        }
    }

    #[test]
    fn lower_value_witness_attains_and_belongs() {
        let ev = fixtures::e1_evidence();
        let spec = FamilySpec::envelope_evidence(ev);
        let x = spec.x_space().clone();
        for a in x.subsets() {
            let (value, joint) = lower_value_with_witness(&spec, &a).unwrap();
            assert!(membership(&joint, &spec).unwrap());
            assert_eq!(joint.x_marginal(&a).unwrap(), value);
        }
    }

    #[test]
    fn evidence_validation_rejects_bad_hypotheses() {
        // not dominated on Y
        let bad_ell = fixtures::b1();
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let lams = vec![SetFunction::vacuous(&x), SetFunction::vacuous(&x)];
        assert!(matches!(
            EnvelopeEvidence::new(bad_ell, lams),
            Err(Error::NotDominated)
        ));
        // a conditional bound that is dominated but not an envelope
        let ell = fixtures::e1();
        let x3 = FiniteSpace::new(["x1", "x2", "x3"]).unwrap();
        let not_envelope = fixtures::m1_shape_on(&x3);
        let lams = vec![not_envelope, SetFunction::vacuous(&x3)];
        assert!(matches!(
            EnvelopeEvidence::new(ell, lams),
            Err(Error::NotLowerEnvelope(_))
        ));
    }

    #[test]
    fn dempster_family_always_contains_a_selector_product() {
        let (p, mapping) = fixtures::d2();
        let x = mapping.codomain().clone();
        let y = mapping.domain().clone();
        let ny = y.size();
        // put each column's mass on the first element of its image
        let mut mass = vec![rat(0, 1); x.size() * ny];
        for ycol in 0..ny {
            let first = mapping.image(ycol).indices().next().unwrap();
            mass[pair_index(first, ycol, ny)] = p.mass(ycol).clone();
        }
        let spec = FamilySpec::dempster(p, mapping).unwrap();
        let joint = JointMeasure::new(x, y, mass).unwrap();
        assert!(membership(&joint, &spec).unwrap());
    }

    #[test]
    fn simple_support_helper_is_an_envelope_bound() {
        let x = FiniteSpace::new(["x1", "x2"]).unwrap();
        let focal = x.subset_from_labels(["x1"]).unwrap();
        let lam = simple_support(&x, &focal).unwrap();
        assert!(crate::envelope::is_lower_envelope(&lam).unwrap().holds);
    }
}
