//! Canonical instances used across the test suites and shipped as problem
//! files under `fixtures/`. Each constructor documents what the instance
//! exercises.

use crate::dempster::{simple_support, MultivaluedMap};
use crate::family::EnvelopeEvidence;
use crate::rational::rat;
use crate::setfun::{ProbMeasure, SetFunction};
use crate::space::FiniteSpace;

pub fn x2() -> FiniteSpace {
    FiniteSpace::new(["x1", "x2"]).expect("static labels")
}

pub fn x3() -> FiniteSpace {
    FiniteSpace::new(["x1", "x2", "x3"]).expect("static labels")
}

pub fn y2() -> FiniteSpace {
    FiniteSpace::new(["y1", "y2"]).expect("static labels")
}

pub fn y3() -> FiniteSpace {
    FiniteSpace::new(["y1", "y2", "y3"]).expect("static labels")
}

pub fn y4() -> FiniteSpace {
    FiniteSpace::new(["y1", "y2", "y3", "y4"]).expect("static labels")
}

/// Uniform measure on two outcomes, one singleton image and one
/// total-ignorance image.
pub fn d1() -> (ProbMeasure, MultivaluedMap) {
    let y = y2();
    let x = x2();
    let p = ProbMeasure::uniform(y.clone());
    let images = vec![
        x.subset_from_labels(["x1"]).expect("known labels"),
        x.full(),
    ];
    let mapping = MultivaluedMap::new(y, x, images).expect("images nonempty");
    (p, mapping)
}

/// Three-outcome evidence with masses 1/2, 1/3, 1/6 and nested-ish images.
pub fn d2() -> (ProbMeasure, MultivaluedMap) {
    let y = y3();
    let x = x3();
    let p = ProbMeasure::new(y.clone(), vec![rat(1, 2), rat(1, 3), rat(1, 6)])
        .expect("masses sum to 1");
    let images = vec![
        x.subset_from_labels(["x1"]).expect("known labels"),
        x.subset_from_labels(["x2", "x3"]).expect("known labels"),
        x.full(),
    ];
    let mapping = MultivaluedMap::new(y, x, images).expect("images nonempty");
    (p, mapping)
}

/// A lower envelope on two outcomes: 1/4 and 1/2 on the singletons.
pub fn e1() -> SetFunction {
    let y = y2();
    SetFunction::new(y, vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)])
        .expect("table sized to the space")
}

/// Dominated but not an envelope: zero on singletons, 2/3 on pairs. The only
/// dominating measure is uniform, so the natural envelope lifts the
/// singletons to 1/3.
pub fn m1() -> SetFunction {
    m1_shape_on(&y3())
}

/// The same zero-singletons / 2-3rds-pairs shape on any 3-element space.
pub fn m1_shape_on(space: &FiniteSpace) -> SetFunction {
    assert_eq!(space.size(), 3, "this shape is defined on 3-element spaces");
    SetFunction::from_fn(space, |s| match s.cardinality() {
        0 => rat(0, 1),
        1 => rat(0, 1),
        2 => rat(2, 3),
        _ => rat(1, 1),
    })
}

/// Pointwise minimum of two disjointly-supported measures on four outcomes:
/// an envelope that is not 2-monotone.
pub fn n1() -> SetFunction {
    let y = y4();
    let q1 = ProbMeasure::new(y.clone(), vec![rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)])
        .expect("masses sum to 1");
    let q2 = ProbMeasure::new(y, vec![rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)])
        .expect("masses sum to 1");
    q1.to_set_function()
        .pointwise_min(&q2.to_set_function())
        .expect("same space")
}

/// Overcommitted on two outcomes (3/5 each): dominated by nothing.
pub fn b1() -> SetFunction {
    let y = y2();
    SetFunction::new(y, vec![rat(0, 1), rat(3, 5), rat(3, 5), rat(1, 1)])
        .expect("table sized to the space")
}

/// The two-point envelope together with the simple supports of the first
/// mapping's images: the canonical envelope-evidence instance.
pub fn e1_evidence() -> EnvelopeEvidence {
    let (_, mapping) = d1();
    let x = mapping.codomain().clone();
    let lambdas = (0..mapping.domain().size())
        .map(|y| simple_support(&x, mapping.image(y)).expect("images nonempty"))
        .collect();
    EnvelopeEvidence::new(e1(), lambdas).expect("validated canonical instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let _ = d1();
        let _ = d2();
        assert!(e1().is_normalized());
        assert!(m1().is_normalized());
        assert!(n1().is_normalized());
        assert!(b1().is_normalized());
        let _ = e1_evidence();
    }

    #[test]
    fn two_point_envelope_upper_dual() {
        let ell = e1();
        let u = crate::setfun::upper_from_lower(&ell).unwrap();
        let y = ell.space();
        assert_eq!(u.value(&y.subset_from_labels(["y1"]).unwrap()), &rat(1, 2));
        assert_eq!(u.value(&y.subset_from_labels(["y2"]).unwrap()), &rat(3, 4));
    }

    #[test]
    fn min_fixture_has_the_documented_values() {
        let ell = n1();
        let y = ell.space();
        let v = |labels: &[&str]| ell.value(&y.subset_from_labels(labels).unwrap()).clone();
        assert_eq!(v(&["y1"]), rat(0, 1));
        assert_eq!(v(&["y1", "y3"]), rat(1, 2));
        assert_eq!(v(&["y1", "y4"]), rat(1, 2));
        assert_eq!(v(&["y3", "y4"]), rat(0, 1));
        assert_eq!(v(&["y1", "y3", "y4"]), rat(1, 2));
    }
}
