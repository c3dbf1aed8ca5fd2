//! Seeded random instance generators used by property and acceptance tests
//! and by the CLI's sampling modes. Everything is exact: random measures are
//! integer compositions over a bounded denominator, never rounded floats.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dempster::{random_mapping, simple_support, MultivaluedMap};
use crate::lp::{Constraint, LinearProgram, Relation};
use crate::rational::{rat, Rational};
use crate::setfun::{ProbMeasure, SetFunction};
use crate::space::{FiniteSpace, Subset};

/// Deterministic generator; the same seed reproduces the same instances on
/// every platform.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A space `e1..en` of the given size.
pub fn indexed_space(prefix: &str, size: usize) -> FiniteSpace {
    FiniteSpace::new((1..=size).map(|i| format!("{prefix}{i}")))
        .expect("generated labels are distinct and nonempty")
}

/// Random measure with denominator at most `max_denom`: `d` unit weights
/// dropped uniformly into the elements, masses `k_i / d`.
pub fn random_measure<R: Rng>(space: &FiniteSpace, max_denom: u32, rng: &mut R) -> ProbMeasure {
    let denom = rng.random_range(1..=max_denom) as i64;
    let mut counts = vec![0i64; space.size()];
    for _ in 0..denom {
        counts[rng.random_range(0..space.size())] += 1;
    }
    let masses = counts.iter().map(|&k| rat(k, denom)).collect();
    ProbMeasure::new(space.clone(), masses).expect("composition masses sum to 1")
}

/// Uniform nonempty subset.
pub fn random_nonempty_subset<R: Rng>(space: &FiniteSpace, rng: &mut R) -> Subset {
    let mask = rng.random_range(1..space.num_subsets() as u32);
    space.subset(mask).expect("mask in range")
}

/// Pointwise minimum of `1..=max_measures` random measures: always a lower
/// envelope, and beyond one measure usually not additive.
pub fn random_min_envelope<R: Rng>(
    space: &FiniteSpace,
    max_measures: usize,
    max_denom: u32,
    rng: &mut R,
) -> SetFunction {
    let k = rng.random_range(1..=max_measures);
    let mut min_fn = random_measure(space, max_denom, rng).to_set_function();
    for _ in 1..k {
        let next = random_measure(space, max_denom, rng).to_set_function();
        min_fn = min_fn.pointwise_min(&next).expect("same space");
    }
    min_fn
}

/// A dominated set function: a random envelope, with some interior values
/// then lowered to open strict gaps. Lowering below an envelope cannot break
/// domination.
pub fn random_dominated_function<R: Rng>(
    space: &FiniteSpace,
    max_denom: u32,
    rng: &mut R,
) -> SetFunction {
    let envelope = random_min_envelope(space, 3, max_denom, rng);
    let full = space.full_mask();
    let values = (0..space.num_subsets() as u32)
        .map(|mask| {
            let v = envelope.value_at_mask(mask).clone();
            if mask == 0 || mask == full || rng.random_range(0..3) > 0 {
                v
            } else {
                v * rat(rng.random_range(0..=3), 4)
            }
        })
        .collect();
    SetFunction::new(space.clone(), values).expect("table sized to the space")
}

/// Random belief function via a random mass assignment: unit weights dropped
/// on nonempty subsets, cumulated by subset sums.
pub fn random_belief_function<R: Rng>(
    space: &FiniteSpace,
    max_denom: u32,
    rng: &mut R,
) -> SetFunction {
    let denom = rng.random_range(1..=max_denom) as i64;
    let mut mass = vec![Rational::zero(); space.num_subsets()];
    for _ in 0..denom {
        let mask = rng.random_range(1..space.num_subsets() as u32);
        mass[mask as usize] += rat(1, denom);
    }
    let m = SetFunction::new(space.clone(), mass).expect("table sized to the space");
    crate::setfun::from_mass(&m)
}

/// One conditional bound: simple support, vacuous, or a pointwise-min
/// envelope, in roughly equal measure.
pub fn random_conditional_bound<R: Rng>(
    space: &FiniteSpace,
    max_denom: u32,
    rng: &mut R,
) -> SetFunction {
    match rng.random_range(0..3) {
        0 => {
            let focal = random_nonempty_subset(space, rng);
            simple_support(space, &focal).expect("focal nonempty")
        }
        1 => SetFunction::vacuous(space),
        _ => random_min_envelope(space, 3, max_denom, rng),
    }
}

/// A family of conditional bounds on `X`, one per element of `Y`.
pub fn random_conditional_family<R: Rng>(
    x_space: &FiniteSpace,
    y_size: usize,
    max_denom: u32,
    rng: &mut R,
) -> Vec<SetFunction> {
    (0..y_size)
        .map(|_| random_conditional_bound(x_space, max_denom, rng))
        .collect()
}

/// Arbitrary (not necessarily normalized) set function with small rational
/// values; exercises the transform round trips.
pub fn random_set_function<R: Rng>(space: &FiniteSpace, rng: &mut R) -> SetFunction {
    let values = (0..space.num_subsets())
        .map(|_| rat(rng.random_range(-6..=6), rng.random_range(1..=6)))
        .collect();
    SetFunction::new(space.clone(), values).expect("table sized to the space")
}

/// Random mapping re-exported for convenience alongside the other samplers.
pub fn random_multivalued_map<R: Rng>(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    rng: &mut R,
) -> MultivaluedMap {
    random_mapping(domain, codomain, rng)
}

/// Random minimization program with small rational coefficients, mixing
/// relations and occasionally dropping the nonnegativity bounds.
pub fn random_program<R: Rng>(max_vars: usize, max_constraints: usize, rng: &mut R) -> LinearProgram {
    let n = rng.random_range(1..=max_vars);
    let m = rng.random_range(0..=max_constraints);
    let small = |rng: &mut R| rat(rng.random_range(-4..=4), rng.random_range(1..=3));
    let objective = (0..n).map(|_| small(rng)).collect();
    let constraints = (0..m)
        .map(|_| {
            let coeffs = (0..n).map(|_| small(rng)).collect();
            let relation = match rng.random_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Eq,
                _ => Relation::Ge,
            };
            Constraint::new(coeffs, relation, small(rng))
        })
        .collect();
    let nonneg = rng.random_range(0..4) > 0;
    LinearProgram::new(objective, constraints, nonneg).expect("generated rows are dimensioned")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope;

    #[test]
    fn measures_are_valid_and_reproducible() {
        let space = indexed_space("y", 4);
        let mut rng = rng_from_seed(11);
        let p1 = random_measure(&space, 12, &mut rng);
        let mut rng = rng_from_seed(11);
        let p2 = random_measure(&space, 12, &mut rng);
        assert_eq!(p1, p2);
    }

    #[test]
    fn min_envelopes_pass_the_envelope_check() {
        let space = indexed_space("y", 3);
        let mut rng = rng_from_seed(5);
        for _ in 0..10 {
            let ell = random_min_envelope(&space, 4, 8, &mut rng);
            assert!(envelope::is_lower_envelope(&ell).unwrap().holds);
        }
    }

    #[test]
    fn dominated_functions_are_dominated() {
        let space = indexed_space("y", 3);
        let mut rng = rng_from_seed(9);
        for _ in 0..10 {
            let ell = random_dominated_function(&space, 8, &mut rng);
            assert!(ell.is_normalized());
            assert!(envelope::is_dominated(&ell).unwrap().is_some());
        }
    }

    #[test]
    fn belief_functions_have_nonnegative_masses() {
        let space = indexed_space("x", 3);
        let mut rng = rng_from_seed(3);
        for _ in 0..10 {
            let f = random_belief_function(&space, 10, &mut rng);
            assert!(crate::dempster::is_belief_function(&f).unwrap());
        }
    }
}
