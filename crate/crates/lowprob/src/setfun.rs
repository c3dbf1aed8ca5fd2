//! Set functions and probability measures on a finite space.
//!
//! A [`SetFunction`] is a total assignment of a [`Rational`] to every subset
//! of its space, stored as a dense table indexed by bitmask. Lower
//! probabilities, belief functions, and mass functions are all set functions;
//! predicates distinguish them. A [`ProbMeasure`] is a validated point-mass
//! vector (nonnegative, exact sum 1).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::space::{FiniteSpace, Subset};

/// Total map `2^space -> Rational`, dense over subset masks.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFunction {
    space: FiniteSpace,
    values: Vec<Rational>,
}

impl SetFunction {
    /// Builds from a dense table; `values[mask]` is the value at that subset.
    pub fn new(space: FiniteSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.num_subsets() {
            return Err(Error::InvalidInput(format!(
                "set function table has {} entries, space with {} elements needs {}",
                values.len(),
                space.size(),
                space.num_subsets()
            )));
        }
        Ok(SetFunction { space, values })
    }

    /// Builds by evaluating a closure on every subset (ascending mask order).
    pub fn from_fn(space: &FiniteSpace, mut f: impl FnMut(&Subset) -> Rational) -> Self {
        let values = space.subsets().map(|s| f(&s)).collect();
        SetFunction { space: space.clone(), values }
    }

    /// The constant-zero function with value 1 on the full set only:
    /// total ignorance.
    pub fn vacuous(space: &FiniteSpace) -> Self {
        SetFunction::from_fn(space, |s| {
            if s.is_full() {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn value(&self, subset: &Subset) -> &Rational {
        assert!(
            subset.space() == &self.space,
            "subset from a different space: {subset:?}"
        );
        &self.values[subset.mask() as usize]
    }

    pub fn value_at_mask(&self, mask: u32) -> &Rational {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Normalized means value 0 at the empty set and 1 at the full set.
    pub fn is_normalized(&self) -> bool {
        self.values[0].is_zero() && self.values[self.space.full_mask() as usize].is_one()
    }

    pub(crate) fn require_normalized(&self, what: &str) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(format!(
                "{what}: value at empty set is {}, at full set {}",
                format_rational(&self.values[0]),
                format_rational(&self.values[self.space.full_mask() as usize])
            )))
        }
    }

    /// `(subset, value)` pairs in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rational)> + '_ {
        self.space.subsets().zip(self.values.iter())
    }

    /// Pointwise minimum of two set functions over the same space.
    pub fn pointwise_min(&self, other: &SetFunction) -> Result<SetFunction> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                "pointwise min needs matching spaces".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
            .collect();
        Ok(SetFunction { space: self.space.clone(), values })
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .iter()
            .map(|(s, v)| format!("{s}={}", format_rational(v)))
            .collect();
        write!(f, "SetFunction[{}]", entries.join(", "))
    }
}

/// `u(A) = 1 - l(complement of A)`: the upper dual of a normalized lower set
/// function. Applying it twice gives back the input.
pub fn upper_from_lower(lower: &SetFunction) -> Result<SetFunction> {
    lower.require_normalized("upper_from_lower input")?;
    let space = lower.space().clone();
    let full = space.full_mask();
    let values = (0..space.num_subsets() as u32)
        .map(|mask| Rational::one() - lower.value_at_mask(!mask & full))
        .collect();
    SetFunction::new(space, values)
}

/// Alternating-sum inverse: `m(A) = sum over B subset of A of
/// (-1)^{|A \ B|} f(B)`, computed by the in-place subset transform.
/// [`from_mass`] is its inverse.
pub fn mobius(f: &SetFunction) -> SetFunction {
    let mut values = f.values.clone();
    let size = f.space().size();
    for i in 0..size {
        let bit = 1usize << i;
        for mask in 0..values.len() {
            if mask & bit != 0 {
                let prev = values[mask ^ bit].clone();
                values[mask] -= prev;
            }
        }
    }
    SetFunction { space: f.space().clone(), values }
}

/// Cumulative subset sums: `f(A) = sum over B subset of A of m(B)`.
/// Inverse of [`mobius`].
pub fn from_mass(m: &SetFunction) -> SetFunction {
    let mut values = m.values.clone();
    let size = m.space().size();
    for i in 0..size {
        let bit = 1usize << i;
        for mask in 0..values.len() {
            if mask & bit != 0 {
                let prev = values[mask ^ bit].clone();
                values[mask] += prev;
            }
        }
    }
    SetFunction { space: m.space().clone(), values }
}

/// A probability measure given by exact point masses.
#[derive(Clone, PartialEq, Eq)]
pub struct ProbMeasure {
    space: FiniteSpace,
    point_mass: Vec<Rational>,
}

impl ProbMeasure {
    /// Validates the point-mass table: every mass nonnegative, sum exactly 1.
    pub fn new(space: FiniteSpace, point_mass: Vec<Rational>) -> Result<Self> {
        if point_mass.len() != space.size() {
            return Err(Error::InvalidMeasure(format!(
                "{} masses for a space of {} elements",
                point_mass.len(),
                space.size()
            )));
        }
        for (i, m) in point_mass.iter().enumerate() {
            if m < &Rational::zero() {
                return Err(Error::InvalidMeasure(format!(
                    "negative mass {} at {:?}",
                    format_rational(m),
                    space.label(i)
                )));
            }
        }
        let total: Rational = point_mass.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "masses sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(ProbMeasure { space, point_mass })
    }

    pub fn uniform(space: FiniteSpace) -> Self {
        let n = space.size() as i64;
        let mass = crate::rational::rat(1, n);
        let point_mass = vec![mass; space.size()];
        ProbMeasure { space, point_mass }
    }

    /// All mass on one element.
    pub fn point_mass_at(space: FiniteSpace, index: usize) -> Self {
        assert!(index < space.size(), "element index out of range");
        let mut point_mass = vec![Rational::zero(); space.size()];
        point_mass[index] = Rational::one();
        ProbMeasure { space, point_mass }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn mass(&self, index: usize) -> &Rational {
        &self.point_mass[index]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.point_mass
    }

    /// `p(A)`: sum of point masses over the members of `A`.
    pub fn measure_of(&self, subset: &Subset) -> Result<Rational> {
        if subset.space() != &self.space {
            return Err(Error::SpaceMismatch(format!(
                "measure over {:?} queried with subset of {:?}",
                self.space,
                subset.space()
            )));
        }
        Ok(subset.indices().map(|i| &self.point_mass[i]).sum())
    }

    /// The measure as a (necessarily additive, normalized) set function.
    pub fn to_set_function(&self) -> SetFunction {
        SetFunction::from_fn(&self.space, |s| {
            s.indices().map(|i| &self.point_mass[i]).sum()
        })
    }
}

impl fmt::Debug for ProbMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .space
            .labels()
            .iter()
            .zip(&self.point_mass)
            .map(|(l, m)| format!("{l}={}", format_rational(m)))
            .collect();
        write!(f, "ProbMeasure[{}]", entries.join(", "))
    }
}
