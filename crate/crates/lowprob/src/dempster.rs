//! Belief functions from multivalued mappings, and monotonicity checks.
//!
//! A [`MultivaluedMap`] assigns each outcome of `Y` a nonempty set of
//! consistent outcomes in `X`. Pushing a probability measure on `Y` through
//! it yields a belief function on `X`: nonnegative mass-function
//! decomposition, r-monotone at every order. The checkers here verify those
//! structural properties from scratch rather than assuming them.

use num_traits::{One, Signed, Zero};
use rand::seq::index::sample as sample_indices;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::setfun::{mobius, ProbMeasure, SetFunction};
use crate::space::{FiniteSpace, Subset};

/// `Y -> 2^X` with every image nonempty.
#[derive(Clone, Debug)]
pub struct MultivaluedMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    images: Vec<Subset>,
}

impl MultivaluedMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, images: Vec<Subset>) -> Result<Self> {
        if images.len() != domain.size() {
            return Err(Error::InvalidInput(format!(
                "{} images for a domain of {} elements",
                images.len(),
                domain.size()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.space() != &codomain {
                return Err(Error::SpaceMismatch(format!(
                    "image of {:?} lives in {:?}, expected {:?}",
                    domain.label(i),
                    img.space(),
                    codomain
                )));
            }
            if img.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "image of {:?} is empty; every image must be nonempty",
                    domain.label(i)
                )));
            }
        }
        Ok(MultivaluedMap { domain, codomain, images })
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn image(&self, index: usize) -> &Subset {
        &self.images[index]
    }

    pub fn images(&self) -> &[Subset] {
        &self.images
    }

    /// `{ y : image(y) is a subset of a }` as a subset of the domain.
    pub fn preimage_of_superset(&self, a: &Subset) -> Result<Subset> {
        if a.space() != &self.codomain {
            return Err(Error::SpaceMismatch(
                "preimage queried with a subset of the wrong space".into(),
            ));
        }
        let mut mask = 0u32;
        for (y, img) in self.images.iter().enumerate() {
            if img.is_subset_of(a) {
                mask |= 1 << y;
            }
        }
        self.domain.subset(mask)
    }
}

/// `Y -> X`, total.
#[derive(Clone, Debug)]
pub struct PointMap {
    domain: FiniteSpace,
    codomain: FiniteSpace,
    targets: Vec<usize>,
}

impl PointMap {
    pub fn new(domain: FiniteSpace, codomain: FiniteSpace, targets: Vec<usize>) -> Result<Self> {
        if targets.len() != domain.size() {
            return Err(Error::InvalidInput(format!(
                "{} targets for a domain of {} elements",
                targets.len(),
                domain.size()
            )));
        }
        if let Some(&bad) = targets.iter().find(|&&t| t >= codomain.size()) {
            return Err(Error::InvalidInput(format!(
                "target index {bad} out of range for codomain of {} elements",
                codomain.size()
            )));
        }
        Ok(PointMap { domain, codomain, targets })
    }

    pub fn domain(&self) -> &FiniteSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteSpace {
        &self.codomain
    }

    pub fn target(&self, index: usize) -> usize {
        self.targets[index]
    }

    /// Lifts to a multivalued map with singleton images.
    pub fn to_multivalued(&self) -> MultivaluedMap {
        let images = self
            .targets
            .iter()
            .map(|&t| self.codomain.singleton(t))
            .collect();
        MultivaluedMap::new(self.domain.clone(), self.codomain.clone(), images)
            .expect("singleton images are nonempty")
    }
}

/// Pushforward probability of `a` under a point map:
/// `p({ y : g(y) in a })`.
pub fn pushforward(p: &ProbMeasure, g: &PointMap, a: &Subset) -> Result<Rational> {
    if p.space() != g.domain() {
        return Err(Error::SpaceMismatch(
            "pushforward measure and map domain differ".into(),
        ));
    }
    if a.space() != g.codomain() {
        return Err(Error::SpaceMismatch(
            "pushforward queried with a subset outside the codomain".into(),
        ));
    }
    let mut total = Rational::zero();
    for y in 0..g.domain().size() {
        if a.contains(g.target(y)) {
            total += p.mass(y);
        }
    }
    Ok(total)
}

/// The belief function induced by a measure and a multivalued map:
/// value at `a` is `p({ y : image(y) subset of a })`.
pub fn belief_from_mapping(p: &ProbMeasure, map: &MultivaluedMap) -> Result<SetFunction> {
    if p.space() != map.domain() {
        return Err(Error::SpaceMismatch(
            "measure and mapping domain differ".into(),
        ));
    }
    let codomain = map.codomain().clone();
    let values = codomain
        .subsets()
        .map(|a| {
            let pre = map.preimage_of_superset(&a).expect("same codomain");
            p.measure_of(&pre).expect("same domain")
        })
        .collect();
    SetFunction::new(codomain, values)
}

/// Outcome of an exhaustive r-monotonicity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityCheck {
    pub holds: bool,
    /// A violating collection of `r` distinct subsets, when one exists.
    pub witness: Option<Vec<Subset>>,
}

/// Enumeration limits for exhaustive r-monotonicity checking.
#[derive(Clone, Copy, Debug)]
pub struct MonotonicityLimits {
    /// Largest order checked exhaustively.
    pub max_r: u32,
    /// Largest space size for order-2 checks.
    pub max_size_pairs: usize,
    /// Largest space size for orders 3 and above.
    pub max_size_higher: usize,
}

impl Default for MonotonicityLimits {
    fn default() -> Self {
        MonotonicityLimits { max_r: 3, max_size_pairs: 5, max_size_higher: 4 }
    }
}

/// Exhaustive r-monotonicity with default limits; see
/// [`is_r_monotone_with_limits`].
pub fn is_r_monotone(f: &SetFunction, r: u32) -> Result<MonotonicityCheck> {
    is_r_monotone_with_limits(f, r, MonotonicityLimits::default())
}

/// Checks the inclusion-exclusion inequality
/// `f(A_1 u ... u A_r) >= sum over nonempty I of (-1)^{|I|-1} f(intersection)`
/// over every collection of `r` distinct subsets, and recursively at each
/// lower order down to 2. Repeats in a collection reduce the inequality to a
/// lower-order instance, so enumerating distinct unordered collections loses
/// nothing; the sequence semantics is cross-checked in tests.
///
/// Returns a violating collection on failure. Spaces beyond the limits are
/// refused; use [`is_r_monotone_sampled`] there.
pub fn is_r_monotone_with_limits(
    f: &SetFunction,
    r: u32,
    limits: MonotonicityLimits,
) -> Result<MonotonicityCheck> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("monotonicity order must be >= 2, got {r}")));
    }
    f.require_normalized("r-monotonicity input")?;
    if r > limits.max_r {
        return Err(Error::UnsupportedSize(format!(
            "exhaustive checking is capped at order {}, got {r}",
            limits.max_r
        )));
    }
    let size = f.space().size();
    for order in 2..=r {
        let cap = if order == 2 { limits.max_size_pairs } else { limits.max_size_higher };
        if size > cap {
            return Err(Error::UnsupportedSize(format!(
                "exhaustive order-{order} checking is capped at space size {cap}, got {size}"
            )));
        }
    }

    for order in 2..=r {
        if let Some(witness) = first_violation(f, order as usize) {
            return Ok(MonotonicityCheck { holds: false, witness: Some(witness) });
        }
    }
    Ok(MonotonicityCheck { holds: true, witness: None })
}

/// First collection (in lexicographic mask order) violating the order-`r`
/// inequality, or `None`.
fn first_violation(f: &SetFunction, r: usize) -> Option<Vec<Subset>> {
    let num_subsets = f.space().num_subsets() as u32;
    let mut combo: Vec<u32> = (0..r as u32).collect();
    if (r as u32) > num_subsets {
        return None;
    }
    loop {
        if violates(f, &combo) {
            let space = f.space();
            return Some(
                combo
                    .iter()
                    .map(|&m| space.subset(m).expect("mask in range"))
                    .collect(),
            );
        }
        // next lexicographic combination
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if combo[i] < num_subsets - (r - i) as u32 {
                combo[i] += 1;
                for j in i + 1..r {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Evaluates the order-`|masks|` inequality for one collection.
fn violates(f: &SetFunction, masks: &[u32]) -> bool {
    let r = masks.len();
    let union = masks.iter().fold(0u32, |acc, &m| acc | m);
    let mut rhs = Rational::zero();
    for pick in 1u32..(1 << r) {
        let mut inter = f.space().full_mask();
        for (i, &m) in masks.iter().enumerate() {
            if pick & (1 << i) != 0 {
                inter &= m;
            }
        }
        let term = f.value_at_mask(inter);
        if pick.count_ones() % 2 == 1 {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    f.value_at_mask(union) < &rhs
}

/// Result of a seeded random search for violations: finding one is
/// conclusive, finding none is incomplete evidence.
#[derive(Clone, Debug)]
pub struct SampledMonotonicity {
    pub counterexample: Option<Vec<Subset>>,
    pub samples_tried: usize,
}

/// Samples `samples` collections of `r` distinct subsets with a seeded RNG
/// and evaluates the order-`r` inequality on each. Suited to spaces beyond
/// the exhaustive limits.
pub fn is_r_monotone_sampled(
    f: &SetFunction,
    r: u32,
    seed: u64,
    samples: usize,
) -> Result<SampledMonotonicity> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("monotonicity order must be >= 2, got {r}")));
    }
    f.require_normalized("r-monotonicity input")?;
    let num_subsets = f.space().num_subsets();
    if (r as usize) > num_subsets {
        return Err(Error::InvalidInput(format!(
            "order {r} exceeds the number of subsets {num_subsets}"
        )));
    }
    let mut rng = crate::sampling::rng_from_seed(seed);
    for tried in 0..samples {
        let masks: Vec<u32> = sample_indices(&mut rng, num_subsets, r as usize)
            .into_iter()
            .map(|i| i as u32)
            .collect();
        if violates(f, &masks) {
            let space = f.space();
            let witness = masks
                .iter()
                .map(|&m| space.subset(m).expect("mask in range"))
                .collect();
            return Ok(SampledMonotonicity {
                counterexample: Some(witness),
                samples_tried: tried + 1,
            });
        }
    }
    Ok(SampledMonotonicity { counterexample: None, samples_tried: samples })
}

/// Belief-function test via the mass decomposition: nonnegative everywhere
/// with zero mass at the empty set. Equivalent, on finite spaces, to
/// r-monotonicity at every order, but finitely checkable.
pub fn is_belief_function(f: &SetFunction) -> Result<bool> {
    f.require_normalized("belief-function input")?;
    let m = mobius(f);
    Ok(m.value_at_mask(0).is_zero() && m.values().iter().all(|v| !v.is_negative()))
}

/// The function putting value 1 exactly on supersets of `focal`:
/// the one-focal-set belief function, and a lower envelope.
pub fn simple_support(space: &FiniteSpace, focal: &Subset) -> Result<SetFunction> {
    if focal.space() != space {
        return Err(Error::SpaceMismatch("focal set from a different space".into()));
    }
    if focal.is_empty() {
        return Err(Error::InvalidInput("focal set must be nonempty".into()));
    }
    Ok(SetFunction::from_fn(space, |a| {
        if focal.is_subset_of(a) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// Helper for drawing a random multivalued map; images are uniform nonempty
/// subsets of the codomain.
pub fn random_mapping<R: Rng>(
    domain: &FiniteSpace,
    codomain: &FiniteSpace,
    rng: &mut R,
) -> MultivaluedMap {
    let images = (0..domain.size())
        .map(|_| {
            let mask = rng.random_range(1..codomain.num_subsets() as u32);
            codomain.subset(mask).expect("mask in range")
        })
        .collect();
    MultivaluedMap::new(domain.clone(), codomain.clone(), images).expect("images nonempty")
}
