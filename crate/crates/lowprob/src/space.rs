//! Finite outcome spaces and their subsets.
//!
//! A [`FiniteSpace`] is an ordered list of distinct element labels. A
//! [`Subset`] is a bitmask over the element indices of one space; all set
//! algebra is exact bit arithmetic. Spaces are immutable and cheaply
//! cloneable (shared behind an `Arc`), and two spaces compare equal when
//! their label lists are identical.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on space size: dense `2^size` tables stay desk-sized.
pub const MAX_SPACE_SIZE: usize = 16;

#[derive(Debug, PartialEq, Eq, Hash)]
struct SpaceInner {
    labels: Vec<String>,
}

/// An ordered finite set of named outcomes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace(Arc<SpaceInner>);

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSpace{:?}", self.labels())
    }
}

impl FiniteSpace {
    /// Builds a space from distinct, nonempty labels. Size must be in
    /// `1..=MAX_SPACE_SIZE`.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidInput("space must have at least one element".into()));
        }
        if labels.len() > MAX_SPACE_SIZE {
            return Err(Error::UnsupportedSize(format!(
                "space has {} elements, cap is {MAX_SPACE_SIZE}",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidInput(format!("label at index {i} is empty")));
            }
            if l.contains(',') {
                return Err(Error::InvalidInput(format!(
                    "label {l:?} contains ',', which is reserved as the subset separator"
                )));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidInput(format!("duplicate label {l:?}")));
            }
        }
        Ok(FiniteSpace(Arc::new(SpaceInner { labels })))
    }

    pub fn size(&self) -> usize {
        self.0.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.0.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    /// Number of subsets, `2^size`.
    pub fn num_subsets(&self) -> usize {
        1usize << self.size()
    }

    /// Subset from a raw bitmask; bits at positions `>= size` are rejected.
    pub fn subset(&self, mask: u32) -> Result<Subset> {
        if mask >= (1u32 << self.size()) {
            return Err(Error::InvalidInput(format!(
                "mask {mask:#b} has bits beyond space size {}",
                self.size()
            )));
        }
        Ok(Subset { space: self.clone(), mask })
    }

    /// Subset from element labels; unknown labels are rejected.
    pub fn subset_from_labels<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = 0u32;
        for l in labels {
            let l = l.as_ref();
            match self.index_of(l) {
                Some(i) => mask |= 1 << i,
                None => {
                    return Err(Error::InvalidInput(format!(
                        "label {l:?} is not an element of {:?}",
                        self.labels()
                    )))
                }
            }
        }
        Ok(Subset { space: self.clone(), mask })
    }

    /// Parses a comma-joined subset name as used in problem files; the empty
    /// string names the empty set.
    pub fn subset_from_name(&self, name: &str) -> Result<Subset> {
        if name.is_empty() {
            return Ok(self.empty());
        }
        self.subset_from_labels(name.split(','))
    }

    pub fn empty(&self) -> Subset {
        Subset { space: self.clone(), mask: 0 }
    }

    pub fn full(&self) -> Subset {
        Subset { space: self.clone(), mask: self.full_mask() }
    }

    pub fn singleton(&self, index: usize) -> Subset {
        assert!(index < self.size(), "element index out of range");
        Subset { space: self.clone(), mask: 1 << index }
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.size()) - 1
    }

    /// All subsets in ascending mask order (empty set first, full set last).
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        (0..self.num_subsets() as u32).map(move |mask| Subset { space: self.clone(), mask })
    }
}

/// A subset of one [`FiniteSpace`], stored as a bitmask over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    space: FiniteSpace,
    mask: u32,
}

impl Subset {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == self.space.full_mask()
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.space.size() && self.mask & (1 << index) != 0
    }

    pub fn complement(&self) -> Subset {
        Subset {
            space: self.space.clone(),
            mask: !self.mask & self.space.full_mask(),
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.assert_same_space(other);
        Subset { space: self.space.clone(), mask: self.mask | other.mask }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.assert_same_space(other);
        Subset { space: self.space.clone(), mask: self.mask & other.mask }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.assert_same_space(other);
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint_from(&self, other: &Subset) -> bool {
        self.assert_same_space(other);
        self.mask & other.mask == 0
    }

    /// Indices of member elements, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.space.size()).filter(move |i| self.mask & (1 << i) != 0)
    }

    /// Canonical name: member labels in space order, comma-joined;
    /// the empty set is the empty string.
    pub fn name(&self) -> String {
        self.indices()
            .map(|i| self.space.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn assert_same_space(&self, other: &Subset) {
        assert!(
            self.space == other.space,
            "subset operation across distinct spaces: {:?} vs {:?}",
            self.space,
            other.space
        );
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.name())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.name())
    }
}
