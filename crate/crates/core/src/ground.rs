//! Ground sets and subsets encoded as one machine word.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};
use std::sync::Arc;

use crate::error::Error;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of a ground set, bit `i` standing for element `i`.
///
/// A `Subset` carries no reference to its ground set; validity against a
/// particular [`GroundSet`] is checked with [`GroundSet::check`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn singleton(element: usize) -> Self {
        Subset(1 << element)
    }

    /// The first `n` elements.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |acc, e| acc.with(e))
    }

    pub const fn contains(self, element: usize) -> bool {
        element < 64 && self.0 >> element & 1 == 1
    }

    #[must_use]
    pub const fn with(self, element: usize) -> Self {
        Subset(self.0 | 1 << element)
    }

    #[must_use]
    pub const fn without(self, element: usize) -> Self {
        Subset(self.0 & !(1 << element))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Maps element `i` to `perm[i]`.
    #[must_use]
    pub fn permute(self, perm: &[usize]) -> Self {
        self.iter().fold(Subset::EMPTY, |acc, e| acc.with(perm[e]))
    }

    /// Re-indexes the elements of `self` lying in `within` onto
    /// `0..within.len()`, preserving their relative order.
    #[must_use]
    pub fn compress(self, within: Subset) -> Self {
        let mut out = 0u64;
        for (k, e) in within.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << k;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`].
    #[must_use]
    pub fn expand(self, within: Subset) -> Self {
        let mut out = 0u64;
        for (k, e) in within.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << e;
            }
        }
        Subset(out)
    }

    /// Canonical order used for witnesses and serialized families: by size,
    /// then lexicographically on the increasing element sequence.
    pub fn canonical_cmp(self, other: Subset) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // `self` holds the lowest differing element.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

/// Iterator over the elements of a [`Subset`] in increasing order.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Every subset of `0..n` in canonical order.
pub fn all_subsets_canonical(n: usize) -> Vec<Subset> {
    assert!(n <= 24, "refusing to list 2^{n} subsets");
    let mut all: Vec<Subset> = (0..1u64 << n).map(Subset).collect();
    all.sort_by(|a, b| a.canonical_cmp(*b));
    all
}

/// A finite, labeled universe. Element `i` is bit `i` of every [`Subset`].
///
/// Cloning is cheap: the label list is shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() || labels.len() > MAX_ELEMENTS {
            return Err(Error::GroundSize(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(GroundSet {
            labels: labels.into(),
        })
    }

    /// Ground set labeled `a`, `b`, `c`, ... (then `e26`, `e27`, ...).
    pub fn letters(n: usize) -> Result<Self, Error> {
        GroundSet::new((0..n).map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("e{i}")
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element(&self, label: &str) -> Result<usize, Error> {
        self.position(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    /// Builds a subset from labels.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset, Error>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        labels.into_iter().try_fold(Subset::EMPTY, |acc, l| {
            Ok(acc.with(self.element(l.as_ref())?))
        })
    }

    /// Labels of the members of `set`, in ground order.
    pub fn names(&self, set: Subset) -> Vec<String> {
        set.iter().map(|e| self.labels[e].clone()).collect()
    }

    /// Human-readable `{a, b}` rendering.
    pub fn show(&self, set: Subset) -> String {
        format!("{{{}}}", self.names(set).join(", "))
    }

    pub fn check(&self, set: Subset) -> Result<Subset, Error> {
        if set.is_subset(self.full()) {
            Ok(set)
        } else {
            Err(Error::MaskOutOfRange {
                mask: set.bits(),
                size: self.len(),
            })
        }
    }

    /// The ground set induced on `within`, keeping relative order.
    pub fn restrict(&self, within: Subset) -> Result<GroundSet, Error> {
        GroundSet::new(within.iter().map(|e| self.labels[e].clone()))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}
