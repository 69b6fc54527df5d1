use std::collections::HashSet;

use crate::error::Result;
use crate::ground::{GroundSet, Subset};

/// A collection of subsets of a ground set.
///
/// Sets are kept strictly ascending as integers alongside a hash index for
/// membership queries. Two families are equal when they share a ground set
/// and hold the same masks.
#[derive(Clone, Debug)]
pub struct SetFamily {
    ground: GroundSet,
    sets: Vec<Subset>,
    index: HashSet<Subset>,
}

impl SetFamily {
    /// Normalizes (sorts, deduplicates) and validates `sets` against `ground`.
    pub fn new<I: IntoIterator<Item = Subset>>(ground: GroundSet, sets: I) -> Result<Self> {
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        for &s in &sets {
            ground.check(s)?;
        }
        sets.sort_unstable();
        sets.dedup();
        let index = sets.iter().copied().collect();
        Ok(SetFamily {
            ground,
            sets,
            index,
        })
    }

    /// The power set of `ground`.
    pub fn power_set(ground: GroundSet) -> Result<Self> {
        let n = ground.len();
        if n > 24 {
            return Err(crate::Error::TooLarge {
                what: "power set",
                size: n,
                max: 24,
            });
        }
        let sets = (0..1u64 << n).map(Subset::from_bits);
        SetFamily::new(ground, sets)
    }

    /// Builds a family from label lists.
    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, sets: &[&[S]]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|labels| ground.subset(labels.iter()))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, masks)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.index.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members in ascending integer order.
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.sets.iter().copied()
    }

    /// Members in canonical (size, lexicographic) order.
    pub fn canonical_order(&self) -> Vec<Subset> {
        let mut out = self.sets.clone();
        out.sort_by(|a, b| a.canonical_cmp(*b));
        out
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subfamily(&self, other: &SetFamily) -> bool {
        self.ground == other.ground && self.sets.iter().all(|s| other.contains(*s))
    }

    /// Re-expresses the family over `target`, which must carry the same
    /// labels, possibly in a different order.
    pub fn relabel_onto(&self, target: &GroundSet) -> Result<SetFamily> {
        if target.len() != self.ground.len() {
            return Err(crate::Error::GroundMismatch);
        }
        let map = self
            .ground
            .labels()
            .iter()
            .map(|l| target.element(l))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(target.clone(), self.sets.iter().map(|s| s.permute(&map)))
    }
}

impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.sets == other.sets
    }
}

impl Eq for SetFamily {}
