//! Certified convex geometries and their closure operators.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::ground::{GroundSet, Subset};

/// One failed axiom with its first witness in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The empty set is missing.
    MissingEmpty,
    /// `first ∩ second` is missing.
    NotIntersectionClosed {
        first: Subset,
        second: Subset,
        missing: Subset,
    },
    /// `member` differs from the ground set but has no one-element extension
    /// in the family.
    NotUpgradable { member: Subset },
}

impl Violation {
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::MissingEmpty => "G1",
            Violation::NotIntersectionClosed { .. } => "G2",
            Violation::NotUpgradable { .. } => "G3",
        }
    }
}

/// Every axiom a family failed, at most one entry per axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolationReport {
    pub ground: GroundSet,
    pub violations: Vec<Violation>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.ground;
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                Violation::MissingEmpty => "G1: empty set missing".to_owned(),
                Violation::NotIntersectionClosed {
                    first,
                    second,
                    missing,
                } => format!(
                    "G2: {} ∩ {} = {} missing",
                    g.show(*first),
                    g.show(*second),
                    g.show(*missing)
                ),
                Violation::NotUpgradable { member } => {
                    format!("G3: {} has no one-element extension", g.show(*member))
                }
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks the three axioms, returning a certified geometry or the report.
pub fn validate_geometry(
    family: SetFamily,
) -> std::result::Result<ConvexGeometry, ViolationReport> {
    let ordered = family.canonical_order();
    let mut violations = Vec::new();

    if !family.contains(Subset::EMPTY) {
        violations.push(Violation::MissingEmpty);
    }

    'outer: for (i, &first) in ordered.iter().enumerate() {
        for &second in &ordered[i + 1..] {
            let missing = first & second;
            if !family.contains(missing) {
                violations.push(Violation::NotIntersectionClosed {
                    first,
                    second,
                    missing,
                });
                break 'outer;
            }
        }
    }

    let full = family.ground().full();
    let n = family.ground().len();
    if let Some(&member) = ordered
        .iter()
        .find(|&&g| g != full && !(0..n).any(|x| !g.contains(x) && family.contains(g.with(x))))
    {
        violations.push(Violation::NotUpgradable { member });
    }
    // An empty family has no member to witness G3.
    if family.is_empty() {
        violations.push(Violation::NotUpgradable {
            member: Subset::EMPTY,
        });
    }

    if violations.is_empty() {
        Ok(ConvexGeometry { family, ordered })
    } else {
        Err(ViolationReport {
            ground: family.ground().clone(),
            violations,
        })
    }
}

/// A set family certified to be a convex geometry: it contains the empty
/// set, is closed under intersection and every non-full member extends by
/// one element. Immutable after construction.
#[derive(Clone, Debug)]
pub struct ConvexGeometry {
    family: SetFamily,
    // Members in canonical (size, lexicographic) order.
    ordered: Vec<Subset>,
}

impl PartialEq for ConvexGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Eq for ConvexGeometry {}

impl ConvexGeometry {
    pub fn new(family: SetFamily) -> Result<Self> {
        validate_geometry(family).map_err(Error::NotAGeometry)
    }

    /// Convenience constructor from label lists.
    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, sets: &[&[S]]) -> Result<Self> {
        ConvexGeometry::new(SetFamily::from_labels(ground, sets)?)
    }

    /// The Boolean geometry: every subset is convex.
    pub fn power_set(ground: GroundSet) -> Result<Self> {
        ConvexGeometry::new(SetFamily::power_set(ground)?)
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn ground(&self) -> &GroundSet {
        self.family.ground()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn size(&self) -> usize {
        self.ground().len()
    }

    pub fn full(&self) -> Subset {
        self.ground().full()
    }

    pub fn contains(&self, set: Subset) -> bool {
        self.family.contains(set)
    }

    /// Members in canonical order.
    pub fn members(&self) -> &[Subset] {
        &self.ordered
    }

    /// Smallest member containing `set`.
    pub fn conv(&self, set: Subset) -> Subset {
        self.family
            .iter()
            .filter(|g| set.is_subset(*g))
            .fold(self.full(), |acc, g| acc & g)
    }

    /// Elements `p` of `set` with `p ∉ conv(set ∖ {p})`.
    pub fn extreme(&self, set: Subset) -> Subset {
        set.iter()
            .filter(|&p| !self.conv(set.without(p)).contains(p))
            .collect()
    }

    /// Whether `p` is extreme in `set`. When it is, returns the first member
    /// `G` with `set ∖ {p} ⊆ G` and `p ∉ G`.
    pub fn is_extreme_in(&self, p: usize, set: Subset) -> Result<Option<Subset>> {
        if !set.contains(p) {
            return Err(Error::NotInSet { element: p });
        }
        let rest = set.without(p);
        Ok(self
            .ordered
            .iter()
            .copied()
            .find(|g| rest.is_subset(*g) && !g.contains(p)))
    }

    /// The subgeometry `{G ∩ within}` re-indexed over `within`.
    pub fn induced_subgeometry(&self, within: Subset) -> Result<ConvexGeometry> {
        self.ground().check(within)?;
        if within.is_empty() {
            return Err(Error::EmptySubset);
        }
        let ground = self.ground().restrict(within)?;
        let family = SetFamily::new(
            ground,
            self.family.iter().map(|g| (g & within).compress(within)),
        )?;
        ConvexGeometry::new(family)
    }

    /// First pair (canonical order) whose union is not a member.
    pub fn union_violation(&self) -> Option<(Subset, Subset)> {
        for (i, &a) in self.ordered.iter().enumerate() {
            for &b in &self.ordered[i + 1..] {
                if !self.contains(a | b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Closed under union, i.e. ordinal.
    pub fn is_union_closed(&self) -> bool {
        self.union_violation().is_none()
    }

    /// Every singleton is convex.
    pub fn is_atomistic(&self) -> bool {
        (0..self.size()).all(|x| self.contains(Subset::singleton(x)))
    }

    /// Same label set and same convex sets, regardless of element order.
    pub fn same_by_labels(&self, other: &ConvexGeometry) -> bool {
        match other.family.relabel_onto(self.ground()) {
            Ok(f) => f == self.family,
            Err(_) => false,
        }
    }

    /// Re-expresses the geometry over a reordering of its labels.
    pub fn relabel_onto(&self, target: &GroundSet) -> Result<ConvexGeometry> {
        let family = self.family.relabel_onto(target)?;
        let ordered = family.canonical_order();
        Ok(ConvexGeometry { family, ordered })
    }

    /// Covering pairs `(lower, upper)` of the lattice of convex sets.
    pub fn covers(&self) -> Vec<(Subset, Subset)> {
        let mut out = Vec::new();
        for &lo in &self.ordered {
            for &hi in &self.ordered {
                if lo != hi
                    && lo.is_subset(hi)
                    && !self
                        .ordered
                        .iter()
                        .any(|&m| m != lo && m != hi && lo.is_subset(m) && m.is_subset(hi))
                {
                    out.push((lo, hi));
                }
            }
        }
        out
    }
}
