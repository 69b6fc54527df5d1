//! Resolutions and compositions of convex geometries.
//!
//! A resolution replaces every element `x` of a base geometry by a fiber
//! geometry on `Y_x`. A subset `A` of the resolved ground set `Z` is convex
//! when
//!
//! * its projection `π(A)` is convex in the base,
//! * its trace on every fiber it meets is convex in that fiber, and
//! * it contains the whole fiber over every element of `π(A)` that is not
//!   extreme in `π(A)`.
//!
//! Dropping the third requirement gives the composition, which need not be
//! a convex geometry.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::{GroundSet, Subset, MAX_ELEMENTS};

/// Labels for the resolved ground set: fiber labels verbatim when they are
/// pairwise distinct across fibers, otherwise qualified as `base.fiber`.
pub(crate) fn qualified_labels(base: &GroundSet, fibers: &[&GroundSet]) -> Vec<String> {
    let plain: Vec<String> = fibers
        .iter()
        .flat_map(|f| f.labels().iter().cloned())
        .collect();
    let mut sorted = plain.clone();
    sorted.sort();
    if sorted.windows(2).all(|w| w[0] != w[1]) {
        return plain;
    }
    fibers
        .iter()
        .enumerate()
        .flat_map(|(x, f)| {
            f.labels()
                .iter()
                .map(move |y| format!("{}.{}", base.label(x), y))
        })
        .collect()
}

/// A base geometry together with one fiber geometry per base element.
///
/// The resolved ground set lists the fibers one after another, in base
/// order, so every fiber occupies a contiguous block of bits.
#[derive(Clone, Debug)]
pub struct ResolutionSpec {
    base: ConvexGeometry,
    fibers: Vec<ConvexGeometry>,
    ground: GroundSet,
    offsets: Vec<usize>,
    projection: Vec<usize>,
}

impl ResolutionSpec {
    pub fn new(base: ConvexGeometry, fibers: Vec<ConvexGeometry>) -> Result<Self> {
        if fibers.len() != base.size() {
            return Err(Error::InvalidResolution(format!(
                "base has {} elements but {} fibers were given",
                base.size(),
                fibers.len()
            )));
        }
        let total: usize = fibers.iter().map(ConvexGeometry::size).sum();
        if total > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "resolved ground set",
                size: total,
                max: MAX_ELEMENTS,
            });
        }
        let grounds: Vec<&GroundSet> = fibers.iter().map(ConvexGeometry::ground).collect();
        let ground = GroundSet::new(qualified_labels(base.ground(), &grounds))?;
        let mut offsets = Vec::with_capacity(fibers.len());
        let mut projection = Vec::with_capacity(total);
        for (x, fiber) in fibers.iter().enumerate() {
            offsets.push(projection.len());
            projection.extend(std::iter::repeat_n(x, fiber.size()));
        }
        Ok(ResolutionSpec {
            base,
            fibers,
            ground,
            offsets,
            projection,
        })
    }

    pub fn base(&self) -> &ConvexGeometry {
        &self.base
    }

    pub fn fibers(&self) -> &[ConvexGeometry] {
        &self.fibers
    }

    pub fn fiber(&self, x: usize) -> &ConvexGeometry {
        &self.fibers[x]
    }

    /// The resolved ground set `Z`.
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Base element over each element of `Z`.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// `Y_x` as a subset of `Z`.
    pub fn fiber_mask(&self, x: usize) -> Subset {
        Subset::from_bits(Subset::full(self.fibers[x].size()).bits() << self.offsets[x])
    }

    /// Lifts a subset of the fiber over `x` into `Z`.
    pub fn embed(&self, x: usize, set: Subset) -> Subset {
        Subset::from_bits(set.bits() << self.offsets[x])
    }

    /// `A ∩ Y_x`, expressed over the fiber's own ground set.
    pub fn trace(&self, set: Subset, x: usize) -> Subset {
        Subset::from_bits(set.bits() >> self.offsets[x]) & Subset::full(self.fibers[x].size())
    }

    /// `π(A)`.
    pub fn project(&self, set: Subset) -> Subset {
        set.iter().map(|z| self.projection[z]).collect()
    }

    /// `π⁻¹(B)`.
    pub fn preimage(&self, set: Subset) -> Subset {
        set.iter()
            .fold(Subset::EMPTY, |acc, x| acc | self.fiber_mask(x))
    }

    /// Both the base and at least one fiber have more than one element.
    pub fn is_nontrivial(&self) -> bool {
        self.base.size() > 1 && self.fibers.iter().any(|f| f.size() > 1)
    }

    // Candidate generator shared by `resolve` and `compose`: for every base
    // member G, every x ∈ G takes a nonempty fiber member when `free(G)`
    // contains x and the whole fiber otherwise.
    fn generate(&self, free: impl Fn(Subset) -> Subset) -> Vec<Subset> {
        let mut out = Vec::new();
        for &g in self.base.members() {
            let free = free(g);
            let mut partial = vec![Subset::EMPTY];
            for x in g.iter() {
                let options: Vec<Subset> = if free.contains(x) {
                    self.fibers[x]
                        .family()
                        .iter()
                        .filter(|s| !s.is_empty())
                        .map(|s| self.embed(x, s))
                        .collect()
                } else {
                    vec![self.fiber_mask(x)]
                };
                partial = partial
                    .iter()
                    .flat_map(|&p| options.iter().map(move |&o| p | o))
                    .collect();
            }
            out.extend(partial);
        }
        out
    }
}

/// The resolution of `spec`; always a convex geometry.
pub fn resolve(spec: &ResolutionSpec) -> ConvexGeometry {
    let sets = spec.generate(|g| spec.base.extreme(g));
    let family = SetFamily::new(spec.ground.clone(), sets).expect("generated masks lie in Z");
    ConvexGeometry::new(family).expect("a resolution of convex geometries is a convex geometry")
}

/// The composition of `spec`: like [`resolve`] without forcing whole fibers
/// over non-extreme base elements. Not necessarily a convex geometry.
pub fn compose(spec: &ResolutionSpec) -> SetFamily {
    SetFamily::new(spec.ground.clone(), spec.generate(|g| g)).expect("generated masks lie in Z")
}

/// Convex hull in the resolution, from base and fiber hulls alone.
pub fn resolved_conv(spec: &ResolutionSpec, set: Subset) -> Subset {
    let projected = spec.project(set);
    let ex = spec.base.extreme(projected);
    let hull = spec.base.conv(projected);
    let from_extreme = ex.iter().fold(Subset::EMPTY, |acc, x| {
        acc | spec.embed(x, spec.fibers[x].conv(spec.trace(set, x)))
    });
    from_extreme | spec.preimage(hull - ex)
}

/// Extreme elements in the resolution, from base and fiber operators alone.
pub fn resolved_extreme(spec: &ResolutionSpec, set: Subset) -> Subset {
    let ex = spec.base.extreme(spec.project(set));
    ex.iter().fold(Subset::EMPTY, |acc, x| {
        acc | spec.embed(x, spec.fibers[x].extreme(spec.trace(set, x)))
    })
}

/// Every base element that is not extreme in the whole base carries a
/// one-element fiber.
pub fn is_extreme_resolution(spec: &ResolutionSpec) -> bool {
    let ex = spec.base.extreme(spec.base.full());
    (0..spec.base.size()).all(|x| ex.contains(x) || spec.fibers[x].size() == 1)
}

/// Whether the resolution and the composition coincide. This happens exactly
/// for extreme resolutions.
pub fn check_extreme_composition_equality(spec: &ResolutionSpec) -> bool {
    let equal = resolve(spec).family() == &compose(spec);
    debug_assert_eq!(equal, is_extreme_resolution(spec));
    equal
}
