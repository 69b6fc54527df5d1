//! Path-independent choice functions and their correspondence with convex
//! geometries through the extreme operator.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::{GroundSet, Subset};

/// Largest ground set for which a full choice table is materialized.
pub const MAX_CHOICE_ELEMENTS: usize = 20;

/// A choice correspondence tabulated on every subset: `c(A) ⊆ A`, and
/// `c(A)` is nonempty whenever `A` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoiceFunction {
    ground: GroundSet,
    table: Vec<Subset>,
}

impl ChoiceFunction {
    /// `table[A.bits()]` is the choice from `A`.
    pub fn new(ground: GroundSet, table: Vec<Subset>) -> Result<Self> {
        let n = ground.len();
        if n > MAX_CHOICE_ELEMENTS {
            return Err(Error::TooLarge {
                what: "choice table",
                size: n,
                max: MAX_CHOICE_ELEMENTS,
            });
        }
        if table.len() != 1 << n {
            return Err(Error::InvalidChoice(format!(
                "expected {} entries, got {}",
                1u64 << n,
                table.len()
            )));
        }
        for (bits, &chosen) in table.iter().enumerate() {
            let a = Subset::from_bits(bits as u64);
            if !chosen.is_subset(a) {
                return Err(Error::InvalidChoice(format!(
                    "choice {chosen:?} from {a:?} is not a subset"
                )));
            }
            if !a.is_empty() && chosen.is_empty() {
                return Err(Error::InvalidChoice(format!("empty choice from {a:?}")));
            }
        }
        Ok(ChoiceFunction { ground, table })
    }

    /// Tabulates `rule` on every subset.
    pub fn from_fn(ground: GroundSet, rule: impl Fn(Subset) -> Subset) -> Result<Self> {
        let n = ground.len();
        if n > MAX_CHOICE_ELEMENTS {
            return Err(Error::TooLarge {
                what: "choice table",
                size: n,
                max: MAX_CHOICE_ELEMENTS,
            });
        }
        let table = (0..1u64 << n).map(|b| rule(Subset::from_bits(b))).collect();
        ChoiceFunction::new(ground, table)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn choose(&self, set: Subset) -> Subset {
        self.table[set.bits() as usize]
    }

    pub fn table(&self) -> &[Subset] {
        &self.table
    }

    /// First ordered pair `(A, B)` with `c(A ∪ B) ≠ c(c(A) ∪ c(B))`.
    pub fn path_independence_violation(&self) -> Option<(Subset, Subset)> {
        let size = self.table.len() as u64;
        for a in 0..size {
            let a = Subset::from_bits(a);
            for b in 0..size {
                let b = Subset::from_bits(b);
                if self.choose(a | b) != self.choose(self.choose(a) | self.choose(b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_path_independent(&self) -> bool {
        self.path_independence_violation().is_none()
    }
}

/// The extreme operator of `g` as a choice function.
pub fn extreme_as_choice(g: &ConvexGeometry) -> Result<ChoiceFunction> {
    ChoiceFunction::from_fn(g.ground().clone(), |a| g.extreme(a))
}

/// The unique convex geometry whose extreme operator is `c`:
/// all `G` such that `c(A) = c(G)` forces `A ⊆ G`.
pub fn geometry_from_choice(c: &ChoiceFunction) -> Result<ConvexGeometry> {
    if let Some((first, second)) = c.path_independence_violation() {
        return Err(Error::NotPathIndependent { first, second });
    }
    // For every chosen value v, the union of all sets choosing v.
    let size = c.table.len();
    let mut span = vec![Subset::EMPTY; size];
    for (bits, &chosen) in c.table.iter().enumerate() {
        let slot = &mut span[chosen.bits() as usize];
        *slot = *slot | Subset::from_bits(bits as u64);
    }
    let sets = (0..size as u64)
        .map(Subset::from_bits)
        .filter(|&g| span[c.choose(g).bits() as usize].is_subset(g));
    ConvexGeometry::new(SetFamily::new(c.ground.clone(), sets)?)
}
