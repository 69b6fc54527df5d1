//! Partial orders and the ordinal convex geometries of their ideals.

use std::collections::{HashSet, VecDeque};

use crate::enumerate::permutations;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::{all_subsets_canonical, GroundSet, Subset};
use crate::resolution::qualified_labels;

/// Largest ground set accepted by [`enumerate_posets`].
pub const MAX_POSET_ENUMERATION: usize = 5;

/// A partial order, stored as the down-set `{x : x ≤ y}` of every `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ground: GroundSet,
    below: Vec<Subset>,
}

impl Poset {
    /// The reflexive-transitive closure of `pairs` (`(x, y)` meaning
    /// `x ≤ y`). Fails with a witness cycle when the closure is not
    /// antisymmetric.
    pub fn new(ground: GroundSet, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = ground.len();
        let mut below: Vec<Subset> = (0..n).map(Subset::singleton).collect();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Format(format!(
                    "element index out of range in ({x}, {y})"
                )));
            }
            below[y] = below[y].with(x);
        }
        for k in 0..n {
            for y in 0..n {
                if below[y].contains(k) {
                    below[y] = below[y] | below[k];
                }
            }
        }
        for y in 0..n {
            for x in below[y].iter() {
                if x != y && below[x].contains(y) {
                    return Err(Error::Cycle(cycle(&ground, pairs, x, y)));
                }
            }
        }
        Ok(Poset { ground, below })
    }

    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, pairs: &[(S, S)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|(x, y)| Ok((ground.element(x.as_ref())?, ground.element(y.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::new(ground, &pairs)
    }

    /// The chain following the ground order.
    pub fn chain(ground: GroundSet) -> Self {
        let pairs: Vec<_> = (1..ground.len()).map(|i| (i - 1, i)).collect();
        Poset::new(ground, &pairs).expect("a chain is acyclic")
    }

    pub fn antichain(ground: GroundSet) -> Self {
        Poset::new(ground, &[]).expect("no relations")
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y].contains(x)
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{x : x ≤ y}`.
    pub fn down(&self, y: usize) -> Subset {
        self.below[y]
    }

    /// `{y : x ≤ y}`.
    pub fn up(&self, x: usize) -> Subset {
        (0..self.ground.len()).filter(|&y| self.leq(x, y)).collect()
    }

    /// Strict relations `x < y`, ordered by `(x, y)`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.ground.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.less(x, y))
            .collect()
    }

    /// Covering pairs `x ⋖ y`, ordered by `(x, y)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(x, y)| !(0..self.ground.len()).any(|m| self.less(x, m) && self.less(m, y)))
            .collect()
    }

    /// The ordinal geometry of all down-closed subsets.
    pub fn ideals(&self) -> ConvexGeometry {
        let n = self.ground.len();
        let mut seen = HashSet::from([Subset::EMPTY]);
        let mut stack = vec![Subset::EMPTY];
        while let Some(ideal) = stack.pop() {
            for x in (0..n).filter(|&x| !ideal.contains(x)) {
                if self.below[x].without(x).is_subset(ideal) {
                    let next = ideal.with(x);
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
            }
        }
        let family =
            SetFamily::new(self.ground.clone(), seen).expect("masks lie in the ground set");
        ConvexGeometry::new(family).expect("the ideals of a poset form a convex geometry")
    }
}

// A directed cycle through `x` and `y` in the relation given by `pairs`.
fn cycle(ground: &GroundSet, pairs: &[(usize, usize)], x: usize, y: usize) -> Vec<String> {
    let path = |from: usize, to: usize| -> Vec<usize> {
        let mut prev = vec![usize::MAX; ground.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(a, b) in pairs {
                if a == u && prev[b] == usize::MAX {
                    prev[b] = u;
                    queue.push_back(b);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        out
    };
    let mut elements = path(x, y);
    elements.extend(path(y, x).into_iter().skip(1));
    elements
        .into_iter()
        .map(|e| ground.label(e).to_owned())
        .collect()
}

/// The poset whose ideals are `g`: `x ≤ y` iff `x ∈ conv({y})`.
pub fn associated_order(g: &ConvexGeometry) -> Result<Poset> {
    if let Some((first, second)) = g.union_violation() {
        return Err(Error::NotUnionClosed { first, second });
    }
    let below = (0..g.size())
        .map(|y| g.conv(Subset::singleton(y)))
        .collect();
    let p = Poset {
        ground: g.ground().clone(),
        below,
    };
    assert_eq!(
        &p.ideals(),
        g,
        "a union-closed geometry is the ideal family of its order"
    );
    Ok(p)
}

/// Elements of `set` with nothing strictly above them in `set`.
pub fn max_elements(p: &Poset, set: Subset) -> Subset {
    set.iter()
        .filter(|&x| !set.iter().any(|y| p.less(x, y)))
        .collect()
}

/// Replaces every base element `x` by the poset `fibers[x]`: inside a fiber
/// the fiber order applies, across fibers the base order. Labels follow
/// the resolution convention.
pub fn lex_sum(base: &Poset, fibers: &[Poset]) -> Result<Poset> {
    if fibers.len() != base.ground.len() {
        return Err(Error::InvalidResolution(format!(
            "base has {} elements but {} fibers were given",
            base.ground.len(),
            fibers.len()
        )));
    }
    let grounds: Vec<&GroundSet> = fibers.iter().map(Poset::ground).collect();
    let total: usize = grounds.iter().map(|g| g.len()).sum();
    if total > crate::ground::MAX_ELEMENTS {
        return Err(Error::TooLarge {
            what: "resolved ground set",
            size: total,
            max: crate::ground::MAX_ELEMENTS,
        });
    }
    let ground = GroundSet::new(qualified_labels(&base.ground, &grounds))?;
    let mut offsets = Vec::new();
    let mut acc = 0;
    for f in fibers {
        offsets.push(acc);
        acc += f.ground.len();
    }
    let mut pairs = Vec::new();
    for (x, fx) in fibers.iter().enumerate() {
        for (i, j) in fx.relations() {
            pairs.push((offsets[x] + i, offsets[x] + j));
        }
        for (y, fy) in fibers.iter().enumerate() {
            if base.less(x, y) {
                for i in 0..fx.ground.len() {
                    for j in 0..fy.ground.len() {
                        pairs.push((offsets[x] + i, offsets[y] + j));
                    }
                }
            }
        }
    }
    Poset::new(ground, &pairs)
}

/// Sets `S` with `1 < |S| < |Z|` such that every outside element relates
/// to all members of `S` alike, in canonical order.
pub fn autonomous_sets(p: &Poset) -> Vec<Subset> {
    let n = p.ground.len();
    let ups: Vec<Subset> = (0..n).map(|x| p.up(x)).collect();
    all_subsets_canonical(n)
        .into_iter()
        .filter(|s| s.len() > 1 && s.len() < n)
        .filter(|&s| {
            (0..n).filter(|&z| !s.contains(z)).all(|z| {
                let below = p.below[z] & s;
                let above = ups[z] & s;
                (below.is_empty() || below == s) && (above.is_empty() || above == s)
            })
        })
        .collect()
}

pub fn is_primitive_poset(p: &Poset) -> bool {
    autonomous_sets(p).is_empty()
}

/// Strict relation as a bitmask over `x * n + y`, for canonical labeling.
fn relation_code(p: &Poset, perm: &[usize]) -> u64 {
    let n = p.ground.len();
    p.relations()
        .iter()
        .fold(0, |acc, &(x, y)| acc | 1 << (perm[x] * n + perm[y]))
}

/// Every poset on `n` elements up to isomorphism, on the ground set
/// `a, b, ...`, in increasing order of their minimal relation code.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n == 0 || n > MAX_POSET_ENUMERATION {
        return Err(Error::EnumerationRange {
            n,
            max: MAX_POSET_ENUMERATION,
        });
    }
    let ground = GroundSet::letters(n)?;
    let perms = permutations(n);
    let unordered: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut codes = HashSet::new();
    // Each unordered pair is unrelated or oriented one of two ways.
    let total = 3usize.pow(unordered.len() as u32);
    for mut choice in 0..total {
        let mut pairs = Vec::new();
        for &(i, j) in &unordered {
            match choice % 3 {
                1 => pairs.push((i, j)),
                2 => pairs.push((j, i)),
                _ => {}
            }
            choice /= 3;
        }
        let Ok(p) = Poset::new(ground.clone(), &pairs) else {
            continue;
        };
        // Only transitively closed choices, so each poset is met once.
        if p.relations().len() != pairs.len() {
            continue;
        }
        let code = perms
            .iter()
            .map(|s| relation_code(&p, s))
            .min()
            .unwrap_or(0);
        codes.insert(code);
    }
    let mut codes: Vec<u64> = codes.into_iter().collect();
    codes.sort_unstable();
    Ok(codes
        .into_iter()
        .map(|code| {
            let pairs: Vec<_> = (0..n * n)
                .filter(|b| code >> b & 1 == 1)
                .map(|b| (b / n, b % n))
                .collect();
            Poset::new(ground.clone(), &pairs).expect("decoded from a poset")
        })
        .collect())
}
