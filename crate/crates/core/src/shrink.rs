//! Shrinkable sets: subsets that can be collapsed to a single base element of
//! a nontrivial resolution producing the geometry.
//!
//! Three independent tests are provided. [`check_s`] works with convex sets
//! only, [`check_t`] with the extreme operator, and [`check_v`] decides the
//! stronger notion of extreme shrinkability. Every test quantifies
//! exhaustively and reports the first counterexample in canonical
//! (size, lexicographic) order. All of them are only meaningful for
//! `1 < |S| < |Z|`; outside that window every verdict is
//! [`Verdict::NotApplicable`].

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::{all_subsets_canonical, GroundSet, Subset};
use crate::resolution::{resolve, ResolutionSpec};

/// Counterexample to one of the shrinkability properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A single convex set.
    Member(Subset),
    /// Two convex sets `(G, H)`.
    Pair(Subset, Subset),
    /// An arbitrary subset `A` of the ground set.
    Probe(Subset),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
    NotApplicable,
}

impl Verdict {
    pub fn holds(self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails(_) => Some(false),
            Verdict::NotApplicable => None,
        }
    }

    pub fn witness(self) -> Option<Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }

    fn from_search(found: Option<Witness>) -> Verdict {
        found.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// The two convex-set conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SChecks {
    /// `G ∩ S ≠ S ⟹ G ∖ S` convex.
    pub s1: Verdict,
    /// `G ∩ S ≠ ∅` and `G ∖ S` convex `⟹ (G ∖ S) ∪ (H ∩ S)` convex.
    pub s2: Verdict,
}

/// The three extreme-operator conditions, quantified over every subset `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TChecks {
    /// `ex(A) ∩ S ≠ ∅ ⟹ ex(A ∩ S) ⊆ ex(A)`.
    pub t1: Verdict,
    /// `A ∩ S ≠ ∅ ⟹ ex(A) ∖ S ⊆ ex(A ∪ S)`.
    pub t2: Verdict,
    /// `A ∩ S ≠ ∅` and `ex(A ∪ S) ∩ S ≠ ∅ ⟹ ex(A) ∩ S ≠ ∅`.
    pub t3: Verdict,
}

/// The two conditions characterizing extreme shrinkability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VChecks {
    /// `|G ∩ S| = 1 ⟹ G ∪ S` convex.
    pub v1: Verdict,
    /// `(Z ∖ S) ∪ (H ∩ S)` convex for every convex `H`.
    pub v2: Verdict,
}

/// All verdicts for one candidate set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShrinkReport {
    pub subject: Subset,
    pub s: SChecks,
    pub t: TChecks,
    pub v: VChecks,
    /// `None` outside the size window.
    pub shrinkable: Option<bool>,
    pub extremely_shrinkable: Option<bool>,
}

/// `1 < |S| < |Z|`.
pub fn in_window(g: &ConvexGeometry, s: Subset) -> bool {
    s.is_subset(g.full()) && s.len() > 1 && s.len() < g.size()
}

/// Which `G` the substitution condition quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubstitutionAntecedent {
    /// `G ∩ S ≠ ∅`.
    Meets,
    /// `|G ∩ S| = 1`; yields the same verdicts.
    MeetsOnce,
}

pub fn check_s(g: &ConvexGeometry, s: Subset) -> SChecks {
    check_s_with(g, s, SubstitutionAntecedent::Meets)
}

pub fn check_s_with(g: &ConvexGeometry, s: Subset, antecedent: SubstitutionAntecedent) -> SChecks {
    if !in_window(g, s) {
        return SChecks {
            s1: Verdict::NotApplicable,
            s2: Verdict::NotApplicable,
        };
    }
    let members = g.members();
    let s1 = members
        .iter()
        .copied()
        .find(|&m| m & s != s && !g.contains(m - s))
        .map(Witness::Member);

    let triggers = |m: Subset| match antecedent {
        SubstitutionAntecedent::Meets => !(m & s).is_empty(),
        SubstitutionAntecedent::MeetsOnce => (m & s).len() == 1,
    };
    let s2 = members
        .iter()
        .copied()
        .filter(|&m| triggers(m) && g.contains(m - s))
        .find_map(|m| {
            members
                .iter()
                .copied()
                .find(|&h| !g.contains((m - s) | (h & s)))
                .map(|h| Witness::Pair(m, h))
        });
    SChecks {
        s1: Verdict::from_search(s1),
        s2: Verdict::from_search(s2),
    }
}

/// `ex(A)` for every `A`, indexed by mask bits.
pub fn extreme_table(g: &ConvexGeometry) -> Vec<Subset> {
    (0..1u64 << g.size())
        .map(|b| g.extreme(Subset::from_bits(b)))
        .collect()
}

pub fn check_t(g: &ConvexGeometry, s: Subset) -> TChecks {
    if !in_window(g, s) {
        return TChecks {
            t1: Verdict::NotApplicable,
            t2: Verdict::NotApplicable,
            t3: Verdict::NotApplicable,
        };
    }
    check_t_with_table(g, s, &extreme_table(g), &all_subsets_canonical(g.size()))
}

fn check_t_with_table(g: &ConvexGeometry, s: Subset, ex: &[Subset], probes: &[Subset]) -> TChecks {
    debug_assert!(in_window(g, s));
    let ex = |a: Subset| ex[a.bits() as usize];
    let t1 = probes
        .iter()
        .copied()
        .find(|&a| !(ex(a) & s).is_empty() && !ex(a & s).is_subset(ex(a)));
    let t2 = probes
        .iter()
        .copied()
        .find(|&a| !(a & s).is_empty() && !(ex(a) - s).is_subset(ex(a | s)));
    let t3 = probes
        .iter()
        .copied()
        .find(|&a| !(a & s).is_empty() && !(ex(a | s) & s).is_empty() && (ex(a) & s).is_empty());
    TChecks {
        t1: Verdict::from_search(t1.map(Witness::Probe)),
        t2: Verdict::from_search(t2.map(Witness::Probe)),
        t3: Verdict::from_search(t3.map(Witness::Probe)),
    }
}

pub fn check_v(g: &ConvexGeometry, s: Subset) -> VChecks {
    if !in_window(g, s) {
        return VChecks {
            v1: Verdict::NotApplicable,
            v2: Verdict::NotApplicable,
        };
    }
    let members = g.members();
    let v1 = members
        .iter()
        .copied()
        .find(|&m| (m & s).len() == 1 && !g.contains(m | s));
    let rest = g.full() - s;
    let v2 = members
        .iter()
        .copied()
        .find(|&h| !g.contains(rest | (h & s)));
    VChecks {
        v1: Verdict::from_search(v1.map(Witness::Member)),
        v2: Verdict::from_search(v2.map(Witness::Member)),
    }
}

fn both(a: Verdict, b: Verdict) -> Option<bool> {
    Some(a.holds()? && b.holds()?)
}

/// Runs every test on `s` and cross-checks the characterizations.
pub fn report(g: &ConvexGeometry, s: Subset) -> ShrinkReport {
    let sc = check_s(g, s);
    let tc = check_t(g, s);
    let vc = check_v(g, s);
    let shrinkable = both(sc.s1, sc.s2);
    let extremely_shrinkable = shrinkable.map(|sh| sh && g.contains(g.full() - s));
    if let Some(sh) = shrinkable {
        let by_t = tc.t1.holds() == Some(true)
            && tc.t2.holds() == Some(true)
            && tc.t3.holds() == Some(true);
        assert_eq!(sh, by_t, "convex-set and choice tests disagree on {s:?}");
        assert_eq!(
            extremely_shrinkable,
            both(vc.v1, vc.v2),
            "extreme shrinkability tests disagree on {s:?}"
        );
    }
    ShrinkReport {
        subject: s,
        s: sc,
        t: tc,
        v: vc,
        shrinkable,
        extremely_shrinkable,
    }
}

/// Reports for every set in the size window, in canonical order.
pub fn report_all(g: &ConvexGeometry) -> Vec<ShrinkReport> {
    candidates(g).map(|s| report(g, s)).collect()
}

fn candidates(g: &ConvexGeometry) -> impl Iterator<Item = Subset> + '_ {
    all_subsets_canonical(g.size())
        .into_iter()
        .filter(move |&s| in_window(g, s))
}

/// Every shrinkable set, in canonical order.
pub fn shrinkable_sets(g: &ConvexGeometry) -> Vec<Subset> {
    let cross_check = g.size() <= 8;
    let (ex, probes) = if cross_check {
        (extreme_table(g), all_subsets_canonical(g.size()))
    } else {
        (Vec::new(), Vec::new())
    };
    candidates(g)
        .filter(|&s| {
            let sc = check_s(g, s);
            let sh = sc.s1 == Verdict::Holds && sc.s2 == Verdict::Holds;
            if cross_check {
                let tc = check_t_with_table(g, s, &ex, &probes);
                let by_t = [tc.t1, tc.t2, tc.t3].iter().all(|v| *v == Verdict::Holds);
                assert_eq!(sh, by_t, "convex-set and choice tests disagree on {s:?}");
            }
            sh
        })
        .collect()
}

/// No shrinkable set exists.
pub fn is_primitive(g: &ConvexGeometry) -> bool {
    shrinkable_sets(g).is_empty()
}

/// Whether a shrinkable `s` is extremely shrinkable, i.e. `Z ∖ S` is convex.
/// `None` when `s` is not shrinkable at all.
pub fn is_extremely_shrinkable(g: &ConvexGeometry, s: Subset) -> Option<bool> {
    let sc = check_s(g, s);
    if both(sc.s1, sc.s2) != Some(true) {
        return None;
    }
    Some(g.contains(g.full() - s))
}

/// Label of the base element that replaces `s`.
pub fn merged_label(ground: &GroundSet, s: Subset) -> String {
    ground.names(s).join("+")
}

/// Rebuilds `g` as a resolution whose only nontrivial fiber is `s`.
///
/// The base lists one element per block, ordered by the block's smallest
/// element; `s` becomes the element labeled by [`merged_label`] and every
/// other element keeps its own label.
pub fn deresolve(g: &ConvexGeometry, s: Subset) -> Result<ResolutionSpec> {
    if !in_window(g, s) {
        return Err(Error::OutsideWindow {
            size: s.len(),
            ground: g.size(),
        });
    }
    let sc = check_s(g, s);
    for (property, verdict) in [("S1", sc.s1), ("S2", sc.s2)] {
        if let Verdict::Fails(witness) = verdict {
            return Err(Error::NotShrinkable { property, witness });
        }
    }

    let z = g.ground();
    let anchor = s.first().expect("window guarantees nonempty");
    // Base index of every element of Z.
    let mut block_of = vec![0usize; g.size()];
    let mut labels = Vec::new();
    let mut fibers = Vec::new();
    for e in 0..g.size() {
        if s.contains(e) && e != anchor {
            continue;
        }
        let x = labels.len();
        if e == anchor {
            for m in s.iter() {
                block_of[m] = x;
            }
            labels.push(merged_label(z, s));
            fibers.push(g.induced_subgeometry(s)?);
        } else {
            block_of[e] = x;
            labels.push(z.label(e).to_owned());
            fibers.push(ConvexGeometry::power_set(
                z.restrict(Subset::singleton(e))?,
            )?);
        }
    }
    let base_ground = GroundSet::new(labels)?;
    let project = |m: Subset| -> Subset { m.iter().map(|e| block_of[e]).collect() };
    let base = ConvexGeometry::new(SetFamily::new(base_ground, g.family().iter().map(project))?)?;
    let spec = ResolutionSpec::new(base, fibers)?;
    debug_assert!(resolve(&spec).same_by_labels(g));
    Ok(spec)
}
