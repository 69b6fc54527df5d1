//! Exhaustive generation of convex geometries up to isomorphism and the
//! census of their properties.
//!
//! Geometries are generated through their complements, the antimatroids:
//! families containing `∅`, closed under union, in which every nonempty set
//! loses some element and stays in the family. A depth-first search decides
//! the subsets of `X` in canonical (size, lexicographic) order. A subset is
//! forced in when it is a union of included proper subsets, may go either
//! way when it extends an included set by one element, and is left out
//! otherwise.
//!
//! Each isomorphism class is represented by the labeling whose membership
//! vector (over subsets in canonical order) is lexicographically greatest.
//! Permutations preserve set sizes, so once all subsets of some size are
//! decided, any permutation producing a larger prefix proves the branch
//! cannot reach a representative and it is cut.

use std::collections::{BTreeMap, BTreeSet};

use crate::affine::induced_geometry;
use crate::catalog;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::{all_subsets_canonical, GroundSet, Subset};
use crate::resolution::{resolve, ResolutionSpec};
use crate::shrink;

/// Largest `n` for [`enumerate_geometries`].
pub const MAX_ENUMERATION: usize = 5;
/// Largest `n` for the brute-force oracle.
pub const MAX_ORACLE: usize = 4;
/// Largest ground set canonicalized by trying every permutation.
pub const MAX_CANONICAL: usize = 8;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// The lexicographically smallest sorted mask list over all relabelings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    masks: Vec<Subset>,
}

impl CanonicalForm {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[Subset] {
        &self.masks
    }

    /// The canonical representative over the ground set `a, b, ...`.
    pub fn geometry(&self) -> ConvexGeometry {
        let ground = GroundSet::letters(self.n).expect("n is in range");
        let family = SetFamily::new(ground, self.masks.iter().copied()).expect("masks in range");
        ConvexGeometry::new(family).expect("canonical forms come from geometries")
    }
}

fn permuted(masks: &[Subset], perm: &[usize]) -> Vec<Subset> {
    let mut out: Vec<Subset> = masks.iter().map(|m| m.permute(perm)).collect();
    out.sort_unstable();
    out
}

fn check_canonical_size(n: usize) -> Result<()> {
    if n > MAX_CANONICAL {
        Err(Error::TooLarge {
            what: "canonical form",
            size: n,
            max: MAX_CANONICAL,
        })
    } else {
        Ok(())
    }
}

fn form_of(n: usize, masks: &[Subset], perms: &[Vec<usize>]) -> CanonicalForm {
    let masks = perms
        .iter()
        .map(|p| permuted(masks, p))
        .min()
        .expect("at least the identity");
    CanonicalForm { n, masks }
}

pub fn canonical_form(g: &ConvexGeometry) -> Result<CanonicalForm> {
    check_canonical_size(g.size())?;
    Ok(form_of(
        g.size(),
        g.family().sets(),
        &permutations(g.size()),
    ))
}

/// A permutation `σ` of element indices with `σ(g) = h`, if any.
pub fn isomorphism(g: &ConvexGeometry, h: &ConvexGeometry) -> Result<Option<Vec<usize>>> {
    check_canonical_size(g.size())?;
    if g.size() != h.size() || g.len() != h.len() {
        return Ok(None);
    }
    Ok(permutations(g.size())
        .into_iter()
        .find(|p| permuted(g.family().sets(), p) == h.family().sets()))
}

pub fn are_isomorphic(g: &ConvexGeometry, h: &ConvexGeometry) -> Result<bool> {
    Ok(isomorphism(g, h)?.is_some())
}

/// Number of permutations mapping `g` onto itself.
pub fn automorphism_count(g: &ConvexGeometry) -> Result<usize> {
    check_canonical_size(g.size())?;
    let sets = g.family().sets();
    Ok(permutations(g.size())
        .iter()
        .filter(|p| permuted(sets, p) == sets)
        .count())
}

struct Search {
    order: Vec<Subset>,
    // Canonical position of each subset, indexed by mask bits.
    position: Vec<usize>,
    // For each permutation, the canonical position of the image of the set
    // at each position.
    images: Vec<Vec<usize>>,
    prune: bool,
    included: Vec<bool>,
    found: Vec<Vec<Subset>>,
    labeled: u64,
}

impl Search {
    fn new(n: usize, prune: bool) -> Search {
        let order = all_subsets_canonical(n);
        let mut position = vec![0; order.len()];
        for (i, s) in order.iter().enumerate() {
            position[s.bits() as usize] = i;
        }
        let images = if prune {
            permutations(n)
                .iter()
                .map(|p| {
                    order
                        .iter()
                        .map(|s| position[s.permute(p).bits() as usize])
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        Search {
            included: vec![false; order.len()],
            order,
            position,
            images,
            prune,
            found: Vec::new(),
            labeled: 0,
        }
    }

    // Membership vector as an integer: position 0 is the most significant
    // bit, so integer order is lexicographic order with 1 above 0.
    fn code(&self, map: Option<&[usize]>) -> u64 {
        let top = self.order.len() - 1;
        self.order
            .iter()
            .filter(|s| self.included[s.bits() as usize])
            .fold(0u64, |acc, s| {
                let pos = self.position[s.bits() as usize];
                let pos = map.map_or(pos, |m| m[pos]);
                acc | 1 << (top - pos)
            })
    }

    fn beaten(&self) -> bool {
        let own = self.code(None);
        self.images.iter().any(|m| self.code(Some(m)) > own)
    }

    fn run(&mut self) {
        self.included[0] = true;
        self.step(1);
    }

    fn step(&mut self, idx: usize) {
        if idx == self.order.len() {
            if self.prune && self.beaten() {
                return;
            }
            self.labeled += 1;
            self.found.push(
                self.order
                    .iter()
                    .copied()
                    .filter(|s| self.included[s.bits() as usize])
                    .collect(),
            );
            return;
        }
        let s = self.order[idx];
        if self.prune && s.len() > self.order[idx - 1].len() && self.beaten() {
            return;
        }
        let bits = s.bits();
        let mut union = 0u64;
        let mut sub = (bits - 1) & bits;
        loop {
            if self.included[sub as usize] {
                union |= sub;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & bits;
        }
        let forced = union == bits;
        let accessible = s
            .iter()
            .any(|x| self.included[s.without(x).bits() as usize]);
        let last = idx + 1 == self.order.len();
        if forced || (last && accessible) {
            self.included[bits as usize] = true;
            self.step(idx + 1);
            self.included[bits as usize] = false;
        } else if accessible {
            self.included[bits as usize] = true;
            self.step(idx + 1);
            self.included[bits as usize] = false;
            self.step(idx + 1);
        } else if !last {
            self.step(idx + 1);
        }
    }
}

fn complement_geometry(n: usize, antimatroid: &[Subset]) -> ConvexGeometry {
    let full = Subset::full(n);
    let ground = GroundSet::letters(n).expect("n is in range");
    let family =
        SetFamily::new(ground, antimatroid.iter().map(|&f| full - f)).expect("masks in range");
    ConvexGeometry::new(family).expect("complements of an antimatroid form a convex geometry")
}

fn check_range(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        Err(Error::EnumerationRange { n, max })
    } else {
        Ok(())
    }
}

/// One representative per isomorphism class, sorted by canonical form.
pub fn enumerate_geometries(n: usize) -> Result<Vec<ConvexGeometry>> {
    check_range(n, MAX_ENUMERATION)?;
    let mut search = Search::new(n, true);
    search.run();
    let perms = permutations(n);
    let mut forms: Vec<CanonicalForm> = search
        .found
        .iter()
        .map(|a| form_of(n, complement_geometry(n, a).family().sets(), &perms))
        .collect();
    forms.sort();
    let distinct = forms.windows(2).all(|w| w[0] != w[1]);
    assert!(
        distinct,
        "the search produced two isomorphic representatives"
    );
    Ok(forms.iter().map(CanonicalForm::geometry).collect())
}

/// Number of convex geometries on `n` labeled elements, by the same search
/// without isomorphism pruning.
pub fn labeled_count(n: usize) -> Result<u64> {
    check_range(n, MAX_ENUMERATION)?;
    let mut search = Search::new(n, false);
    search.run();
    Ok(search.labeled)
}

/// `Σ n!/|Aut(g)|` over the class representatives: the labeled count
/// implied by the classes, by the orbit-stabilizer theorem.
pub fn orbit_sum(classes: &[ConvexGeometry]) -> Result<u64> {
    let mut total = 0;
    for g in classes {
        let factorial: u64 = (1..=g.size() as u64).product();
        total += factorial / automorphism_count(g)? as u64;
    }
    Ok(total)
}

/// Canonical forms of all geometries on `n` elements, by testing every
/// family of subsets against the axioms.
pub fn brute_force_forms(n: usize) -> Result<BTreeSet<CanonicalForm>> {
    check_range(n, MAX_ORACLE)?;
    let subsets = 1usize << n;
    let full = subsets - 1;
    let perms = permutations(n);
    let mut out = BTreeSet::new();
    for family in 0u64..1 << subsets {
        let member = |s: usize| family >> s & 1 == 1;
        if !member(0) {
            continue;
        }
        let members: Vec<usize> = (0..subsets).filter(|&s| member(s)).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| member(a & b)));
        let upgradable = members
            .iter()
            .all(|&m| m == full || (0..n).any(|x| m >> x & 1 == 0 && member(m | 1 << x)));
        if closed && upgradable {
            let masks: Vec<Subset> = members
                .iter()
                .map(|&m| Subset::from_bits(m as u64))
                .collect();
            out.insert(form_of(n, &masks, &perms));
        }
    }
    Ok(out)
}

/// Properties of one isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub geometry: ConvexGeometry,
    pub ordinal: bool,
    pub primitive: bool,
    /// Some shrinkable set has a convex complement, i.e. the geometry is a
    /// nontrivial extreme resolution.
    pub extremely_resolvable: bool,
    pub atomistic: bool,
    /// Decided for `n ≤ 4` only.
    pub affine: Option<bool>,
    pub shrinkable_count: usize,
    pub automorphisms: usize,
}

/// Canonical forms of the geometries induced by the reference point sets.
pub fn affine_reference_forms(n: usize) -> Option<BTreeSet<CanonicalForm>> {
    if n == 0 || n > 4 {
        return None;
    }
    Some(
        catalog::reference_configs(n)
            .iter()
            .map(|(_, cfg)| {
                let g = induced_geometry(cfg).expect("reference configurations are small");
                canonical_form(&g).expect("n is small")
            })
            .collect(),
    )
}

fn classify_with(
    g: &ConvexGeometry,
    affine: Option<&BTreeSet<CanonicalForm>>,
) -> Result<CensusEntry> {
    let form = canonical_form(g)?;
    let shrinkable = shrink::shrinkable_sets(g);
    let full = g.full();
    let entry = CensusEntry {
        geometry: form.geometry(),
        ordinal: g.is_union_closed(),
        primitive: shrinkable.is_empty(),
        extremely_resolvable: shrinkable.iter().any(|&s| g.contains(full - s)),
        atomistic: g.is_atomistic(),
        affine: affine.map(|forms| forms.contains(&form)),
        shrinkable_count: shrinkable.len(),
        automorphisms: automorphism_count(g)?,
    };
    debug_assert!(!entry.extremely_resolvable || !entry.primitive);
    Ok(entry)
}

pub fn classify(g: &ConvexGeometry) -> Result<CensusEntry> {
    classify_with(g, affine_reference_forms(g.size()).as_ref())
}

/// Classified isomorphism classes on `n` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub entries: Vec<CensusEntry>,
}

/// Aggregate counts over a census.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub classes: usize,
    pub ordinal: usize,
    pub primitive: usize,
    pub primitive_ordinal: usize,
    pub primitive_affine: Option<usize>,
    pub affine: Option<usize>,
    pub atomistic: usize,
    pub extremely_resolvable: usize,
    pub resolvable_non_ordinal: usize,
}

impl Census {
    pub fn summary(&self) -> CensusSummary {
        let count = |f: &dyn Fn(&CensusEntry) -> bool| self.entries.iter().filter(|e| f(e)).count();
        let decided = self.entries.iter().all(|e| e.affine.is_some());
        let affine = |f: &dyn Fn(&CensusEntry) -> bool| {
            decided.then(|| count(&|e| e.affine == Some(true) && f(e)))
        };
        CensusSummary {
            classes: self.entries.len(),
            ordinal: count(&|e| e.ordinal),
            primitive: count(&|e| e.primitive),
            primitive_ordinal: count(&|e| e.primitive && e.ordinal),
            primitive_affine: affine(&|e| e.primitive),
            affine: affine(&|_| true),
            atomistic: count(&|e| e.atomistic),
            extremely_resolvable: count(&|e| e.extremely_resolvable),
            resolvable_non_ordinal: count(&|e| !e.primitive && !e.ordinal),
        }
    }
}

/// Classifies `geometries` on up to `jobs` threads; the output order
/// follows the input order.
pub fn classify_all(geometries: &[ConvexGeometry], jobs: usize) -> Result<Vec<CensusEntry>> {
    let jobs = jobs.max(1).min(geometries.len().max(1));
    let forms: BTreeMap<usize, Option<BTreeSet<CanonicalForm>>> = geometries
        .iter()
        .map(|g| (g.size(), affine_reference_forms(g.size())))
        .collect();
    let chunk = geometries.len().div_ceil(jobs).max(1);
    let results: Vec<Result<Vec<CensusEntry>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = geometries
            .chunks(chunk)
            .map(|part| {
                let forms = &forms;
                scope.spawn(move || {
                    part.iter()
                        .map(|g| classify_with(g, forms[&g.size()].as_ref()))
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("classification thread panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(geometries.len());
    for part in results {
        out.extend(part?);
    }
    Ok(out)
}

pub fn census(n: usize, jobs: usize) -> Result<Census> {
    let classes = enumerate_geometries(n)?;
    Ok(Census {
        n,
        entries: classify_all(&classes, jobs)?,
    })
}

/// Distinct nontrivial non-ordinal resolutions on four elements, split by
/// shape: (a) base ≅ three collinear points with fibers of sizes 1, 1, 2;
/// (b) a two-element base with one fiber ≅ three collinear points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvableBreakdown {
    pub type_a: Vec<ConvexGeometry>,
    pub type_b: Vec<ConvexGeometry>,
}

impl ResolvableBreakdown {
    /// Classes of both types together.
    pub fn distinct_total(&self) -> usize {
        self.type_a
            .iter()
            .chain(&self.type_b)
            .map(|g| canonical_form(g).expect("n = 4"))
            .collect::<BTreeSet<_>>()
            .len()
    }
}

fn distinct(specs: Vec<ResolutionSpec>) -> Vec<ConvexGeometry> {
    let forms: BTreeSet<CanonicalForm> = specs
        .iter()
        .map(|s| canonical_form(&resolve(s)).expect("n = 4"))
        .collect();
    forms.iter().map(CanonicalForm::geometry).collect()
}

pub fn count_resolvable_nonordinal_4() -> ResolvableBreakdown {
    let single = |l: &str| ConvexGeometry::power_set(GroundSet::new([l]).unwrap()).unwrap();
    let pq = GroundSet::new(["p", "q"]).unwrap();
    let pairs = [
        ConvexGeometry::power_set(pq.clone()).unwrap(),
        ConvexGeometry::from_labels(pq, &[&[][..], &["p"], &["p", "q"]]).unwrap(),
    ];
    let line = catalog::three_element(5);

    let mut type_a = Vec::new();
    for pair in &pairs {
        for slot in 0..3 {
            let fibers = ["u", "v", "w"]
                .iter()
                .enumerate()
                .map(|(i, l)| if i == slot { pair.clone() } else { single(l) })
                .collect();
            type_a.push(ResolutionSpec::new(line.clone(), fibers).unwrap());
        }
    }

    let two = GroundSet::new(["1", "2"]).unwrap();
    let bases = [
        ConvexGeometry::power_set(two.clone()).unwrap(),
        ConvexGeometry::from_labels(two, &[&[][..], &["1"], &["1", "2"]]).unwrap(),
    ];
    let mut type_b = Vec::new();
    for base in &bases {
        for slot in 0..2 {
            let fibers = (0..2)
                .map(|i| if i == slot { line.clone() } else { single("u") })
                .collect();
            type_b.push(ResolutionSpec::new(base.clone(), fibers).unwrap());
        }
    }
    ResolvableBreakdown {
        type_a: distinct(type_a),
        type_b: distinct(type_b),
    }
}

/// Which count a reference sequence lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReferenceKind {
    /// Isomorphism classes.
    Classes,
    /// Labeled geometries.
    Labeled,
}

/// Parses `n a(n)` lines; blank lines and lines starting with `#` are
/// skipped.
pub fn parse_reference(text: &str) -> Result<BTreeMap<usize, u128>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Format(format!("reference line {}: `{line}`", lineno + 1));
        let mut fields = line.split_whitespace();
        let n = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let value = fields.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if fields.next().is_some() {
            return Err(bad());
        }
        out.insert(n, value);
    }
    Ok(out)
}
