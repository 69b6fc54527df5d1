//! Convex geometries induced by finite point sets with exact rational
//! coordinates, and combinatorial tests related to affine realizability.

mod linalg;

use std::collections::HashSet;

use num_traits::Zero;

pub use linalg::{format_rational, parse_rational, Rational};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::{all_subsets_canonical, GroundSet, Subset};
use crate::resolution::{resolve, ResolutionSpec};

/// Largest point set whose induced geometry is materialized.
pub const MAX_AFFINE_POINTS: usize = 16;

/// Labeled, pairwise distinct points in `ℚ^dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    ground: GroundSet,
    dim: usize,
    coords: Vec<Vec<Rational>>,
    // Coordinates in an injective affine chart of the affine span.
    local: Vec<Vec<Rational>>,
}

impl PointConfig {
    pub fn new(ground: GroundSet, dim: usize, coords: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Format("dimension must be at least 1".into()));
        }
        if coords.len() != ground.len() {
            return Err(Error::Format(format!(
                "{} labels but {} points",
                ground.len(),
                coords.len()
            )));
        }
        for (i, c) in coords.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::Dimension {
                    label: ground.label(i).to_owned(),
                    got: c.len(),
                    dim,
                });
            }
            if let Some(j) = coords[..i].iter().position(|o| o == c) {
                return Err(Error::DuplicatePoint(
                    ground.label(j).to_owned(),
                    ground.label(i).to_owned(),
                ));
            }
        }
        // Keep the pivot coordinates of the difference vectors; projecting
        // onto them is injective on the affine span.
        let refs: Vec<&[Rational]> = coords.iter().map(Vec::as_slice).collect();
        let mut diffs = linalg::differences(&refs);
        let pivots = linalg::row_reduce(&mut diffs);
        let local = coords
            .iter()
            .map(|c| pivots.iter().map(|&j| c[j].clone()).collect())
            .collect();
        Ok(PointConfig {
            ground,
            dim,
            coords,
            local,
        })
    }

    /// Builds a configuration from label and coordinate strings.
    pub fn from_strs(points: &[(&str, &[&str])]) -> Result<Self> {
        let ground = GroundSet::new(points.iter().map(|(l, _)| *l))?;
        let dim = points.first().map_or(0, |(_, c)| c.len());
        let coords = points
            .iter()
            .map(|(_, c)| c.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        PointConfig::new(ground, dim, coords)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self, element: usize) -> &[Rational] {
        &self.coords[element]
    }

    /// Dimension of the affine span of all points.
    pub fn span_dim(&self) -> usize {
        self.local[0].len()
    }

    /// The configuration formed by the points in `within`.
    pub fn restrict(&self, within: Subset) -> Result<PointConfig> {
        self.ground.check(within)?;
        if within.is_empty() {
            return Err(Error::EmptySubset);
        }
        PointConfig::new(
            self.ground.restrict(within)?,
            self.dim,
            within.iter().map(|e| self.coords[e].clone()).collect(),
        )
    }

    fn points(&self, set: Subset) -> Vec<&[Rational]> {
        set.iter().map(|e| self.local[e].as_slice()).collect()
    }

    fn independent(&self, set: Subset) -> bool {
        linalg::affinely_independent(&self.points(set))
    }

    fn simplex_contains(&self, simplex: Subset, p: usize) -> bool {
        linalg::in_simplex(&self.points(simplex), &self.local[p])
    }

    /// Pairs `(T, p)` with `T` affinely independent, `p ∉ T` and `p` in the
    /// simplex spanned by `T`. A set is convex in the induced geometry iff
    /// it contains `p` whenever it contains such a `T`.
    fn dependences(&self) -> Vec<(Subset, usize)> {
        let n = self.len();
        let max = self.span_dim() + 1;
        let mut out = Vec::new();
        for t in (1..1u64 << n).map(Subset::from_bits) {
            if t.len() > max || !self.independent(t) {
                continue;
            }
            for p in (0..n).filter(|&p| !t.contains(p)) {
                if self.simplex_contains(t, p) {
                    out.push((t, p));
                }
            }
        }
        out
    }
}

/// Whether point `p` lies in the real convex hull of the points in `set`.
///
/// By Carathéodory's theorem it suffices to test the simplices spanned by
/// affinely independent subsets of `set` with at most `span_dim + 1` points.
pub fn point_in_hull(cfg: &PointConfig, p: usize, set: Subset) -> bool {
    if set.contains(p) {
        return true;
    }
    let max = cfg.span_dim() + 1;
    let bits = set.bits();
    // Enumerate nonempty submasks of `set`.
    let mut sub = bits;
    while sub != 0 {
        let t = Subset::from_bits(sub);
        if t.len() <= max && cfg.independent(t) && cfg.simplex_contains(t, p) {
            return true;
        }
        sub = (sub - 1) & bits;
    }
    false
}

/// `{G ⊆ X : conv_ℝ(G) ∩ X = G}`.
pub fn induced_geometry(cfg: &PointConfig) -> Result<ConvexGeometry> {
    let n = cfg.len();
    if n > MAX_AFFINE_POINTS {
        return Err(Error::TooLarge {
            what: "induced geometry",
            size: n,
            max: MAX_AFFINE_POINTS,
        });
    }
    let deps = cfg.dependences();
    let sets = (0..1u64 << n)
        .map(Subset::from_bits)
        .filter(|&g| !deps.iter().any(|&(t, p)| t.is_subset(g) && !g.contains(p)));
    ConvexGeometry::new(SetFamily::new(cfg.ground.clone(), sets)?)
}

/// First `(A, p)` in canonical order with `p ∈ conv(A)` but `conv(A)` not
/// covered by the hulls `conv(A ∖ {a} ∪ {p})`, `a ∈ A`.
pub fn exchange_violation(g: &ConvexGeometry) -> Option<(Subset, usize)> {
    for a in all_subsets_canonical(g.size()) {
        let hull = g.conv(a);
        for p in hull.iter() {
            let covered = a
                .iter()
                .fold(Subset::EMPTY, |acc, x| acc | g.conv(a.without(x).with(p)));
            if !hull.is_subset(covered) {
                return Some((a, p));
            }
        }
    }
    None
}

pub fn has_exchange_property(g: &ConvexGeometry) -> bool {
    exchange_violation(g).is_none()
}

/// Traces on the point set of the facets of its convex hull, computed in
/// the affine span.
fn facet_traces(cfg: &PointConfig) -> Vec<Subset> {
    let n = cfg.len();
    let k = cfg.span_dim();
    if k == 0 {
        return Vec::new();
    }
    let mut out = HashSet::new();
    for t in (1..1u64 << n).map(Subset::from_bits) {
        if t.len() != k || !cfg.independent(t) {
            continue;
        }
        let pts = cfg.points(t);
        let Some(normal) = linalg::normal_vector(&linalg::differences(&pts), k) else {
            continue;
        };
        let level = linalg::dot(&normal, pts[0]);
        let side: Vec<Rational> = (0..n)
            .map(|e| linalg::dot(&normal, &cfg.local[e]) - &level)
            .collect();
        let above = side.iter().all(|s| *s >= Rational::zero());
        let below = side.iter().all(|s| *s <= Rational::zero());
        if above || below {
            out.insert((0..n).filter(|&e| side[e].is_zero()).collect::<Subset>());
        }
    }
    let mut v: Vec<Subset> = out.into_iter().collect();
    v.sort_by(|a, b| a.canonical_cmp(*b));
    v
}

/// Traces of the nonempty proper faces of the hull, in canonical order.
pub fn face_traces(cfg: &PointConfig) -> Vec<Subset> {
    let mut faces: HashSet<Subset> = facet_traces(cfg).into_iter().collect();
    loop {
        let current: Vec<Subset> = faces.iter().copied().collect();
        let before = faces.len();
        for (i, &a) in current.iter().enumerate() {
            for &b in &current[i + 1..] {
                faces.insert(a & b);
            }
        }
        if faces.len() == before {
            break;
        }
    }
    faces.remove(&Subset::EMPTY);
    let mut v: Vec<Subset> = faces.into_iter().collect();
    v.sort_by(|a, b| a.canonical_cmp(*b));
    v
}

/// Traces of unions of proper faces of the hull, nonempty, in canonical
/// order.
pub fn face_trace_sets(cfg: &PointConfig) -> Vec<Subset> {
    let mut sets: HashSet<Subset> = HashSet::new();
    for f in face_traces(cfg) {
        let grown: Vec<Subset> = sets.iter().map(|&s| s | f).collect();
        sets.insert(f);
        sets.extend(grown);
    }
    let mut v: Vec<Subset> = sets.into_iter().collect();
    v.sort_by(|a, b| a.canonical_cmp(*b));
    v
}

/// A betweenness pattern that no point set in real space can induce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Obstruction {
    /// `b, c ∈ conv{a, d}` while `b ∉ conv{a, c}` and `c ∉ conv{a, b}`.
    O1 {
        a: usize,
        d: usize,
        b: usize,
        c: usize,
    },
    /// `b ∈ conv{a, c} ∩ conv{a, d}` while `c ∉ conv{b, d}` and `d ∉ conv{b, c}`.
    O2 {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
}

impl Obstruction {
    pub fn code(&self) -> &'static str {
        match self {
            Obstruction::O1 { .. } => "O1",
            Obstruction::O2 { .. } => "O2",
        }
    }

    /// Elements in the order the pattern is stated.
    pub fn elements(&self) -> [usize; 4] {
        match *self {
            Obstruction::O1 { a, d, b, c } => [a, d, b, c],
            Obstruction::O2 { a, b, c, d } => [a, b, c, d],
        }
    }
}

/// Every occurrence of the two obstructions, each listed once (the
/// patterns are symmetric in their last two elements, so those come in
/// increasing order). An empty list does not certify affineness.
pub fn affine_obstructions(g: &ConvexGeometry) -> Vec<Obstruction> {
    let n = g.size();
    let pair: Vec<Vec<Subset>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| g.conv(Subset::singleton(i).with(j)))
                .collect()
        })
        .collect();
    let inside = |p: usize, i: usize, j: usize| pair[i][j].contains(p);
    let mut out = Vec::new();
    for a in 0..n {
        for x in (0..n).filter(|&x| x != a) {
            for y in (0..n).filter(|&y| y != a && y != x) {
                for z in (y + 1..n).filter(|&z| z != a && z != x) {
                    // O1 with ends a, x and inner y, z.
                    if inside(y, a, x) && inside(z, a, x) && !inside(y, a, z) && !inside(z, a, y) {
                        out.push(Obstruction::O1 {
                            a,
                            d: x,
                            b: y,
                            c: z,
                        });
                    }
                    // O2 with near point x and far points y, z.
                    if inside(x, a, y) && inside(x, a, z) && !inside(y, x, z) && !inside(z, x, y) {
                        out.push(Obstruction::O2 {
                            a,
                            b: x,
                            c: y,
                            d: z,
                        });
                    }
                }
            }
        }
    }
    out.sort_by_key(|o| (o.code(), o.elements()));
    out
}

/// A base dependence whose fibers leave the span of their representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiberWitness {
    /// Base element in the hull of `generators`.
    pub apex: usize,
    /// Minimal base set whose hull contains `apex`.
    pub generators: Subset,
    /// Resolved element outside the affine span.
    pub stray: usize,
}

/// For every minimal dependence `p ∈ conv(T)` of the base, checks that the
/// fibers over `T` lie in the affine span of one representative per fiber
/// (the first element of each). `cfg` must induce `resolve(spec)`, matched
/// by labels.
pub fn fiber_subspace_check(
    spec: &ResolutionSpec,
    cfg: &PointConfig,
) -> Result<Option<FiberWitness>> {
    let z = spec.ground();
    if cfg.len() != z.len() {
        return Err(Error::Precondition(
            "configuration and resolution differ in size".into(),
        ));
    }
    let point_of = z
        .labels()
        .iter()
        .map(|l| cfg.ground.element(l))
        .collect::<Result<Vec<usize>>>()
        .map_err(|_| {
            Error::Precondition("configuration labels differ from the resolution".into())
        })?;
    if !induced_geometry(cfg)?.same_by_labels(&resolve(spec)) {
        return Err(Error::Precondition(
            "configuration does not induce the resolution".into(),
        ));
    }

    let base = spec.base();
    let x = base.size();
    for p in 0..x {
        for t in (1..1u64 << x).map(Subset::from_bits) {
            if t.contains(p) || !base.conv(t).contains(p) {
                continue;
            }
            if t.iter().any(|e| base.conv(t.without(e)).contains(p)) {
                continue;
            }
            let reps: Vec<usize> = t
                .iter()
                .map(|e| point_of[spec.fiber_mask(e).first().expect("fibers are nonempty")])
                .collect();
            let rep_points: Vec<&[Rational]> =
                reps.iter().map(|&r| cfg.coords[r].as_slice()).collect();
            let span = linalg::affine_rank(&rep_points);
            let members = t
                .iter()
                .fold(Subset::EMPTY, |acc, e| acc | spec.fiber_mask(e));
            for y in members.iter() {
                let mut with = rep_points.clone();
                with.push(&cfg.coords[point_of[y]]);
                if linalg::affine_rank(&with) != span {
                    return Ok(Some(FiberWitness {
                        apex: p,
                        generators: t,
                        stray: y,
                    }));
                }
            }
        }
    }
    Ok(None)
}
