//! Small named geometries, resolutions and point sets used throughout the
//! documentation and tests.

use crate::affine::PointConfig;
use crate::family::SetFamily;
use crate::geometry::ConvexGeometry;
use crate::ground::GroundSet;
use crate::ordinal::Poset;
use crate::resolution::ResolutionSpec;

fn geometry(labels: &[&str], sets: &[&[&str]]) -> ConvexGeometry {
    ConvexGeometry::from_labels(GroundSet::new(labels.iter().copied()).unwrap(), sets).unwrap()
}

fn boolean(labels: &[&str]) -> ConvexGeometry {
    ConvexGeometry::power_set(GroundSet::new(labels.iter().copied()).unwrap()).unwrap()
}

/// Every subset except the listed ones.
fn boolean_without(labels: &[&str], missing: &[&[&str]]) -> ConvexGeometry {
    let ground = GroundSet::new(labels.iter().copied()).unwrap();
    let missing: Vec<_> = missing.iter().map(|m| ground.subset(*m).unwrap()).collect();
    let all = SetFamily::power_set(ground.clone()).unwrap();
    ConvexGeometry::new(
        SetFamily::new(ground, all.iter().filter(|s| !missing.contains(s))).unwrap(),
    )
    .unwrap()
}

/// The six convex geometries on `{x, y, z}` up to isomorphism, numbered
/// `1..=6`:
///
/// 1. `{∅, x, xy, X}` (ideals of the chain `x < y < z`)
/// 2. `{∅, x, y, xy, X}`
/// 3. `{∅, x, xy, xz, X}`
/// 4. `{∅, x, y, xy, xz, X}`
/// 5. `{∅, x, y, z, xy, xz, X}` (three points on a line, `x` in the middle)
/// 6. `2^X`
///
/// # Panics
///
/// When `i` is not in `1..=6`.
pub fn three_element(i: usize) -> ConvexGeometry {
    let xyz = ["x", "y", "z"];
    let all: &[&str] = &xyz;
    let sets: &[&[&str]] = match i {
        1 => &[&[], &["x"], &["x", "y"], all],
        2 => &[&[], &["x"], &["y"], &["x", "y"], all],
        3 => &[&[], &["x"], &["x", "y"], &["x", "z"], all],
        4 => &[&[], &["x"], &["y"], &["x", "y"], &["x", "z"], all],
        5 => &[&[], &["x"], &["y"], &["z"], &["x", "y"], &["x", "z"], all],
        6 => return boolean(&xyz),
        _ => panic!("three-element geometries are numbered 1 to 6, got {i}"),
    };
    geometry(&xyz, sets)
}

/// Three collinear points `b, c, d` with `c` in the middle and a point `a`
/// off their line: every subset is convex except `{b, d}` and `{a, b, d}`.
pub fn collinear_with_apex() -> ConvexGeometry {
    boolean_without(&["a", "b", "c", "d"], &[&["b", "d"], &["a", "b", "d"]])
}

/// Coordinates realizing [`collinear_with_apex`].
pub fn collinear_with_apex_points() -> PointConfig {
    PointConfig::from_strs(&[
        ("a", &["-1", "0"]),
        ("b", &["1", "1"]),
        ("c", &["1", "0"]),
        ("d", &["1", "-1"]),
    ])
    .unwrap()
}

/// Ideals of `a < b`, `a < c`.
pub fn vee() -> ConvexGeometry {
    geometry(
        &["a", "b", "c"],
        &[&[], &["a"], &["a", "b"], &["a", "c"], &["a", "b", "c"]],
    )
}

/// The poset `a < c`, `b < c`, `b < d`.
pub fn n_poset() -> Poset {
    Poset::from_labels(
        GroundSet::new(["a", "b", "c", "d"]).unwrap(),
        &[("a", "c"), ("b", "c"), ("b", "d")],
    )
    .unwrap()
}

/// Base `{∅, {1}, {1, 2}}` with fibers `2^{a1, b1}` over 1 and `2^{a2}` over 2.
/// Its composition is not closed under intersection.
pub fn composition_counterexample() -> ResolutionSpec {
    let base = geometry(&["1", "2"], &[&[], &["1"], &["1", "2"]]);
    ResolutionSpec::new(base, vec![boolean(&["a1", "b1"]), boolean(&["a2"])]).unwrap()
}

/// Three points on a line with the middle one (2) left out of `{1, 3}`.
fn segment_base() -> ConvexGeometry {
    boolean_without(&["1", "2", "3"], &[&["1", "3"]])
}

/// [`segment_base`] with fibers `{a}`, `{b, c}`, `{d}`: a two-element fiber
/// over the middle point.
pub fn middle_fiber_resolution() -> ResolutionSpec {
    ResolutionSpec::new(
        segment_base(),
        vec![boolean(&["a"]), boolean(&["b", "c"]), boolean(&["d"])],
    )
    .unwrap()
}

/// [`segment_base`] with fibers `{a}`, `{b}`, `{c, d}`: a two-element fiber
/// over an end point.
pub fn end_fiber_resolution() -> ResolutionSpec {
    ResolutionSpec::new(
        segment_base(),
        vec![boolean(&["a"]), boolean(&["b"]), boolean(&["c", "d"])],
    )
    .unwrap()
}

/// Base `2^{1, 2}` with fibers `{a}` and the geometry of three collinear
/// points `b, c, d`. Resolves to [`collinear_with_apex`].
pub fn apex_resolution() -> ResolutionSpec {
    let base = boolean(&["1", "2"]);
    let line = boolean_without(&["b", "c", "d"], &[&["b", "d"]]);
    ResolutionSpec::new(base, vec![boolean(&["a"]), line]).unwrap()
}

/// A triangle with an interior point whose first vertex is split into two
/// nearby vertices `p` and `q`.
pub fn split_vertex_points() -> PointConfig {
    PointConfig::from_strs(&[
        ("p", &["0", "0"]),
        ("q", &["-1", "1"]),
        ("r", &["6", "0"]),
        ("s", &["0", "6"]),
        ("t", &["1", "1"]),
    ])
    .unwrap()
}

/// Planar point sets, one per affine convex geometry on `n ≤ 4` points up
/// to isomorphism. Empty for other `n`.
pub fn reference_configs(n: usize) -> Vec<(&'static str, PointConfig)> {
    type Points<'a> = &'a [(&'a str, &'a [&'a str])];
    let configs: &[(&str, Points)] = match n {
        1 => &[("single point", &[("a", &["0", "0"])])],
        2 => &[("two points", &[("a", &["0", "0"]), ("b", &["1", "0"])])],
        3 => &[
            (
                "three collinear points",
                &[("a", &["0", "0"]), ("b", &["1", "0"]), ("c", &["2", "0"])],
            ),
            (
                "triangle",
                &[("a", &["0", "0"]), ("b", &["1", "0"]), ("c", &["0", "1"])],
            ),
        ],
        4 => &[
            (
                "four collinear points",
                &[
                    ("a", &["0", "0"]),
                    ("b", &["1", "0"]),
                    ("c", &["2", "0"]),
                    ("d", &["3", "0"]),
                ],
            ),
            (
                "three collinear points and an apex",
                &[
                    ("a", &["0", "0"]),
                    ("b", &["1", "0"]),
                    ("c", &["2", "0"]),
                    ("d", &["1", "1.5"]),
                ],
            ),
            (
                "square",
                &[
                    ("a", &["0", "0"]),
                    ("b", &["1.5", "0"]),
                    ("c", &["0", "1.5"]),
                    ("d", &["1.5", "1.5"]),
                ],
            ),
            (
                "triangle with an interior point",
                &[
                    ("a", &["0", "0"]),
                    ("b", &["1.7", "0"]),
                    ("c", &["0.8", "0.64"]),
                    ("d", &["0.8", "1.5"]),
                ],
            ),
        ],
        _ => &[],
    };
    configs
        .iter()
        .map(|(name, pts)| (*name, PointConfig::from_strs(pts).unwrap()))
        .collect()
}
