#![allow(dead_code)]

use std::collections::BTreeSet;

use cgeom::{ConvexGeometry, GroundSet, PointConfig, Rational, ResolutionSpec, SetFamily, Subset};
use proptest::prelude::*;

/// Complements of the union closure of all prefixes of `words`. The
/// prefixes of permutations generate an antimatroid, so this is a convex
/// geometry; with enough words every geometry arises this way.
pub fn from_words(n: usize, words: &[Vec<usize>], labels: &[String]) -> ConvexGeometry {
    let mut feasible: BTreeSet<u64> = BTreeSet::from([0]);
    for w in words {
        let mut acc = 0u64;
        for &x in w {
            acc |= 1 << x;
            feasible.insert(acc);
        }
    }
    loop {
        let current: Vec<u64> = feasible.iter().copied().collect();
        let before = feasible.len();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                feasible.insert(a | b);
            }
        }
        if feasible.len() == before {
            break;
        }
    }
    let full = (1u64 << n) - 1;
    let ground = GroundSet::new(labels.iter().cloned()).unwrap();
    let sets = feasible.iter().map(|f| Subset::from_bits(full & !f));
    ConvexGeometry::new(SetFamily::new(ground, sets).unwrap()).unwrap()
}

fn letters(n: usize, prefix: &str) -> Vec<String> {
    (0..n)
        .map(|i| format!("{prefix}{}", (b'a' + i as u8) as char))
        .collect()
}

pub fn geometry_on(n: usize, prefix: &'static str) -> impl Strategy<Value = ConvexGeometry> {
    let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
    prop::collection::vec(perm, 1..=n + 2)
        .prop_map(move |words| from_words(n, &words, &letters(n, prefix)))
}

/// Geometries on `1..=max_n` elements labeled `a, b, ...`.
pub fn geometry(max_n: usize) -> impl Strategy<Value = ConvexGeometry> {
    (1..=max_n).prop_flat_map(|n| geometry_on(n, ""))
}

/// A geometry together with a subset of its ground set.
pub fn geometry_and_set(max_n: usize) -> impl Strategy<Value = (ConvexGeometry, Subset)> {
    geometry(max_n).prop_flat_map(|g| {
        let n = g.size();
        (Just(g), (0..1u64 << n).prop_map(Subset::from_bits))
    })
}

/// Resolutions with a base on up to `max_base` elements and fibers on up
/// to `max_fiber` elements each. Fiber labels are distinct.
pub fn resolution(max_base: usize, max_fiber: usize) -> impl Strategy<Value = ResolutionSpec> {
    (1..=max_base).prop_flat_map(move |k| {
        let fibers: Vec<_> = (0..k)
            .map(|i| {
                let prefix: &'static str = ["p", "q", "r", "s"][i];
                (1..=max_fiber)
                    .prop_flat_map(move |m| geometry_on(m, prefix))
                    .boxed()
            })
            .collect();
        (geometry_on(k, ""), fibers)
            .prop_map(|(base, fibers)| ResolutionSpec::new(base, fibers).unwrap())
    })
}

/// Up to `max_n` distinct integer points in the plane.
pub fn planar_points(max_n: usize) -> impl Strategy<Value = PointConfig> {
    prop::collection::btree_set((-4i32..=4, -4i32..=4), 1..=max_n).prop_map(|points| {
        let labels: Vec<String> = (0..points.len())
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        let coords = points
            .iter()
            .map(|&(x, y)| {
                vec![
                    Rational::from_integer(x.into()),
                    Rational::from_integer(y.into()),
                ]
            })
            .collect();
        PointConfig::new(GroundSet::new(labels).unwrap(), 2, coords).unwrap()
    })
}

pub fn subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u64 << n).map(Subset::from_bits)
}
