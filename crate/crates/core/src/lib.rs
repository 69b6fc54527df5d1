//! Finite convex geometries and their resolutions.
//!
//! A convex geometry on a finite ground set `X` is a family of subsets that
//! contains `∅`, is closed under intersection, and in which every member
//! other than `X` grows by one element into another member. This crate
//! validates such families, computes hulls and extreme points, builds
//! resolutions (replacing each element of a base geometry by a fiber
//! geometry), recognizes which subsets can be collapsed back into a single
//! element, and enumerates all geometries on up to five elements.
//!
//! ```
//! use cgeom::{catalog, shrink, ConvexGeometry};
//!
//! let g = catalog::collinear_with_apex();
//! let z = g.ground();
//! assert_eq!(g.conv(z.subset(["b", "d"])?), z.subset(["b", "c", "d"])?);
//!
//! let s = z.subset(["b", "c", "d"])?;
//! assert!(shrink::shrinkable_sets(&g).contains(&s));
//! let spec = shrink::deresolve(&g, s)?;
//! assert_eq!(spec.base(), &ConvexGeometry::power_set(spec.base().ground().clone())?);
//! # Ok::<(), cgeom::Error>(())
//! ```

pub mod affine;
pub mod catalog;
pub mod choice;
pub mod enumerate;
mod error;
pub mod family;
pub mod geometry;
pub mod ground;
pub mod io;
pub mod ordinal;
pub mod resolution;
pub mod shrink;

pub use affine::{PointConfig, Rational};
pub use choice::ChoiceFunction;
pub use error::{Error, Result};
pub use family::SetFamily;
pub use geometry::{validate_geometry, ConvexGeometry, Violation, ViolationReport};
pub use ground::{GroundSet, Subset};
pub use ordinal::Poset;
pub use resolution::ResolutionSpec;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/geometries.md")]
    struct Geometries;
    #[doc = include_str!("../../../book/src/choice.md")]
    struct Choice;
    #[doc = include_str!("../../../book/src/resolutions.md")]
    struct Resolutions;
    #[doc = include_str!("../../../book/src/shrinking.md")]
    struct Shrinking;
    #[doc = include_str!("../../../book/src/ordinal.md")]
    struct Ordinal;
    #[doc = include_str!("../../../book/src/affine.md")]
    struct Affine;
    #[doc = include_str!("../../../book/src/census.md")]
    struct Census;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
