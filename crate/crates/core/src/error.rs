use thiserror::Error;

use crate::geometry::ViolationReport;
use crate::shrink::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set must have between 1 and 64 elements, got {0}")]
    GroundSize(usize),
    #[error("element labels must be non-empty")]
    EmptyLabel,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("mask {mask:#x} has bits outside a ground set of {size} elements")]
    MaskOutOfRange { mask: u64, size: usize },
    #[error("ground sets differ")]
    GroundMismatch,
    #[error("not a convex geometry: {0}")]
    NotAGeometry(ViolationReport),
    #[error("element {element} does not belong to the given set")]
    NotInSet { element: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("{what} supports at most {max} elements, got {size}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },
    #[error("invalid choice table: {0}")]
    InvalidChoice(String),
    #[error("choice function is not path independent (sets {first:?} and {second:?})")]
    NotPathIndependent {
        first: crate::Subset,
        second: crate::Subset,
    },
    #[error("family is not closed under union ({first:?} and {second:?})")]
    NotUnionClosed {
        first: crate::Subset,
        second: crate::Subset,
    },
    #[error("invalid resolution: {0}")]
    InvalidResolution(String),
    #[error("set is outside the size window 1 < |S| < {ground} (has {size} elements)")]
    OutsideWindow { size: usize, ground: usize },
    #[error("set is not shrinkable: property {property} fails ({witness:?})")]
    NotShrinkable {
        property: &'static str,
        witness: Witness,
    },
    #[error("relation is not antisymmetric: cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("invalid rational number `{0}`")]
    Rational(String),
    #[error("points `{0}` and `{1}` coincide")]
    DuplicatePoint(String, String),
    #[error("point `{label}` has {got} coordinates, expected {dim}")]
    Dimension {
        label: String,
        got: usize,
        dim: usize,
    },
    #[error("enumeration supports 1 <= n <= {max}, got {n}")]
    EnumerationRange { n: usize, max: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
