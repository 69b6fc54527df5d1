//! JSON encodings of geometries, resolution specs, posets, point sets and
//! reports.
//!
//! Writers produce normalized output: every set lists its labels in ground
//! order, families are in canonical (size, lexicographic) order and object
//! keys are sorted, so equal inputs give byte-identical text. Readers accept
//! any order. Top-level objects carry `"format": 1`.

use serde_json::{json, Map, Value};

use crate::affine::{format_rational, parse_rational, Obstruction, PointConfig};
use crate::enumerate::{Census, CensusEntry, CensusSummary};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::geometry::{ConvexGeometry, Violation, ViolationReport};
use crate::ground::{GroundSet, Subset};
use crate::ordinal::Poset;
use crate::resolution::ResolutionSpec;
use crate::shrink::{ShrinkReport, Verdict, Witness};

pub const FORMAT_VERSION: u64 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn with_format(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("format".into(), json!(FORMAT_VERSION));
    }
    v
}

fn check_format(v: &Value) -> Result<()> {
    match v.get("format") {
        None => Ok(()),
        Some(f) if f.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(f) => Err(bad(format!("unsupported format version {f}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad(format!("`{what}` must be an array")))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_owned)
                .ok_or_else(|| bad(format!("`{what}` must contain strings")))
        })
        .collect()
}

pub fn set_value(ground: &GroundSet, set: Subset) -> Value {
    json!(ground.names(set))
}

pub fn parse_set(ground: &GroundSet, v: &Value) -> Result<Subset> {
    ground.subset(string_list(v, "set")?)
}

/// Parses a comma-separated label list such as `"a,b,c"`.
pub fn parse_label_list(ground: &GroundSet, text: &str) -> Result<Subset> {
    ground.subset(text.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

fn sets_value(ground: &GroundSet, sets: &[Subset]) -> Value {
    let mut sorted = sets.to_vec();
    sorted.sort_by(|a, b| a.canonical_cmp(*b));
    Value::Array(sorted.into_iter().map(|s| set_value(ground, s)).collect())
}

fn family_body(family: &SetFamily) -> Value {
    json!({
        "ground": family.ground().labels(),
        "sets": sets_value(family.ground(), family.sets()),
    })
}

pub fn family_to_json(family: &SetFamily) -> Value {
    with_format(family_body(family))
}

pub fn geometry_to_json(g: &ConvexGeometry) -> Value {
    family_to_json(g.family())
}

pub fn family_from_json(v: &Value) -> Result<SetFamily> {
    check_format(v)?;
    let ground = GroundSet::new(string_list(field(v, "ground")?, "ground")?)?;
    let sets = field(v, "sets")?
        .as_array()
        .ok_or_else(|| bad("`sets` must be an array"))?
        .iter()
        .map(|s| parse_set(&ground, s))
        .collect::<Result<Vec<_>>>()?;
    SetFamily::new(ground, sets)
}

pub fn geometry_from_json(v: &Value) -> Result<ConvexGeometry> {
    ConvexGeometry::new(family_from_json(v)?)
}

pub fn spec_to_json(spec: &ResolutionSpec) -> Value {
    let base = spec.base();
    let fibers: Map<String, Value> = (0..base.size())
        .map(|x| {
            (
                base.ground().label(x).to_owned(),
                family_body(spec.fiber(x).family()),
            )
        })
        .collect();
    with_format(json!({
        "base": family_body(base.family()),
        "fibers": fibers,
    }))
}

pub fn spec_from_json(v: &Value) -> Result<ResolutionSpec> {
    check_format(v)?;
    let base = geometry_from_json(field(v, "base")?)?;
    let fibers = field(v, "fibers")?
        .as_object()
        .ok_or_else(|| bad("`fibers` must be an object keyed by base labels"))?;
    if let Some(extra) = fibers.keys().find(|k| base.ground().position(k).is_none()) {
        return Err(bad(format!("fiber `{extra}` has no base element")));
    }
    let fibers = base
        .ground()
        .labels()
        .iter()
        .map(|x| {
            let f = fibers
                .get(x)
                .ok_or_else(|| bad(format!("missing fiber for `{x}`")))?;
            geometry_from_json(f)
        })
        .collect::<Result<Vec<_>>>()?;
    ResolutionSpec::new(base, fibers)
}

fn poset_body(p: &Poset) -> Value {
    let g = p.ground();
    let leq: Vec<Value> = p
        .covers()
        .into_iter()
        .map(|(x, y)| json!([g.label(x), g.label(y)]))
        .collect();
    json!({ "elements": g.labels(), "leq": leq })
}

/// Relations are written as covering pairs.
pub fn poset_to_json(p: &Poset) -> Value {
    with_format(poset_body(p))
}

pub fn poset_from_json(v: &Value) -> Result<Poset> {
    check_format(v)?;
    let ground = GroundSet::new(string_list(field(v, "elements")?, "elements")?)?;
    let pairs = match v.get("leq") {
        None => Vec::new(),
        Some(leq) => leq
            .as_array()
            .ok_or_else(|| bad("`leq` must be an array of pairs"))?
            .iter()
            .map(|pair| {
                let pair = string_list(pair, "leq pair")?;
                match pair.as_slice() {
                    [x, y] => Ok((x.clone(), y.clone())),
                    _ => Err(bad("`leq` entries must have two labels")),
                }
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Poset::from_labels(ground, &pairs)
}

/// `{"base": poset, "fibers": {label: poset}}`.
pub fn lex_sum_input_from_json(v: &Value) -> Result<(Poset, Vec<Poset>)> {
    check_format(v)?;
    let base = poset_from_json(field(v, "base")?)?;
    let fibers = field(v, "fibers")?
        .as_object()
        .ok_or_else(|| bad("`fibers` must be an object keyed by base labels"))?;
    if let Some(extra) = fibers.keys().find(|k| base.ground().position(k).is_none()) {
        return Err(bad(format!("fiber `{extra}` has no base element")));
    }
    let fibers = base
        .ground()
        .labels()
        .iter()
        .map(|x| {
            poset_from_json(
                fibers
                    .get(x)
                    .ok_or_else(|| bad(format!("missing fiber for `{x}`")))?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((base, fibers))
}

pub fn config_to_json(cfg: &PointConfig) -> Value {
    let g = cfg.ground();
    let points: Map<String, Value> = (0..cfg.len())
        .map(|e| {
            let coords: Vec<String> = cfg.coords(e).iter().map(format_rational).collect();
            (g.label(e).to_owned(), json!(coords))
        })
        .collect();
    with_format(json!({ "dim": cfg.dim(), "points": points }))
}

/// Points are ordered by label.
pub fn config_from_json(v: &Value) -> Result<PointConfig> {
    check_format(v)?;
    let dim = field(v, "dim")?
        .as_u64()
        .ok_or_else(|| bad("`dim` must be a positive integer"))? as usize;
    let points = field(v, "points")?
        .as_object()
        .ok_or_else(|| bad("`points` must be an object keyed by label"))?;
    let ground = GroundSet::new(points.keys().cloned())?;
    let coords = points
        .values()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| bad("coordinates must be an array"))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
                    _ => Err(bad("coordinates must be rational strings or integers")),
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    PointConfig::new(ground, dim, coords)
}

pub fn witness_value(ground: &GroundSet, w: &Witness) -> Value {
    match *w {
        Witness::Member(g) => json!({ "member": set_value(ground, g) }),
        Witness::Pair(g, h) => json!({ "pair": [set_value(ground, g), set_value(ground, h)] }),
        Witness::Probe(a) => json!({ "probe": set_value(ground, a) }),
    }
}

fn verdict_value(ground: &GroundSet, v: Verdict) -> Value {
    match v {
        Verdict::Holds => json!({ "holds": true }),
        Verdict::Fails(w) => json!({ "holds": false, "witness": witness_value(ground, &w) }),
        Verdict::NotApplicable => json!({ "holds": null }),
    }
}

pub fn shrink_report_value(ground: &GroundSet, r: &ShrinkReport) -> Value {
    json!({
        "set": set_value(ground, r.subject),
        "S1": verdict_value(ground, r.s.s1),
        "S2": verdict_value(ground, r.s.s2),
        "T1": verdict_value(ground, r.t.t1),
        "T2": verdict_value(ground, r.t.t2),
        "T3": verdict_value(ground, r.t.t3),
        "V1": verdict_value(ground, r.v.v1),
        "V2": verdict_value(ground, r.v.v2),
        "shrinkable": r.shrinkable,
        "extremely_shrinkable": r.extremely_shrinkable,
    })
}

pub fn violation_value(ground: &GroundSet, v: &Violation) -> Value {
    match v {
        Violation::MissingEmpty => json!({ "axiom": "G1" }),
        Violation::NotIntersectionClosed {
            first,
            second,
            missing,
        } => json!({
            "axiom": "G2",
            "first": set_value(ground, *first),
            "second": set_value(ground, *second),
            "missing": set_value(ground, *missing),
        }),
        Violation::NotUpgradable { member } => json!({
            "axiom": "G3",
            "member": set_value(ground, *member),
        }),
    }
}

pub fn violation_report_value(r: &ViolationReport) -> Value {
    Value::Array(
        r.violations
            .iter()
            .map(|v| violation_value(&r.ground, v))
            .collect(),
    )
}

pub fn obstruction_value(ground: &GroundSet, o: &Obstruction) -> Value {
    let names = |e: usize| ground.label(e).to_owned();
    let roles = match *o {
        Obstruction::O1 { a, d, b, c } => {
            json!({ "a": names(a), "d": names(d), "b": names(b), "c": names(c) })
        }
        Obstruction::O2 { a, b, c, d } => {
            json!({ "a": names(a), "b": names(b), "c": names(c), "d": names(d) })
        }
    };
    let tuple: Vec<String> = o.elements().iter().map(|&e| names(e)).collect();
    json!({ "kind": o.code(), "tuple": tuple, "roles": roles })
}

pub fn census_entry_value(e: &CensusEntry) -> Value {
    json!({
        "geometry": family_body(e.geometry.family()),
        "ordinal": e.ordinal,
        "primitive": e.primitive,
        "extremely_resolvable": e.extremely_resolvable,
        "atomistic": e.atomistic,
        "affine": e.affine,
        "shrinkable_count": e.shrinkable_count,
        "automorphisms": e.automorphisms,
    })
}

pub fn census_summary_value(s: &CensusSummary) -> Value {
    json!({
        "classes": s.classes,
        "ordinal": s.ordinal,
        "primitive": s.primitive,
        "primitive_ordinal": s.primitive_ordinal,
        "primitive_affine": s.primitive_affine,
        "affine": s.affine,
        "atomistic": s.atomistic,
        "extremely_resolvable": s.extremely_resolvable,
        "resolvable_non_ordinal": s.resolvable_non_ordinal,
    })
}

pub fn census_to_json(c: &Census) -> Value {
    with_format(json!({
        "n": c.n,
        "classes": c.entries.iter().map(census_entry_value).collect::<Vec<_>>(),
        "summary": census_summary_value(&c.summary()),
    }))
}

/// Short machine-readable name of an error variant.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::GroundSize(_) => "ground_size",
        Error::EmptyLabel => "empty_label",
        Error::DuplicateLabel(_) => "duplicate_label",
        Error::UnknownLabel(_) => "unknown_label",
        Error::MaskOutOfRange { .. } => "mask_out_of_range",
        Error::GroundMismatch => "ground_mismatch",
        Error::NotAGeometry(_) => "not_a_geometry",
        Error::NotInSet { .. } => "not_in_set",
        Error::EmptySubset => "empty_subset",
        Error::TooLarge { .. } => "too_large",
        Error::InvalidChoice(_) => "invalid_choice",
        Error::NotPathIndependent { .. } => "not_path_independent",
        Error::NotUnionClosed { .. } => "not_union_closed",
        Error::InvalidResolution(_) => "invalid_resolution",
        Error::OutsideWindow { .. } => "outside_window",
        Error::NotShrinkable { .. } => "not_shrinkable",
        Error::Cycle(_) => "cycle",
        Error::Rational(_) => "rational",
        Error::DuplicatePoint(..) => "duplicate_point",
        Error::Dimension { .. } => "dimension",
        Error::EnumerationRange { .. } => "enumeration_range",
        Error::Precondition(_) => "precondition",
        Error::Format(_) => "format",
        Error::Json(_) => "json",
    }
}

/// Error object; `ground` resolves masks carried by the error to labels.
pub fn error_to_json(e: &Error, ground: Option<&GroundSet>) -> Value {
    let mut body = Map::new();
    body.insert("kind".into(), json!(error_kind(e)));
    body.insert("message".into(), json!(e.to_string()));
    match e {
        Error::NotAGeometry(r) => {
            body.insert("violations".into(), violation_report_value(r));
        }
        Error::NotShrinkable { property, witness } => {
            body.insert("property".into(), json!(property));
            if let Some(g) = ground {
                let shown = match *witness {
                    Witness::Member(m) => g.show(m),
                    Witness::Pair(a, b) => format!("{} and {}", g.show(a), g.show(b)),
                    Witness::Probe(a) => g.show(a),
                };
                body.insert(
                    "message".into(),
                    json!(format!(
                        "set is not shrinkable: property {property} fails at {shown}"
                    )),
                );
                body.insert("witness".into(), witness_value(g, witness));
            }
        }
        Error::NotUnionClosed { first, second } => {
            if let Some(g) = ground {
                body.insert(
                    "message".into(),
                    json!(format!(
                        "family is not closed under union ({} and {})",
                        g.show(*first),
                        g.show(*second)
                    )),
                );
                body.insert(
                    "pair".into(),
                    json!([set_value(g, *first), set_value(g, *second)]),
                );
            }
        }
        Error::Cycle(c) => {
            body.insert("cycle".into(), json!(c));
        }
        _ => {}
    }
    with_format(json!({ "error": Value::Object(body) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn geometry_round_trip() {
        let g = catalog::collinear_with_apex();
        let v = geometry_to_json(&g);
        assert_eq!(v["format"], 1);
        assert_eq!(v["sets"][0], json!([]));
        assert_eq!(v["sets"][13], json!(["a", "b", "c", "d"]));
        let back = geometry_from_json(&v).unwrap();
        assert_eq!(back, g);
        assert_eq!(geometry_to_json(&back).to_string(), v.to_string());
    }

    #[test]
    fn readers_normalize() {
        let v = json!({"ground": ["a", "b"], "sets": [["b", "a"], [], ["a"], ["a"]]});
        let g = geometry_from_json(&v).unwrap();
        assert_eq!(
            geometry_to_json(&g),
            json!({"format": 1, "ground": ["a", "b"], "sets": [[], ["a"], ["a", "b"]]})
        );
        assert!(
            geometry_from_json(&json!({"format": 2, "ground": ["a"], "sets": [[], ["a"]]}))
                .is_err()
        );
        assert!(geometry_from_json(&json!({"ground": ["a"], "sets": [["z"]]})).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let spec = catalog::composition_counterexample();
        let v = spec_to_json(&spec);
        let back = spec_from_json(&v).unwrap();
        assert_eq!(spec_to_json(&back), v);
        let mut missing = v.clone();
        missing["fibers"].as_object_mut().unwrap().remove("2");
        assert!(spec_from_json(&missing).is_err());
    }

    #[test]
    fn poset_round_trip() {
        let p = catalog::n_poset();
        let v = poset_to_json(&p);
        assert_eq!(v["leq"], json!([["a", "c"], ["b", "c"], ["b", "d"]]));
        assert_eq!(poset_from_json(&v).unwrap(), p);
        let cyclic = json!({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]});
        assert!(matches!(poset_from_json(&cyclic), Err(Error::Cycle(_))));
    }

    #[test]
    fn config_round_trip() {
        let cfg = catalog::collinear_with_apex_points();
        let v = config_to_json(&cfg);
        assert_eq!(v["points"]["a"], json!(["-1", "0"]));
        assert_eq!(config_from_json(&v).unwrap(), cfg);
        let frac = json!({"dim": 1, "points": {"p": ["0.5"], "q": [2]}});
        let c = config_from_json(&frac).unwrap();
        assert_eq!(config_to_json(&c)["points"]["p"], json!(["1/2"]));
    }

    #[test]
    fn errors_are_structured() {
        let v = json!({"ground": ["a1", "b1", "a2"], "sets": [[], ["a1", "a2"], ["b1", "a2"], ["a1", "b1", "a2"]]});
        let e = geometry_from_json(&v).unwrap_err();
        let out = error_to_json(&e, None);
        assert_eq!(out["error"]["kind"], "not_a_geometry");
        assert_eq!(out["error"]["violations"][0]["missing"], json!(["a2"]));
    }
}
