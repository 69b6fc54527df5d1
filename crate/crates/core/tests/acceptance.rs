//! Acceptance criteria. Runs as a plain binary so that every criterion
//! prints one line; exits nonzero when any criterion fails.
//!
//! Set `CGEOM_REFERENCE` to a file of `n a(n)` lines (isomorphism class
//! counts, or labeled counts with `CGEOM_REFERENCE_KIND=labeled`) to check
//! the five-element enumeration against it.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cgeom::affine::{self, Obstruction};
use cgeom::choice::{extreme_as_choice, geometry_from_choice};
use cgeom::enumerate::{self, canonical_form, ReferenceKind};
use cgeom::ordinal::{associated_order, lex_sum};
use cgeom::resolution::{compose, is_extreme_resolution, resolve, resolved_conv, resolved_extreme};
use cgeom::shrink::{self, Witness};
use cgeom::{
    catalog, validate_geometry, ConvexGeometry, GroundSet, ResolutionSpec, SetFamily, Subset,
    Violation,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn family(ground: &GroundSet, sets: &[&[&str]]) -> SetFamily {
    SetFamily::from_labels(ground.clone(), sets).unwrap()
}

fn all_but(ground: &GroundSet, missing: &[&[&str]]) -> SetFamily {
    let missing: Vec<Subset> = missing.iter().map(|m| ground.subset(*m).unwrap()).collect();
    let all = SetFamily::power_set(ground.clone()).unwrap();
    SetFamily::new(ground.clone(), all.iter().filter(|s| !missing.contains(s))).unwrap()
}

fn census_three() -> Outcome {
    let census = enumerate::census(3, 1).map_err(|e| e.to_string())?;
    let s = census.summary();
    ensure!(s.classes == 6, "{} classes, expected 6", s.classes);
    ensure!(s.ordinal == 5, "{} ordinal, expected 5", s.ordinal);
    ensure!(s.primitive == 1, "{} primitive, expected 1", s.primitive);
    let prim = census.entries.iter().find(|e| e.primitive).unwrap();
    ensure!(!prim.ordinal, "the primitive class is ordinal");
    let line = catalog::three_element(5);
    ensure!(
        enumerate::are_isomorphic(&prim.geometry, &line).unwrap(),
        "the primitive class is not three collinear points"
    );
    Ok("6 classes, 5 ordinal, 1 primitive (three collinear points)".into())
}

fn census_four() -> Outcome {
    let geoms = enumerate::enumerate_geometries(4).map_err(|e| e.to_string())?;
    let dfs: BTreeSet<_> = geoms.iter().map(|g| canonical_form(g).unwrap()).collect();
    let oracle = enumerate::brute_force_forms(4).map_err(|e| e.to_string())?;
    ensure!(
        dfs == oracle,
        "search finds {} classes, brute force {}",
        dfs.len(),
        oracle.len()
    );

    let entries = enumerate::classify_all(&geoms, jobs()).map_err(|e| e.to_string())?;
    let census = enumerate::Census { n: 4, entries };
    let s = census.summary();
    let want = [
        ("classes", s.classes, 34),
        ("ordinal", s.ordinal, 16),
        ("primitive", s.primitive, 12),
        ("primitive ordinal", s.primitive_ordinal, 1),
        (
            "primitive affine",
            s.primitive_affine.unwrap_or(usize::MAX),
            2,
        ),
        ("affine", s.affine.unwrap_or(usize::MAX), 4),
        ("resolvable non-ordinal", s.resolvable_non_ordinal, 7),
    ];
    for (what, got, expected) in want {
        ensure!(got == expected, "{what}: {got}, expected {expected}");
    }
    let b = enumerate::count_resolvable_nonordinal_4();
    ensure!(
        b.type_a.len() == 4 && b.type_b.len() == 3 && b.distinct_total() == 7,
        "breakdown {} + {} = {}",
        b.type_a.len(),
        b.type_b.len(),
        b.distinct_total()
    );
    let listed: BTreeSet<_> = b
        .type_a
        .iter()
        .chain(&b.type_b)
        .map(|g| canonical_form(g).unwrap())
        .collect();
    let census_side: BTreeSet<_> = census
        .entries
        .iter()
        .filter(|e| !e.primitive && !e.ordinal)
        .map(|e| canonical_form(&e.geometry).unwrap())
        .collect();
    ensure!(
        listed == census_side,
        "breakdown classes differ from the census"
    );
    Ok("34 classes = brute force; 16 ordinal, 12 primitive (1 ordinal, 2 affine), 4 affine, 4 + 3 = 7".into())
}

fn worked_examples() -> Outcome {
    let mut failures = Vec::new();

    let spec = catalog::composition_counterexample();
    let z = spec.ground();
    let expected = family(
        z,
        &[&[], &["a1"], &["b1"], &["a1", "b1"], &["a1", "b1", "a2"]],
    );
    if resolve(&spec).family() != &expected {
        failures.push("two-chain resolution differs".to_owned());
    }
    let a2 = z.subset(["a2"]).unwrap();
    match validate_geometry(compose(&spec)) {
        Ok(_) => failures.push("two-chain composition is a geometry".into()),
        Err(report) => {
            let g2 = report.violations.iter().find_map(|v| match v {
                Violation::NotIntersectionClosed { missing, .. } => Some(*missing),
                _ => None,
            });
            if g2 != Some(a2) {
                failures.push(format!(
                    "two-chain composition G2 witness {:?}",
                    g2.map(|m| z.show(m))
                ));
            }
        }
    }

    let checks: [(&str, ResolutionSpec, &[&[&str]], Obstruction); 2] = [
        (
            "middle fiber",
            catalog::middle_fiber_resolution(),
            &[&["a", "d"], &["a", "b", "d"], &["a", "c", "d"]],
            Obstruction::O1 {
                a: 0,
                d: 3,
                b: 1,
                c: 2,
            },
        ),
        (
            "end fiber",
            catalog::end_fiber_resolution(),
            &[&["a", "c"], &["a", "d"]],
            Obstruction::O2 {
                a: 0,
                b: 1,
                c: 2,
                d: 3,
            },
        ),
    ];
    for (name, spec, missing, obstruction) in checks {
        let z = spec.ground();
        let g = resolve(&spec);
        if g.family() != &all_but(z, missing) {
            let extra: Vec<String> = SetFamily::power_set(z.clone())
                .unwrap()
                .iter()
                .filter(|s| !g.contains(*s))
                .map(|s| z.show(s))
                .collect();
            failures.push(format!(
                "{name} resolution omits {}, stated family omits {}",
                extra.join(" "),
                missing
                    .iter()
                    .map(|m| z.show(z.subset(*m).unwrap()))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        if !affine::affine_obstructions(&g).contains(&obstruction) {
            failures.push(format!("{name}: {} missing", obstruction.code()));
        }
    }
    if failures.is_empty() {
        Ok(
            "two-chain resolution and G2 witness {a2}; middle and end fiber families; O1, O2"
                .into(),
        )
    } else {
        Err(failures.join("; "))
    }
}

fn shrink_equivalence() -> Outcome {
    let mut classes = enumerate::enumerate_geometries(3).map_err(|e| e.to_string())?;
    classes.extend(enumerate::enumerate_geometries(4).map_err(|e| e.to_string())?);
    let mut candidates = 0;
    let mut discrepancies = Vec::new();
    for g in &classes {
        for s in (0..1u64 << g.size()).map(Subset::from_bits) {
            if !shrink::in_window(g, s) {
                continue;
            }
            candidates += 1;
            let sc = shrink::check_s(g, s);
            let tc = shrink::check_t(g, s);
            let vc = shrink::check_v(g, s);
            let by_s = sc.s1.holds() == Some(true) && sc.s2.holds() == Some(true);
            let by_t = [tc.t1, tc.t2, tc.t3]
                .iter()
                .all(|v| v.holds() == Some(true));
            let by_v = vc.v1.holds() == Some(true) && vc.v2.holds() == Some(true);
            let by_deresolve = match shrink::deresolve(g, s) {
                Ok(spec) => {
                    if !resolve(&spec).same_by_labels(g) {
                        discrepancies.push(format!(
                            "{}: deresolution does not resolve back",
                            g.ground().show(s)
                        ));
                    }
                    true
                }
                Err(_) => false,
            };
            let extreme = by_s && g.contains(g.full() - s);
            if by_s != by_t || by_s != by_deresolve || by_v != extreme {
                discrepancies.push(format!(
                    "{} in {:?}: S {by_s}, T {by_t}, deresolve {by_deresolve}, V {by_v}",
                    g.ground().show(s),
                    g.members()
                        .iter()
                        .map(|m| g.ground().show(*m))
                        .collect::<Vec<_>>()
                ));
            }
        }
    }
    ensure!(discrepancies.is_empty(), "{}", discrepancies.join("; "));
    Ok(format!(
        "{} classes, {candidates} candidate sets, 0 discrepancies",
        classes.len()
    ))
}

fn collinear_with_apex_witnesses() -> Outcome {
    let g = catalog::collinear_with_apex();
    let z = g.ground();
    let s = |l: &[&str]| z.subset(l).unwrap();

    let bcd = s(&["b", "c", "d"]);
    ensure!(
        shrink::shrinkable_sets(&g).contains(&bcd)
            && shrink::is_extremely_shrinkable(&g, bcd) == Some(true),
        "{{b,c,d}} is not extremely shrinkable"
    );

    let ab = shrink::check_s(&g, s(&["a", "b"]));
    ensure!(ab.s1.holds() == Some(true), "{{a,b}} fails S1");
    ensure!(
        ab.s2.witness() == Some(Witness::Pair(s(&["a", "d"]), s(&["b"]))),
        "{{a,b}} S2 witness {:?}",
        ab.s2
    );

    let ac = shrink::check_s(&g, s(&["a", "c"]));
    ensure!(
        ac.s1.witness() == Some(Witness::Member(bcd)),
        "{{a,c}} S1 witness {:?}",
        ac.s1
    );
    ensure!(ac.s2.holds() == Some(true), "{{a,c}} fails S2");

    let ad = shrink::check_t(&g, s(&["a", "d"]));
    ensure!(
        ad.t1.holds() == Some(true)
            && ad.t3.holds() == Some(true)
            && ad.t2.witness() == Some(Witness::Probe(s(&["a", "b", "c"]))),
        "{{a,d}} T verdicts {ad:?}"
    );

    let vee = catalog::vee();
    let y = vee.ground();
    let v = shrink::check_t(&vee, y.subset(["a", "b"]).unwrap());
    ensure!(
        v.t1.holds() == Some(true)
            && v.t2.holds() == Some(true)
            && v.t3.witness() == Some(Witness::Probe(y.subset(["a", "c"]).unwrap())),
        "vee {{a,b}} T verdicts {v:?}"
    );

    // No particular probe is prescribed for T1 here; any witness will do.
    let abc = shrink::check_t(&g, s(&["a", "b", "c"]));
    ensure!(
        abc.t1.holds() == Some(false)
            && abc.t2.holds() == Some(true)
            && abc.t3.holds() == Some(true),
        "{{a,b,c}} T verdicts {abc:?}"
    );
    Ok("{b,c,d} extremely shrinkable; S and T witnesses as stated".into())
}

fn census_upto(n: usize) -> Vec<ConvexGeometry> {
    (1..=n)
        .flat_map(|k| enumerate::enumerate_geometries(k).unwrap())
        .collect()
}

/// Every way to pick fibers (by index into `pool`) with total size at most
/// `budget`.
fn fiber_choices(pool: &[ConvexGeometry], slots: usize, budget: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, f) in pool.iter().enumerate() {
        // Leave at least one element for every later slot.
        if f.size() + (slots - 1) > budget {
            continue;
        }
        for mut rest in fiber_choices(pool, slots - 1, budget - f.size()) {
            rest.insert(0, i);
            out.push(rest);
        }
    }
    out
}

fn resolution_suite() -> Outcome {
    let pool = census_upto(3);
    let mut specs = 0;
    let mut violations = Vec::new();
    for base in &pool {
        for choice in fiber_choices(&pool, base.size(), 5) {
            let fibers: Vec<ConvexGeometry> = choice.iter().map(|&i| pool[i].clone()).collect();
            let spec = ResolutionSpec::new(base.clone(), fibers).map_err(|e| e.to_string())?;
            specs += 1;
            let tag = || {
                format!(
                    "base {:?} fibers {:?}",
                    base.members()
                        .iter()
                        .map(|m| base.ground().show(*m))
                        .collect::<Vec<_>>(),
                    choice
                )
            };
            let g = match validate_geometry(resolve(&spec).family().clone()) {
                Ok(g) => g,
                Err(r) => {
                    violations.push(format!("{}: not a geometry ({r})", tag()));
                    continue;
                }
            };
            for a in (0..1u64 << g.size()).map(Subset::from_bits) {
                if resolved_conv(&spec, a) != g.conv(a)
                    || resolved_extreme(&spec, a) != g.extreme(a)
                {
                    violations.push(format!(
                        "{}: operators differ on {}",
                        tag(),
                        g.ground().show(a)
                    ));
                    break;
                }
            }
            if (g.family() == &compose(&spec)) != is_extreme_resolution(&spec) {
                violations.push(format!("{}: composition law", tag()));
            }
            let parts_ordinal =
                base.is_union_closed() && spec.fibers().iter().all(ConvexGeometry::is_union_closed);
            if g.is_union_closed() != parts_ordinal {
                violations.push(format!("{}: union closure law", tag()));
            } else if parts_ordinal {
                let fibers: Vec<_> = spec
                    .fibers()
                    .iter()
                    .map(|f| associated_order(f).unwrap())
                    .collect();
                let sum = lex_sum(&associated_order(base).unwrap(), &fibers).unwrap();
                if associated_order(&g).unwrap() != sum {
                    violations.push(format!(
                        "{}: associated order is not the lexicographic sum",
                        tag()
                    ));
                }
            }
        }
    }
    ensure!(
        violations.is_empty(),
        "{} violations: {}",
        violations.len(),
        violations.join("; ")
    );
    Ok(format!("{specs} resolutions, 0 violations"))
}

fn choice_round_trip() -> Outcome {
    let classes = census_upto(4);
    for g in &classes {
        let c = extreme_as_choice(g).map_err(|e| e.to_string())?;
        ensure!(
            c.is_path_independent(),
            "extreme operator is not path independent"
        );
        let back = geometry_from_choice(&c).map_err(|e| e.to_string())?;
        ensure!(&back == g, "round trip changes a geometry");
    }
    Ok(format!("{} classes round-trip", classes.len()))
}

fn affine_suite() -> Outcome {
    let mut configs = vec![(
        "collinear with apex".to_owned(),
        catalog::collinear_with_apex_points(),
    )];
    configs.extend(
        catalog::reference_configs(4)
            .into_iter()
            .map(|(name, cfg)| (name.to_owned(), cfg)),
    );
    for (name, cfg) in &configs {
        let g = affine::induced_geometry(cfg).map_err(|e| e.to_string())?;
        ensure!(g.is_atomistic(), "{name}: not atomistic");
        ensure!(
            affine::has_exchange_property(&g),
            "{name}: exchange property fails"
        );
        ensure!(
            affine::affine_obstructions(&g).is_empty(),
            "{name}: obstruction found"
        );
        let faces: BTreeSet<Subset> = affine::face_trace_sets(cfg)
            .into_iter()
            .filter(|&s| shrink::in_window(&g, s))
            .collect();
        let t1: BTreeSet<Subset> = (0..1u64 << g.size())
            .map(Subset::from_bits)
            .filter(|&s| {
                shrink::in_window(&g, s) && shrink::check_t(&g, s).t1.holds() == Some(true)
            })
            .collect();
        ensure!(
            faces == t1,
            "{name}: face trace sets {:?} vs T1 sets {:?}",
            faces
                .iter()
                .map(|s| g.ground().show(*s))
                .collect::<Vec<_>>(),
            t1.iter().map(|s| g.ground().show(*s)).collect::<Vec<_>>()
        );
    }
    Ok(format!("{} configurations", configs.len()))
}

fn five_elements() -> Outcome {
    let classes = enumerate::enumerate_geometries(5).map_err(|e| e.to_string())?;
    let labeled = enumerate::labeled_count(5).map_err(|e| e.to_string())?;
    let orbits = enumerate::orbit_sum(&classes).map_err(|e| e.to_string())?;
    ensure!(
        labeled == orbits,
        "labeled count {labeled} but orbit sum {orbits}"
    );
    let forms: BTreeSet<_> = classes.iter().map(|g| canonical_form(g).unwrap()).collect();
    ensure!(forms.len() == classes.len(), "duplicate classes");
    let mut detail = format!("{} classes, {labeled} labeled", classes.len());
    match std::env::var_os("CGEOM_REFERENCE") {
        None => detail.push_str(", no reference file"),
        Some(path) => {
            let kind = match std::env::var("CGEOM_REFERENCE_KIND").as_deref() {
                Ok("labeled") => ReferenceKind::Labeled,
                _ => ReferenceKind::Classes,
            };
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            let table = enumerate::parse_reference(&text).map_err(|e| e.to_string())?;
            let got = match kind {
                ReferenceKind::Classes => classes.len() as u128,
                ReferenceKind::Labeled => labeled as u128,
            };
            let want = table
                .get(&5)
                .ok_or("reference file has no entry for n = 5")?;
            ensure!(got == *want, "{got} but the reference lists {want}");
            detail.push_str(", matches reference");
        }
    }
    Ok(detail)
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("census n=3", Duration::from_secs(1), census_three),
        (
            "census n=4 with brute-force oracle",
            Duration::from_secs(30),
            census_four,
        ),
        ("worked examples", Duration::from_secs(5), worked_examples),
        (
            "shrinkability characterizations agree",
            Duration::from_secs(10),
            shrink_equivalence,
        ),
        (
            "collinear-with-apex witnesses",
            Duration::from_secs(5),
            collinear_with_apex_witnesses,
        ),
        (
            "resolution laws",
            Duration::from_secs(300),
            resolution_suite,
        ),
        (
            "choice function round trip",
            Duration::from_secs(5),
            choice_round_trip,
        ),
        (
            "affine configurations",
            Duration::from_secs(30),
            affine_suite,
        ),
        ("n=5 enumeration", Duration::from_secs(600), five_elements),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > budget => Err(format!("{d}, but took longer than {budget:?}")),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {}: {tag} {name} ({:.2}s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        failed += outcome.is_err() as usize;
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
