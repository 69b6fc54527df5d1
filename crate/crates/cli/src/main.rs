use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::LazyLock;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cgeom::affine::{self, induced_geometry};
use cgeom::enumerate::{self, canonical_form, ReferenceKind};
use cgeom::io::{self, FORMAT_VERSION};
use cgeom::ordinal::{associated_order, lex_sum};
use cgeom::resolution::{compose, is_extreme_resolution, resolve};
use cgeom::shrink::{self, ShrinkReport, Verdict};
use cgeom::{validate_geometry, ConvexGeometry, Error, GroundSet, Subset};

static VERSION: LazyLock<String> =
    LazyLock::new(|| format!("{} (format {FORMAT_VERSION})", env!("CARGO_PKG_VERSION")));

/// Finite convex geometries: validation, hulls, resolutions, shrinkable
/// sets, posets, point sets and small-size enumeration.
///
/// Every report is JSON carrying `"format": 1`. Domain errors exit with
/// status 1 and a JSON error object on standard error; usage errors exit
/// with status 2.
#[derive(Parser)]
#[command(name = "cgeom", version = VERSION.as_str())]
struct Cli {
    /// Indented JSON, or a table for `shrinkable` and `enumerate`.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report here instead of standard output.
    #[arg(short, long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the convex geometry axioms on a family.
    Validate { family: PathBuf },
    /// Convex hull of a set.
    Hull {
        geometry: PathBuf,
        /// Comma-separated labels.
        #[arg(long)]
        set: String,
    },
    /// Extreme elements of a set (the whole ground set by default).
    Extreme {
        geometry: PathBuf,
        #[arg(long)]
        set: Option<String>,
    },
    /// Resolution of a resolution spec.
    Resolve { spec: PathBuf },
    /// Composition of a resolution spec, which may fail the axioms.
    Compose { spec: PathBuf },
    /// Shrinkability verdicts for every set `S` with `1 < |S| < |Z|`.
    Shrinkable { geometry: PathBuf },
    /// Whether the geometry has no shrinkable set.
    Primitive { geometry: PathBuf },
    /// Collapse a shrinkable set into one base element.
    Deresolve {
        geometry: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Geometry of down-sets of a poset.
    FromPoset { poset: PathBuf },
    /// Poset whose down-sets form a union-closed geometry.
    ToPoset { geometry: PathBuf },
    /// Lexicographic sum `{"base": poset, "fibers": {label: poset}}`.
    LexSum { input: PathBuf },
    /// Geometry induced by a point set.
    FromPoints { config: PathBuf },
    /// Four-element configurations ruling out an affine realization.
    Obstructions { geometry: PathBuf },
    /// Facet traces and face trace sets of a point set.
    Faces { config: PathBuf },
    /// All geometries on `n` elements up to isomorphism.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Add per-class properties and a summary.
        #[arg(long)]
        classify: bool,
        /// Compare against the brute-force oracle (n ≤ 4).
        #[arg(long)]
        check_oracle: bool,
        /// File of `n count` lines to compare against.
        #[arg(long, value_name = "FILE")]
        reference: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Classes)]
        reference_kind: Kind,
        /// Classification threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Isomorphism between two geometries.
    Iso { first: PathBuf, second: PathBuf },
    /// Covering pairs of the lattice of convex sets.
    Lattice {
        geometry: PathBuf,
        /// Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Classes,
    Labeled,
}

enum Failure {
    Domain(Error, Option<GroundSet>),
    Io(String),
    /// A report was produced but a check failed.
    Mismatch(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e, None)
    }
}

fn with_ground(ground: &GroundSet) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Domain(e, Some(ground.clone()))
}

enum Report {
    Json(Value),
    Text(String),
}

type Outcome = Result<Report, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(Error::Json(e), None))
}

fn read_geometry(path: &Path) -> Result<ConvexGeometry, Failure> {
    Ok(io::geometry_from_json(&read_json(path)?)?)
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn shrink_table(g: &ConvexGeometry, reports: &[ShrinkReport]) -> String {
    let z = g.ground();
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = vec![z.show(r.subject)];
            let verdicts: [Verdict; 7] = [r.s.s1, r.s.s2, r.t.t1, r.t.t2, r.t.t3, r.v.v1, r.v.v2];
            row.extend(verdicts.iter().map(|v| yes_no(v.holds()).to_owned()));
            row.push(yes_no(r.shrinkable).to_owned());
            row.push(yes_no(r.extremely_shrinkable).to_owned());
            row
        })
        .collect();
    let header = [
        "S",
        "S1",
        "S2",
        "T1",
        "T2",
        "T3",
        "V1",
        "V2",
        "shrinkable",
        "extreme",
    ];
    table(&header, &rows)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn run(command: Command, pretty: bool) -> Outcome {
    match command {
        Command::Validate { family } => {
            let f = io::family_from_json(&read_json(&family)?)?;
            match validate_geometry(f) {
                Ok(g) => Ok(Report::Json(json!({
                    "format": FORMAT_VERSION,
                    "valid": true,
                    "elements": g.size(),
                    "members": g.len(),
                }))),
                Err(report) => Err(Error::NotAGeometry(report).into()),
            }
        }
        Command::Hull { geometry, set } => {
            let g = read_geometry(&geometry)?;
            let z = g.ground();
            let s = io::parse_label_list(z, &set)?;
            Ok(Report::Json(json!({
                "format": FORMAT_VERSION,
                "set": io::set_value(z, s),
                "hull": io::set_value(z, g.conv(s)),
            })))
        }
        Command::Extreme { geometry, set } => {
            let g = read_geometry(&geometry)?;
            let z = g.ground();
            let s = match set {
                Some(s) => io::parse_label_list(z, &s)?,
                None => g.full(),
            };
            Ok(Report::Json(json!({
                "format": FORMAT_VERSION,
                "set": io::set_value(z, s),
                "extreme": io::set_value(z, g.extreme(s)),
            })))
        }
        Command::Resolve { spec } => {
            let spec = io::spec_from_json(&read_json(&spec)?)?;
            Ok(Report::Json(io::geometry_to_json(&resolve(&spec))))
        }
        Command::Compose { spec } => {
            let spec = io::spec_from_json(&read_json(&spec)?)?;
            let family = compose(&spec);
            let mut v = io::family_to_json(&family);
            let verdict = validate_geometry(family);
            v["geometry"] = json!(verdict.is_ok());
            v["extreme_resolution"] = json!(is_extreme_resolution(&spec));
            v["violations"] = match verdict {
                Ok(_) => json!([]),
                Err(r) => io::violation_report_value(&r),
            };
            Ok(Report::Json(v))
        }
        Command::Shrinkable { geometry } => {
            let g = read_geometry(&geometry)?;
            let reports = shrink::report_all(&g);
            if pretty {
                return Ok(Report::Text(shrink_table(&g, &reports)));
            }
            let z = g.ground();
            let shrinkable: Vec<Value> = reports
                .iter()
                .filter(|r| r.shrinkable == Some(true))
                .map(|r| io::set_value(z, r.subject))
                .collect();
            Ok(Report::Json(json!({
                "format": FORMAT_VERSION,
                "ground": z.labels(),
                "reports": reports.iter().map(|r| io::shrink_report_value(z, r)).collect::<Vec<_>>(),
                "shrinkable": shrinkable,
            })))
        }
        Command::Primitive { geometry } => {
            let g = read_geometry(&geometry)?;
            Ok(Report::Json(json!({
                "format": FORMAT_VERSION,
                "primitive": shrink::is_primitive(&g),
            })))
        }
        Command::Deresolve { geometry, set } => {
            let g = read_geometry(&geometry)?;
            let z = g.ground();
            let s = io::parse_label_list(z, &set)?;
            let spec = shrink::deresolve(&g, s).map_err(with_ground(z))?;
            Ok(Report::Json(io::spec_to_json(&spec)))
        }
        Command::FromPoset { poset } => {
            let p = io::poset_from_json(&read_json(&poset)?)?;
            Ok(Report::Json(io::geometry_to_json(&p.ideals())))
        }
        Command::ToPoset { geometry } => {
            let g = read_geometry(&geometry)?;
            let p = associated_order(&g).map_err(with_ground(g.ground()))?;
            Ok(Report::Json(io::poset_to_json(&p)))
        }
        Command::LexSum { input } => {
            let (base, fibers) = io::lex_sum_input_from_json(&read_json(&input)?)?;
            Ok(Report::Json(io::poset_to_json(&lex_sum(&base, &fibers)?)))
        }
        Command::FromPoints { config } => {
            let cfg = io::config_from_json(&read_json(&config)?)?;
            Ok(Report::Json(io::geometry_to_json(&induced_geometry(&cfg)?)))
        }
        Command::Obstructions { geometry } => {
            let g = read_geometry(&geometry)?;
            let found: Vec<Value> = affine::affine_obstructions(&g)
                .iter()
                .map(|o| io::obstruction_value(g.ground(), o))
                .collect();
            Ok(Report::Json(
                json!({ "format": FORMAT_VERSION, "obstructions": found }),
            ))
        }
        Command::Faces { config } => {
            let cfg = io::config_from_json(&read_json(&config)?)?;
            let z = cfg.ground();
            let list = |sets: Vec<Subset>| -> Vec<Value> {
                let mut sets = sets;
                sets.sort_by(|a, b| a.canonical_cmp(*b));
                sets.into_iter().map(|s| io::set_value(z, s)).collect()
            };
            Ok(Report::Json(json!({
                "format": FORMAT_VERSION,
                "facets": list(affine::face_traces(&cfg)),
                "face_trace_sets": list(affine::face_trace_sets(&cfg)),
            })))
        }
        Command::Enumerate {
            n,
            classify,
            check_oracle,
            reference,
            reference_kind,
            jobs,
        } => run_enumerate(
            n,
            classify,
            check_oracle,
            reference,
            reference_kind,
            jobs,
            pretty,
        ),
        Command::Iso { first, second } => {
            let g = read_geometry(&first)?;
            let h = read_geometry(&second)?;
            let map = enumerate::isomorphism(&g, &h)?.map(|perm| {
                perm.iter()
                    .enumerate()
                    .map(|(i, &j)| (g.ground().label(i).to_owned(), json!(h.ground().label(j))))
                    .collect::<serde_json::Map<_, _>>()
            });
            Ok(Report::Json(json!({
                "format": FORMAT_VERSION,
                "isomorphic": map.is_some(),
                "map": map,
            })))
        }
        Command::Lattice { geometry, dot } => {
            let g = read_geometry(&geometry)?;
            let z = g.ground();
            let mut covers = g.covers();
            covers.sort_by(|x, y| x.0.canonical_cmp(y.0).then(x.1.canonical_cmp(y.1)));
            if dot {
                let mut out = String::from("digraph convex_sets {\n  rankdir=BT;\n");
                let mut members = g.members().to_vec();
                members.sort_by(|a, b| a.canonical_cmp(*b));
                for m in &members {
                    let _ = writeln!(out, "  \"{}\";", z.show(*m));
                }
                for (lo, hi) in &covers {
                    let _ = writeln!(out, "  \"{}\" -> \"{}\";", z.show(*lo), z.show(*hi));
                }
                out.push_str("}\n");
                return Ok(Report::Text(out));
            }
            let pairs: Vec<Value> = covers
                .iter()
                .map(|(lo, hi)| json!([io::set_value(z, *lo), io::set_value(z, *hi)]))
                .collect();
            Ok(Report::Json(
                json!({ "format": FORMAT_VERSION, "covers": pairs }),
            ))
        }
    }
}

fn run_enumerate(
    n: usize,
    classify: bool,
    check_oracle: bool,
    reference: Option<PathBuf>,
    kind: Kind,
    jobs: usize,
    pretty: bool,
) -> Outcome {
    let classes = enumerate::enumerate_geometries(n)?;
    let labeled = enumerate::labeled_count(n)?;
    let orbits = enumerate::orbit_sum(&classes)?;
    let mut problems = Vec::new();
    if labeled != orbits {
        problems.push(format!(
            "labeled count {labeled} differs from orbit sum {orbits}"
        ));
    }

    let mut report = if classify {
        let entries = enumerate::classify_all(&classes, jobs)?;
        io::census_to_json(&enumerate::Census { n, entries })
    } else {
        let bodies: Vec<Value> = classes
            .iter()
            .map(|g| {
                let mut v = io::geometry_to_json(g);
                v.as_object_mut().unwrap().remove("format");
                v
            })
            .collect();
        json!({ "format": FORMAT_VERSION, "n": n, "classes": bodies })
    };
    report["count"] = json!(classes.len());
    report["labeled"] = json!(labeled);

    if check_oracle {
        let oracle = enumerate::brute_force_forms(n)?;
        let found: BTreeSet<_> = classes
            .iter()
            .map(canonical_form)
            .collect::<Result<_, _>>()?;
        let agrees = oracle == found;
        if !agrees {
            problems.push(format!(
                "search found {} classes, brute force {}",
                found.len(),
                oracle.len()
            ));
        }
        report["oracle"] = json!({ "classes": oracle.len(), "agrees": agrees });
    }

    if let Some(path) = reference {
        let text = fs::read_to_string(&path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        let table = enumerate::parse_reference(&text)?;
        let (kind, got) = match kind {
            Kind::Classes => (ReferenceKind::Classes, classes.len() as u128),
            Kind::Labeled => (ReferenceKind::Labeled, u128::from(labeled)),
        };
        let Some(&want) = table.get(&n) else {
            return Err(Error::Format(format!("reference file has no entry for n = {n}")).into());
        };
        if got != want {
            problems.push(format!("{got} but the reference lists {want}"));
        }
        report["reference"] = json!({
            "kind": match kind { ReferenceKind::Classes => "classes", ReferenceKind::Labeled => "labeled" },
            "expected": want.to_string(),
            "agrees": got == want,
        });
    }

    let out = if pretty {
        Report::Text(census_text(&report, classify))
    } else {
        Report::Json(report)
    };
    if problems.is_empty() {
        Ok(out)
    } else {
        let rendered = match out {
            Report::Json(v) => serde_json::to_string(&v).unwrap() + "\n",
            Report::Text(t) => t,
        };
        Err(Failure::Mismatch(rendered, problems.join("; ")))
    }
}

fn census_text(report: &Value, classified: bool) -> String {
    let show = |body: &Value| -> String {
        let sets: Vec<String> = body["sets"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| {
                let labels: Vec<&str> = s
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|l| l.as_str().unwrap())
                    .collect();
                format!("{{{}}}", labels.join(","))
            })
            .collect();
        sets.join(" ")
    };
    let classes = report["classes"].as_array().unwrap();
    let mut out = if classified {
        let flag = |v: &Value| match v.as_bool() {
            Some(true) => "yes".to_owned(),
            Some(false) => "no".to_owned(),
            None => "-".to_owned(),
        };
        let rows: Vec<Vec<String>> = classes
            .iter()
            .enumerate()
            .map(|(i, e)| {
                vec![
                    (i + 1).to_string(),
                    flag(&e["ordinal"]),
                    flag(&e["primitive"]),
                    flag(&e["affine"]),
                    flag(&e["atomistic"]),
                    e["shrinkable_count"].to_string(),
                    e["automorphisms"].to_string(),
                    show(&e["geometry"]),
                ]
            })
            .collect();
        let header = [
            "#",
            "ordinal",
            "primitive",
            "affine",
            "atomistic",
            "shrinkable",
            "aut",
            "convex sets",
        ];
        let mut t = table(&header, &rows);
        let s = &report["summary"];
        let _ = writeln!(
            t,
            "\n{} classes: {} ordinal, {} primitive ({} ordinal), affine {}, resolvable non-ordinal {}",
            s["classes"], s["ordinal"], s["primitive"], s["primitive_ordinal"], s["affine"], s["resolvable_non_ordinal"]
        );
        t
    } else {
        let mut t = String::new();
        for (i, c) in classes.iter().enumerate() {
            let _ = writeln!(t, "{:>4}  {}", i + 1, show(c));
        }
        t
    };
    let _ = writeln!(out, "labeled geometries: {}", report["labeled"]);
    if let Some(o) = report.get("oracle") {
        let _ = writeln!(
            out,
            "brute-force oracle: {} classes, agrees: {}",
            o["classes"], o["agrees"]
        );
    }
    if let Some(r) = report.get("reference") {
        let _ = writeln!(
            out,
            "reference {}: {}, agrees: {}",
            r["kind"], r["expected"], r["agrees"]
        );
    }
    out
}

fn emit(report: Report, pretty: bool, output: Option<&Path>) -> std::io::Result<()> {
    let text = match report {
        Report::Json(v) if pretty => serde_json::to_string_pretty(&v).unwrap() + "\n",
        Report::Json(v) => serde_json::to_string(&v).unwrap() + "\n",
        Report::Text(t) => t,
    };
    match output {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn error_line(v: Value) -> String {
    serde_json::to_string(&v).unwrap()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command, cli.pretty);
    let output = cli.output.as_deref();
    let (report, error) = match result {
        Ok(r) => (Some(r), None),
        Err(Failure::Domain(e, ground)) => (
            None,
            Some(error_line(io::error_to_json(&e, ground.as_ref()))),
        ),
        Err(Failure::Io(msg)) => (
            None,
            Some(error_line(json!({
                "format": FORMAT_VERSION,
                "error": { "kind": "io", "message": msg },
            }))),
        ),
        Err(Failure::Mismatch(text, msg)) => (
            Some(Report::Text(text)),
            Some(error_line(json!({
                "format": FORMAT_VERSION,
                "error": { "kind": "mismatch", "message": msg },
            }))),
        ),
    };
    if let Some(r) = report {
        if let Err(e) = emit(r, cli.pretty, output) {
            eprintln!(
                "{}",
                error_line(
                    json!({ "format": FORMAT_VERSION, "error": { "kind": "io", "message": e.to_string() } })
                )
            );
            return ExitCode::from(1);
        }
    }
    match error {
        None => ExitCode::SUCCESS,
        Some(line) => {
            eprintln!("{line}");
            ExitCode::from(1)
        }
    }
}
