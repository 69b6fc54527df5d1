use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn cgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgeom"))
        .args(args)
        .current_dir(dir("fixtures"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// `(golden file, arguments, exit code)`. Status 0 compares standard
/// output, anything else standard error.
const CASES: &[(&str, &[&str], i32)] = &[
    ("validate_ok", &["validate", "apex.json"], 0),
    ("validate_g2", &["validate", "not_closed.json"], 1),
    ("hull", &["hull", "apex.json", "--set", "b,d"], 0),
    ("extreme", &["extreme", "apex.json"], 0),
    ("resolve_two_chain", &["resolve", "two_chain_spec.json"], 0),
    (
        "resolve_middle_fiber",
        &["resolve", "middle_fiber_spec.json"],
        0,
    ),
    ("compose_two_chain", &["compose", "two_chain_spec.json"], 0),
    ("shrinkable", &["shrinkable", "apex.json"], 0),
    (
        "shrinkable_table",
        &["shrinkable", "apex.json", "--pretty"],
        0,
    ),
    ("primitive_line", &["primitive", "line.json"], 0),
    ("primitive_apex", &["primitive", "apex.json"], 0),
    (
        "deresolve",
        &["deresolve", "apex.json", "--set", "b,c,d"],
        0,
    ),
    (
        "deresolve_s2",
        &["deresolve", "apex.json", "--set", "a,b"],
        1,
    ),
    (
        "deresolve_window",
        &["deresolve", "apex.json", "--set", "a"],
        1,
    ),
    ("from_poset", &["from-poset", "n_poset.json"], 0),
    ("from_poset_cycle", &["from-poset", "cycle_poset.json"], 1),
    ("to_poset_not_ordinal", &["to-poset", "apex.json"], 1),
    ("lex_sum", &["lex-sum", "lex_sum.json"], 0),
    ("from_points", &["from-points", "apex_points.json"], 0),
    ("obstructions_apex", &["obstructions", "apex.json"], 0),
    ("faces_triangle", &["faces", "triangle_points.json"], 0),
    (
        "enumerate_3",
        &["enumerate", "--n", "3", "--classify", "--check-oracle"],
        0,
    ),
    (
        "enumerate_3_table",
        &["enumerate", "--n", "3", "--classify", "--pretty"],
        0,
    ),
    ("enumerate_range", &["enumerate", "--n", "9"], 1),
    ("iso", &["iso", "line.json", "relabeled_line.json"], 0),
    ("lattice_dot", &["lattice", "line.json", "--dot"], 0),
    ("lattice", &["lattice", "line.json"], 0),
    ("unknown_label", &["hull", "apex.json", "--set", "q"], 1),
    ("missing_file", &["primitive", "nowhere.json"], 1),
];

#[test]
fn golden_outputs() {
    let mut mismatches = Vec::new();
    for &(name, args, code) in CASES {
        let out = cgeom(args);
        assert_eq!(out.status.code(), Some(code), "{name}: {}", stderr(&out));
        let got = if code == 0 {
            stdout(&out)
        } else {
            stderr(&out)
        };
        let path = dir("golden").join(format!("{name}.txt"));
        let want =
            fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if got != want {
            mismatches.push(format!("{name}:\n--- expected\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn errors_are_json_on_stderr() {
    for &(name, args, code) in CASES.iter().filter(|c| c.2 == 1) {
        let out = cgeom(args);
        assert!(out.stdout.is_empty(), "{name}");
        let v: serde_json::Value = serde_json::from_str(stderr(&out).trim()).unwrap();
        assert_eq!(v["format"], 1, "{name}");
        assert!(v["error"]["kind"].is_string(), "{name}");
        assert_eq!(code, 1);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cgeom(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        cgeom(&["primitive", "line.json", "--frobnicate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cgeom(&["hull", "apex.json"]).status.code(), Some(2));
}

#[test]
fn help_lists_every_subcommand() {
    let help = stdout(&cgeom(&["--help"]));
    for sub in [
        "validate",
        "hull",
        "extreme",
        "resolve",
        "compose",
        "shrinkable",
        "primitive",
        "deresolve",
        "from-poset",
        "to-poset",
        "lex-sum",
        "from-points",
        "obstructions",
        "faces",
        "enumerate",
        "iso",
        "lattice",
    ] {
        assert!(
            help.lines().any(|l| l.trim_start().starts_with(sub)),
            "{sub} missing from --help"
        );
    }
}

#[test]
fn version_names_format() {
    let v = stdout(&cgeom(&["--version"]));
    assert!(
        v.starts_with("cgeom ") && v.trim_end().ends_with("(format 1)"),
        "{v}"
    );
}

#[test]
fn output_file_and_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    let path = |f: &str| tmp.path().join(f).to_str().unwrap().to_owned();

    // deresolve then resolve gives the input back.
    let spec = path("spec.json");
    assert!(
        cgeom(&["deresolve", "apex.json", "--set", "b,c,d", "-o", &spec])
            .status
            .success()
    );
    let again = path("again.json");
    assert!(cgeom(&["resolve", &spec, "-o", &again]).status.success());
    let normalized = stdout(&cgeom(&["from-points", "apex_points.json"]));
    assert_eq!(fs::read_to_string(&again).unwrap(), normalized);

    // Writers re-emit identically through their readers.
    let poset = path("poset.json");
    assert!(cgeom(&["lex-sum", "lex_sum.json", "-o", &poset])
        .status
        .success());
    let ideals = path("ideals.json");
    assert!(cgeom(&["from-poset", &poset, "-o", &ideals])
        .status
        .success());
    let back = path("back.json");
    assert!(cgeom(&["to-poset", &ideals, "-o", &back]).status.success());
    assert_eq!(
        fs::read_to_string(&back).unwrap(),
        fs::read_to_string(&poset).unwrap()
    );
    let geometry_again = stdout(&cgeom(&["from-poset", &back]));
    assert_eq!(geometry_again, fs::read_to_string(&ideals).unwrap());
}

#[test]
fn parallel_census_is_deterministic() {
    let one = cgeom(&["enumerate", "--n", "4", "--classify", "--jobs", "1"]);
    let many = cgeom(&["enumerate", "--n", "4", "--classify", "--jobs", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let v: serde_json::Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(v["summary"]["classes"], 34);
    assert_eq!(v["summary"]["primitive"], 12);
    assert_eq!(v["labeled"], 485);
}

#[test]
fn reference_mismatch_fails() {
    let tmp = tempfile::tempdir().unwrap();
    let good = tmp.path().join("good.txt");
    fs::write(&good, "# classes\n3 6\n").unwrap();
    let bad = tmp.path().join("bad.txt");
    fs::write(&bad, "3 7\n").unwrap();
    let ok = cgeom(&[
        "enumerate",
        "--n",
        "3",
        "--reference",
        good.to_str().unwrap(),
    ]);
    assert!(ok.status.success());
    let labeled = tmp.path().join("labeled.txt");
    fs::write(&labeled, "3 22\n").unwrap();
    let ok = cgeom(&[
        "enumerate",
        "--n",
        "3",
        "--reference",
        labeled.to_str().unwrap(),
        "--reference-kind",
        "labeled",
    ]);
    assert!(ok.status.success());
    let fail = cgeom(&[
        "enumerate",
        "--n",
        "3",
        "--reference",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(fail.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(v["reference"]["agrees"], false);
    assert!(stderr(&fail).contains("mismatch"));
}
