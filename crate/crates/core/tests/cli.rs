use std::path::Path;

use serde_json::{json, Value};
use slicekit::cli::run_with;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["slicekit"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn export(group: &str, functor: &str) -> Value {
    let (code, out, err) = cli(&["--group", group, "--mackey", functor, "export"]);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn degrees(tower: &Value) -> Vec<String> {
    tower["slices"]
        .as_object()
        .unwrap()
        .keys()
        .cloned()
        .collect()
}

fn write(dir: &Path, name: &str, doc: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn burnside_tower_json() {
    let (code, out, _) = cli(&[
        "--group", "C2", "--mackey", "burnside", "tower", "--shift", "+1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let tower: Value = serde_json::from_str(&out).unwrap();
    let mut d = degrees(&tower);
    d.sort();
    assert_eq!(d, vec!["1", "2"]);
    assert_eq!(tower["shift"], 1);
}

#[test]
fn minus_and_irregular_towers() {
    let (code, out, _) = cli(&[
        "--group",
        "C2",
        "--mackey",
        "constant-Z",
        "slices",
        "--shift",
        "-1",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let tower: Value = serde_json::from_str(&out).unwrap();
    let mut d = degrees(&tower);
    d.sort();
    assert_eq!(d, vec!["-1", "-2"]);

    let (code, out, _) = cli(&[
        "--group",
        "C2",
        "--mackey",
        "burnside",
        "tower",
        "--irregular",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let tower: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(degrees(&tower), vec!["0", "1"]);

    let (code, _, err) = cli(&[
        "--group",
        "C2",
        "--mackey",
        "burnside",
        "tower",
        "--shift",
        "-1",
        "--irregular",
    ]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = cli(&[
        "--group", "C2", "--mackey", "burnside", "tower", "--shift", "2",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn cells_of_dimension_two() {
    let (code, out, _) = cli(&[
        "--group",
        "C2",
        "cells",
        "--dim",
        "2",
        "--regular",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let cells: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cells.as_array().unwrap().len(), 2);

    let (code, out, _) = cli(&["--group", "C2", "cells", "--dim", "2", "--regular"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("rho")).count(), 2);
}

#[test]
fn check_axioms_passes_on_presets() {
    let (code, out, _) = cli(&["--group", "C2", "--mackey", "constant-Z", "check-axioms"]);
    assert_eq!((code, out.trim()), (0, "PASS"));
}

#[test]
fn generators_and_phi() {
    let (code, out, _) = cli(&["--group", "C2", "generators", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("negative spheres"));

    let (code, _, _) = cli(&["--group", "C4", "phi", "--normal", "1", "--degree", "5"]);
    assert_eq!(code, 0);
    let (code, out, _) = cli(&[
        "--group", "C4", "phi", "--normal", "1", "--degree", "5", "--format", "json",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains('3'), "{out}");

    let (code, err_out, err) = cli(&["--group", "S3", "phi", "--normal", "1"]);
    assert_eq!(code, 1, "{err_out}{err}");
    assert!(err.contains("normal"), "{err}");
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(cli(&["--group", "C7", "lattice"]).0, 2);
    assert_eq!(
        cli(&["--group", "C2", "--mackey", "nonsense", "tower"]).0,
        2
    );
    assert_eq!(
        cli(&["--group", "C2", "--mackey", "{not json", "tower"]).0,
        2
    );
    assert_eq!(
        cli(&["--group", "C2", "cells", "--dim", "2", "--format", "svg"]).0,
        2
    );
    assert_eq!(cli(&["--group", "C2", "frobnicate"]).0, 2);
    assert_eq!(cli(&["--group", "C2"]).0, 2);
}

#[test]
fn malformed_matrix_shape_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = export("C2", "burnside");
    doc["res"]["1,0"] = json!([[1, 0], [2, 0]]);
    let path = write(dir.path(), "shape.json", &doc);
    let (code, _, err) = cli(&["--mackey", &path, "check-axioms"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn corrupted_transfer_is_rejected_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = export("C2", "burnside");
    doc["tr"]["1,0"] = json!([[0, 2]]);
    let path = write(dir.path(), "bad.json", &doc);
    let (code, _, err) = cli(&["--mackey", &path, "check-axioms"]);
    assert_eq!(code, 1);
    assert!(
        err.contains("double coset formula fails at H=1, J=0, K=0"),
        "{err}"
    );
}

#[test]
fn preset_round_trip_gives_the_same_tower() {
    let dir = tempfile::tempdir().unwrap();
    let doc = export("C2", "burnside");
    let path = write(dir.path(), "b.json", &doc);
    let direct = cli(&[
        "--group", "C2", "--mackey", "burnside", "tower", "--format", "json",
    ]);
    let parsed = cli(&["--mackey", &path, "tower", "--format", "json"]);
    let a: Value = serde_json::from_str(&direct.1).unwrap();
    let b: Value = serde_json::from_str(&parsed.1).unwrap();
    assert_eq!(a["slices"], b["slices"]);
}

#[test]
fn charts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.svg");
    let (code, _, _) = cli(&[
        "--group",
        "C2",
        "--mackey",
        "burnside",
        "chart",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.contains(r#"data-degree="1""#) && svg.contains(r#"data-degree="2""#));

    let (_, minus, _) = cli(&[
        "--group",
        "C2",
        "--mackey",
        "constant-Z",
        "chart",
        "--shift",
        "-1",
    ]);
    assert!(minus.contains(r#"data-degree="-1""#) && minus.contains(r#"data-degree="-2""#));
    assert!(minus.contains("Z/2"));

    // the zero functor draws empty axes
    let zero = json!({
        "group": {"degree": 2, "generators": [[1, 0]]},
        "levels": {"0": {"ngens": 0, "relations": []}, "1": {"ngens": 0, "relations": []}}
    });
    let path = write(dir.path(), "zero.json", &zero);
    let (code, svg, err) = cli(&["--mackey", &path, "chart"]);
    assert_eq!(code, 0, "{err}");
    assert!(svg.contains("<svg") && !svg.contains("data-degree"));

    let (code, _, _) = cli(&[
        "--group",
        "C2",
        "--mackey",
        "burnside",
        "chart",
        "--out",
        "/nonexistent/dir/x.svg",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn element_cap_override() {
    std::env::set_var("SLICEKIT_ELEMENT_CAP", "4");
    let over = cli(&["--group", "S3", "lattice"]).0;
    let within = cli(&["--group", "C4", "lattice"]).0;
    std::env::set_var("SLICEKIT_ELEMENT_CAP", "many");
    let bad = cli(&["--group", "C2", "lattice"]).0;
    std::env::remove_var("SLICEKIT_ELEMENT_CAP");
    assert_eq!((over, within, bad), (1, 0, 2));
}
