use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn charvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&charvar(args))).unwrap()
}

fn path(name: &str) -> String {
    golden(name).to_str().unwrap().to_string()
}

/// Command lines whose JSON output is pinned byte for byte under
/// `tests/golden/expected`. Set `CHARVAR_UPDATE_GOLDEN=1` to rewrite them.
fn snapshot_cases() -> Vec<(&'static str, Vec<String>)> {
    vec![
        ("analyze_klein_pauli", vec!["analyze".into(), path("klein_pauli.cv")]),
        ("analyze_klein_zeta8", vec!["analyze".into(), path("klein_zeta8.cv")]),
        ("analyze_three_crosscaps_psl", vec!["analyze".into(), path("three_crosscaps_psl.cv")]),
        ("analyze_quaternion_genus2", vec!["analyze".into(), path("quaternion_genus2.cv")]),
        ("analyze_unipotent_free", vec!["analyze".into(), path("unipotent_free.cv")]),
        ("cover_klein_pauli", vec!["cover".into(), path("klein_pauli.cv")]),
        ("scan_four_crosscaps", vec!["scan".into(), path("four_crosscaps_family.cv")]),
        ("pairing_gram_quaternion", vec!["pairing".into(), "--gram".into(), path("quaternion_genus2.cv")]),
        ("surface_orientable_2", vec!["surface".into(), "--orientable".into(), "2".into()]),
    ]
}

#[test]
fn golden_snapshots() {
    let update = std::env::var_os("CHARVAR_UPDATE_GOLDEN").is_some();
    for (name, args) in snapshot_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let actual = stdout(&charvar(&args));
        // File paths differ between checkouts and never appear in reports.
        assert!(!actual.contains("tests/golden"), "{name} leaks a path");
        let file = golden("expected").join(format!("{name}.json"));
        if update {
            std::fs::create_dir_all(file.parent().unwrap()).unwrap();
            std::fs::write(&file, &actual).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing snapshot {}", file.display()));
        assert_eq!(actual, expected, "{name} drifted from its snapshot");
    }
}

#[test]
fn byte_identical_across_runs() {
    for (_, args) in snapshot_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = charvar(&args);
        let second = charvar(&args);
        assert_eq!(first.stdout, second.stdout);
        let text: Value = serde_json::from_slice(&first.stdout).unwrap();
        assert!(text.is_object());
    }
}

#[test]
fn exit_code_contract() {
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["analyze".into(), path("klein_pauli.cv")], 0),
        (vec!["analyze".into(), path("klein_invalid.cv")], 2),
        (vec!["analyze".into(), path("malformed_zero_exponent.cv")], 1),
        (vec!["analyze".into(), path("does_not_exist.cv")], 1),
        (vec!["analyze".into(), path("four_crosscaps_family.cv")], 1),
        (vec!["scan".into(), path("klein_pauli.cv")], 1),
        (vec!["cover".into(), path("quaternion_genus2.cv")], 2),
        (vec!["cover".into(), path("klein_invalid.cv")], 2),
        (vec!["pairing".into(), path("klein_pauli.cv"), "--gram".into()], 2),
        (vec!["pairing".into(), path("unipotent_free.cv")], 1),
        (vec!["surface".into(), "--nonorientable".into(), "2".into()], 2),
        (vec!["surface".into(), "--orientable".into(), "1".into()], 2),
        (vec!["surface".into(), "--orientable".into(), "0".into()], 2),
        (vec!["surface".into(), "--orientable".into(), "2".into(), "--nonorientable".into(), "3".into()], 1),
        (vec!["surface".into(), "--orientable".into(), "2".into(), "--group".into(), "SO(3)".into()], 1),
        (vec!["analyze".into(), path("klein_pauli.cv"), "--tol".into(), "-1".into()], 1),
        (vec!["analyze".into(), path("klein_pauli.cv"), "--format".into(), "csv".into()], 1),
        (vec!["bogus".into()], 1),
        (vec!["--help".into()], 0),
    ];
    for (args, code) in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = charvar(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if code != 0 {
            assert!(out.stdout.is_empty(), "{args:?} printed a report");
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn parse_errors_name_line_and_token() {
    let out = charvar(&["analyze", &path("malformed_zero_exponent.cv")]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 5"), "{err}");
    assert!(err.contains("x1^0"), "{err}");
}

#[test]
fn unknown_keyword_is_a_hard_error() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("typo.cv");
    std::fs::write(&file, "group SL(2,C)\ngens x1\nmatt x1 = [[1, 0], [0, 1]]\n").unwrap();
    let out = charvar(&["analyze", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3, column 1"));
}

#[test]
fn tolerance_is_recorded() {
    let v = json(&["analyze", &path("klein_pauli.cv"), "--tol", "1e-7"]);
    assert_eq!(v["metadata"]["tolerance"]["rel_tol"].as_f64(), Some(1e-7));
    let v = json(&["analyze", &path("klein_pauli.cv")]);
    assert_eq!(v["metadata"]["tolerance"]["rel_tol"].as_f64(), Some(1e-9));
    assert_eq!(v["metadata"]["schema_version"], 1);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("report.json");
    let out = charvar(&["analyze", &path("klein_zeta8.cv"), "--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(written, stdout(&charvar(&["analyze", &path("klein_zeta8.cv")])));
}

#[test]
fn scan_csv_columns() {
    let text = stdout(&charvar(&["scan", &path("four_crosscaps_family.cv"), "--format", "csv"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,b0,b1,b2,simple,reductive,warnings"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1], ["0", "1", "7", "0", "false", "true", ""]);
    assert_eq!(rows[3], ["0.5", "0", "7", "1", "true", "true", ""]);
}

#[test]
fn text_reports() {
    let text = stdout(&charvar(&["analyze", &path("klein_pauli.cv"), "--format", "text"]));
    assert!(text.contains("b0 = 0  b1 = 1  b2 = 1"));
    let text = stdout(&charvar(&["surface", "--nonorientable", "3", "--format", "text"]));
    assert!(text.starts_with("gens x1 x2 x3\nrel x1^2 x2^2 x3^2\n"));
    assert!(text.contains("expected dimension 3"));
    let text = stdout(&charvar(&["pairing", &path("quaternion_genus2.cv"), "--format", "text"]));
    assert!(text.contains("w(alpha, beta) = -2e0"), "{text}");
}

#[test]
fn pairing_of_declared_cocycles() {
    let v = json(&["pairing", &path("quaternion_genus2.cv")]);
    let value = &v["pairing"]["value"];
    assert!((value[0].as_f64().unwrap() + 2.0).abs() < 1e-12);
    assert!(value[1].as_f64().unwrap().abs() < 1e-12);
    let swapped = json(&["pairing", &path("quaternion_genus2.cv"), "--alpha", "beta", "--beta", "alpha"]);
    assert!((swapped["pairing"]["value"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let out = charvar(&["pairing", &path("quaternion_genus2.cv"), "--alpha", "gamma"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lagrangian_isotropy_from_embedding() {
    let v = json(&["cover", &path("klein_pauli.cv")]);
    let l = &v["lagrangian"];
    assert_eq!(l["dimension_ok"], true);
    assert!(l["isotropy_residual"].as_f64().unwrap() <= 1e-8 * l["isotropy_scale"].as_f64().unwrap().max(1.0));
    assert_eq!(v["embedding"][0], "a1 = x1 x2");
}

#[test]
fn random_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    for (flag, value) in [("--nonorientable", "3"), ("--orientable", "2")] {
        let doc = stdout(&charvar(&["random", flag, value, "--seed", "17"]));
        assert_eq!(doc, stdout(&charvar(&["random", flag, value, "--seed", "17"])));
        assert_ne!(doc, stdout(&charvar(&["random", flag, value, "--seed", "18"])));
        let file = dir.path().join("r.cv");
        std::fs::write(&file, &doc).unwrap();
        let v = json(&["analyze", file.to_str().unwrap()]);
        assert_eq!(v["validation"]["accepted"], true);
    }
}

#[test]
fn reports_carry_the_schema_required_keys() {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report-v1.schema.json")).unwrap())
            .unwrap();
    for (_, args) in snapshot_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let v = json(&args);
        let command = v["command"].as_str().unwrap();
        let def = &schema["$defs"][command];
        for key in def["required"].as_array().unwrap() {
            assert!(v.get(key.as_str().unwrap()).is_some(), "{command} lacks {key}");
        }
    }
}
