use std::path::Path;
use std::process::{Command, Output};

use tetraref::{LaurentQ, QPoly};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetraref"))
        .args(args)
        .env_remove("TETRAREF_CACHE_DIR")
        .output()
        .unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetraref"))
        .args(args)
        .env("TETRAREF_CACHE_DIR", dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn prints_q10() {
    let o = run(&["q", "compute", "1", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "w*x*y^2*z - w - x*y + 1");
}

#[test]
fn prints_k_element_expanded() {
    let o = run(&["k", "element", "3", "1", "0", "2", "1", "3", "0", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let printed = QPoly::parse("-q^6(1-q+q^2)(1+q+q^2)")
        .unwrap()
        .coeff(&[0; 4]);
    assert_eq!(stdout(&o).trim(), printed.to_string());
    assert_eq!(stdout(&o).trim(), "-q^6 - q^8 - q^10");
}

#[test]
fn q_routes_print_the_same_polynomial() {
    let base = stdout(&run(&["q", "compute", "2", "1"]));
    for route in ["alternate", "dual", "closed-form"] {
        assert_eq!(
            stdout(&run(&["q", "compute", "2", "1", "--route", route])),
            base,
            "{route}"
        );
    }
}

#[test]
fn tetrahedron_summary() {
    let o = run(&["verify", "tetrahedron", "--max-occ", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("64/64 pass"), "{}", stdout(&o));
}

#[test]
fn printed_values_reproduce() {
    let o = run(&["verify", "printed"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn intertwiner_json_report() {
    let o = run(&[
        "--format",
        "json",
        "verify",
        "intertwiner",
        "--relation",
        "24",
        "--max-occ",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checked"], 16);
    assert!(v["first_failure"].is_null());
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["k", "element", "1", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "intertwiner", "--relation", "26"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["k", "element", "0", "0", "0", "0", "0", "0", "0", "0", "--route", "sideways"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_export_round_trips() {
    let o = run(&["export", "q", "1", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let poly: QPoly = serde_json::from_value(v["poly"].clone()).unwrap();
    assert_eq!(poly, QPoly::parse(v["text"].as_str().unwrap()).unwrap());
    let direct = stdout(&run(&["q", "compute", "1", "1"]));
    assert_eq!(poly.to_string(), direct.trim());
}

#[test]
fn csv_block_export() {
    let o = run(&["--format", "csv", "export", "block", "r", "1", "1"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("out,in,coefficient"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.contains(&"1 0 1,0 1 0,1"));
    let o = run(&["--format", "json", "export", "block", "k", "2", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for e in v["entries"].as_array().unwrap() {
        let value = QPoly::parse(e["value"].as_str().unwrap())
            .unwrap()
            .coeff(&[0; 4]);
        assert!(value != LaurentQ::zero());
    }
}

#[test]
fn cache_build_reuse_and_version_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let o = run_in(
        dir.path(),
        &["cache", "build", "--max-bc", "2", "--max-b", "3"],
    );
    assert_eq!(o.status.code(), Some(0));
    let file = dir.path().join("tetraref-cache.json");
    assert!(file.exists());
    let shown = stdout(&run_in(dir.path(), &["cache", "show"]));
    assert!(shown.contains("2,2"), "{shown}");

    let cold = stdout(&run(&["q", "compute", "2", "2"]));
    let warm = stdout(&run_in(dir.path(), &["q", "compute", "2", "2"]));
    assert_eq!(cold, warm);

    let raw = std::fs::read_to_string(&file).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&raw).unwrap();
    v["schema_version"] = 999.into();
    std::fs::write(&file, v.to_string()).unwrap();
    let o = run_in(dir.path(), &["q", "compute", "2", "2"]);
    assert_eq!(stdout(&o), cold);
    assert!(String::from_utf8_lossy(&o.stderr).contains("rebuilding"));
    assert_eq!(
        stdout(&run_in(dir.path(), &["cache", "show"]))
            .lines()
            .next(),
        Some("schema 1")
    );

    assert_eq!(
        run_in(dir.path(), &["cache", "clear"]).status.code(),
        Some(0)
    );
    assert!(!file.exists());
}
