//! End-to-end tests of the binary: exact output lines, exit codes,
//! JSON shape, and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fatgraph-reembed"));
    // Tests must not inherit a budget from the ambient environment.
    cmd.env_remove("FGR_CAP");
    cmd
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("spawn binary")
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn genus_prints_faces_and_genus() {
    let out = run(&["genus", data("oneface4.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), "faces: 1, genus: 1\n");

    let out = run(&["genus", data("degree7.emb").to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "faces: 1, genus: 2\n");

    let out = run(&["genus", data("loop.emb").to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "faces: 2, genus: 0\n");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let file = data("oneface4.emb");
    let args = ["reembed", file.to_str().unwrap(), "--vertex", "B", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn faces_lists_boundary_cycles() {
    let out = run(&["faces", data("bouquet2_torus.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), "(1 4 2 3)\nfaces: 1\n");
}

#[test]
fn localize_renders_the_local_array() {
    let out = run(&[
        "localize",
        data("degree7.emb").to_str().unwrap(),
        "--vertex",
        "Y",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("vertex: Y\n"));
    assert!(text.contains("degree: 7\n"));
    assert!(text.contains("faces-met: 1\n"));
    assert!(text.contains("diagonal-type: 3,2,2\n"));
    assert!(text.contains("diagonal: (2 8)(3 6 11)(9 12)\n"));
    assert!(text.ends_with("[3] 2  6 9 8 11   12\n  8 3 12 2 6  9 [11]\n"));
}

#[test]
fn reembed_tabulates_genus_shifts() {
    let out = run(&[
        "reembed",
        data("oneface4.emb").to_str().unwrap(),
        "--vertex",
        "B",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("degree: 4\n"));
    assert!(text.contains("base-genus: 1\n"));
    assert!(text.contains("method: both\n"));
    // Genus shift, rotation count, resulting genus.
    assert!(text.contains("-1\t3\t0\n"));
    assert!(text.contains("0\t3\t1\n"));
    assert!(text.contains("methods agree: formula = oracle\n"));
}

#[test]
fn reembed_json_carries_counts_as_strings() {
    let out = run(&[
        "reembed",
        data("oneface4.emb").to_str().unwrap(),
        "--vertex",
        "B",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out)).expect("valid json");
    assert_eq!(v["command"], "reembed");
    assert_eq!(v["vertex"], "B");
    assert_eq!(v["degree"], 4);
    assert_eq!(v["base_genus"], 1);
    assert_eq!(v["counts"]["-1"], "3");
    assert_eq!(v["counts"]["0"], "3");
}

#[test]
fn range_of_one_vertex_and_of_disjoint_sets() {
    let out = run(&[
        "range",
        data("oneface4.emb").to_str().unwrap(),
        "--vertex",
        "B",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), "vertices: B\nrange: [-1, 0]\n");

    // All vertices of a one-face map share that face, so a multi-vertex
    // range is rejected as an input error.
    let out = run(&[
        "range",
        data("oneface4.emb").to_str().unwrap(),
        "--vertex",
        "A",
        "--vertex",
        "C",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("share an incident face"));
}

#[test]
fn min_genus_check_verdicts() {
    let out = run(&["check-min-genus", data("oneface4.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout_of(&out);
    assert!(text.contains("vertex B: degree 4, diagonal-parts 2, faces-met 1 -> fails\n"));
    assert!(text.contains("NOT minimum genus (vertex B: 2+1 \u{2260} 5)\n"));

    let out = run(&["check-min-genus", data("planar4.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("minimum genus condition holds at every vertex\n"));
}

#[test]
fn max_genus_check_verdicts() {
    let out = run(&[
        "check-max-genus",
        data("bouquet2_planar.emb").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout_of(&out).contains("NOT maximum genus (vertex V: meets 3 faces)\n"));

    let out = run(&[
        "check-max-genus",
        data("bouquet2_torus.emb").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).contains("maximum genus condition holds at every vertex\n"));
}

#[test]
fn count_pk_prints_the_table_inline() {
    let out = run(&["count-pk", "--lambda", "3,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_of(&out), "k=1: 3, k=3: 3\n");

    let out = run(&["count-pk", "--lambda", "3,1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out)).expect("valid json");
    assert_eq!(v["lambda"], "3,1");
    assert_eq!(v["n"], 4);
    assert_eq!(v["counts"]["1"], "3");
    assert_eq!(v["counts"]["3"], "3");
}

#[test]
fn count_pk_methods_cross_check() {
    for method in ["formula", "oracle", "both"] {
        let out = run(&["count-pk", "--lambda", "2,2,1", "--method", method]);
        assert_eq!(code(&out), 0, "method {method}");
        assert_eq!(stdout_of(&out), "k=1: 8, k=3: 16\n");
    }
}

#[test]
fn oneface_bound_reports_probabilities() {
    let out = run(&["oneface-bound", data("oneface4.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("graph-bound: 4/45\n"));
    assert!(text.contains("vertex B: one-face rotations 3 of 6, probability 1/2"));

    // A multi-face embedding still gets the graph-wide bound.
    let out = run(&["oneface-bound", data("planar4.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("graph-bound: 4/45\n"));
    assert!(text.contains("require a one-face embedding"));
}

#[test]
fn enumerate_tallies_by_genus() {
    let out = run(&["enumerate", data("oneface4.emb").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "embeddings: 12\ngenus 0: 6\ngenus 1: 6\none-face: 6\n"
    );
}

#[test]
fn selftest_quick_passes() {
    let out = run(&["selftest"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("count tables"));
    assert!(text.contains("genus distributions"));
    assert!(text.contains("reversal closed form"));
    assert!(text.contains("one-face bounds"));
    assert!(text.ends_with("all stages passed\n"));
}

#[test]
fn missing_and_malformed_files_are_input_errors() {
    let out = run(&["genus", "/nonexistent/no-such-file.emb"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("cannot read"));

    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bad.emb");
    std::fs::write(&path, "vertices:\nV: 1 1\n").unwrap();
    let out = run(&["genus", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("line"));
}

#[test]
fn unknown_vertex_and_method_are_input_errors() {
    let out = run(&[
        "localize",
        data("oneface4.emb").to_str().unwrap(),
        "--vertex",
        "Q",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("unknown vertex"));

    let out = run(&["count-pk", "--lambda", "3,1", "--method", "magic"]);
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("unknown method"));
}

#[test]
fn caps_stop_large_enumerations_and_force_overrides() {
    let file = data("oneface4.emb");
    let out = run(&["enumerate", file.to_str().unwrap(), "--cap", "5"]);
    assert_eq!(code(&out), 3);
    assert!(stderr_of(&out).contains("exceeds the cap"));

    let out = run(&["enumerate", file.to_str().unwrap(), "--cap", "5", "--force"]);
    assert_eq!(code(&out), 0);
    assert!(stdout_of(&out).starts_with("embeddings: 12\n"));
}

#[test]
fn cap_environment_variable_is_honoured() {
    let file = data("oneface4.emb");
    let mut cmd = bin();
    cmd.args(["enumerate", file.to_str().unwrap()]);
    cmd.env("FGR_CAP", "1");
    let out = cmd.output().expect("spawn binary");
    assert_eq!(code(&out), 3);

    // An explicit --cap outranks the environment.
    let mut cmd = bin();
    cmd.args(["enumerate", file.to_str().unwrap(), "--cap", "100"]);
    cmd.env("FGR_CAP", "1");
    let out = cmd.output().expect("spawn binary");
    assert_eq!(code(&out), 0);

    let mut cmd = bin();
    cmd.args(["genus", file.to_str().unwrap()]);
    cmd.env("FGR_CAP", "zebra");
    let out = cmd.output().expect("spawn binary");
    assert_eq!(code(&out), 2);
    assert!(stderr_of(&out).contains("FGR_CAP"));
}

#[test]
fn over_cap_reembed_falls_back_to_formula() {
    // Degree 14 is beyond the default degree cap, so without an explicit
    // method the formula is used and succeeds instantly.
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("bouquet7.emb");
    let mut text = String::from("vertices:\nV:");
    for x in 1..=14 {
        text.push_str(&format!(" {x}"));
    }
    text.push_str("\nedges:\n");
    for e in 0..7 {
        text.push_str(&format!("{} {}\n", 2 * e + 1, 2 * e + 2));
    }
    std::fs::write(&path, &text).unwrap();

    let out = run(&["reembed", path.to_str().unwrap(), "--vertex", "V"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("method: formula\n"));
    // 13! rotations in total.
    assert!(text.contains("2\t3044321280\t2\n"));

    let out = run(&[
        "reembed",
        path.to_str().unwrap(),
        "--vertex",
        "V",
        "--method",
        "oracle",
    ]);
    assert_eq!(code(&out), 3);
}
