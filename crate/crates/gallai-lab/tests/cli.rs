//! End-to-end runs of the binary: every subcommand, all three exit-code
//! families, and byte-level determinism of file outputs.

use std::path::Path;
use std::process::{Command, Output};

use gallai_core::{apply_edits, compose, count_rainbow_triangles};
use gallai_lab::formats::{read_colored, read_transcript, read_tree};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gallai-lab")).args(args).output().expect("binary runs")
}

fn payload(out: &Output) -> Value {
    let envelope: Value = serde_json::from_slice(&out.stdout).expect("stdout is a JSON envelope");
    envelope["payload"].clone()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn path_str(p: &Path) -> String {
    p.to_str().expect("utf-8 path").to_owned()
}

/// Writes a composed random tree to `<dir>/<name>` and returns the path.
fn make_graph(dir: &Path, name: &str, n: &str, seed: &str) -> String {
    let out = path_str(&dir.join(name));
    let res = run(&[
        "generate", "gallai", "--n", n, "--seed", seed, "--max-children", "16", "--out", &out,
    ]);
    assert_eq!(code(&res), 0, "stderr: {}", String::from_utf8_lossy(&res.stderr));
    out
}

#[test]
fn generate_writes_rainbow_free_graph_and_matching_tree() {
    let dir = tempfile::tempdir().unwrap();
    let g_path = dir.path().join("g.json");
    let t_path = dir.path().join("t.json");
    let res = run(&[
        "generate",
        "gallai",
        "--n",
        "60",
        "--seed",
        "7",
        "--out",
        &path_str(&g_path),
        "--tree-out",
        &path_str(&t_path),
    ]);
    assert_eq!(code(&res), 0);
    let p = payload(&res);
    assert_eq!(p["n"], 60);
    assert_eq!(p["rainbow_triangles"], 0);

    let g = read_colored(&g_path).unwrap();
    assert_eq!(g.n(), 60);
    assert_eq!(count_rainbow_triangles(&g).unwrap(), 0);
    let tree = read_tree(&t_path).unwrap();
    assert_eq!(compose(&tree).unwrap(), g);
}

#[test]
fn corrupt_recolors_exactly_the_advertised_pair_count() {
    let dir = tempfile::tempdir().unwrap();
    let clean_path = make_graph(dir.path(), "clean.json", "60", "3");
    let noisy_path = path_str(&dir.path().join("noisy.json"));
    let res = run(&[
        "generate", "corrupt", "--input", &clean_path, "--noise", "0.05", "--seed", "9", "--out",
        &noisy_path,
    ]);
    assert_eq!(code(&res), 0);
    // floor(0.05 * 60 * 59 / 2) = 88, and every recolored pair must actually
    // change color, so exactly 88 pairs differ.
    assert_eq!(payload(&res)["recolored"], 88);

    let clean = read_colored(Path::new(&clean_path)).unwrap();
    let noisy = read_colored(Path::new(&noisy_path)).unwrap();
    let mut differing = 0;
    for u in 0..60 {
        for v in u + 1..60 {
            if clean.color(u, v) != noisy.color(u, v) {
                differing += 1;
            }
        }
    }
    assert_eq!(differing, 88);
}

#[test]
fn repair_certifies_and_its_transcript_applies() {
    let dir = tempfile::tempdir().unwrap();
    let clean_path = make_graph(dir.path(), "clean.json", "150", "7");
    let noisy_path = path_str(&dir.path().join("noisy.json"));
    let res = run(&[
        "generate", "corrupt", "--input", &clean_path, "--noise", "0.002", "--seed", "7", "--out",
        &noisy_path,
    ]);
    assert_eq!(code(&res), 0);

    let tr_path = dir.path().join("edits.jsonl");
    let res = run(&[
        "repair",
        "--input",
        &noisy_path,
        "--epsilon",
        "0.1",
        "--seed",
        "5",
        "--transcript",
        &path_str(&tr_path),
    ]);
    assert_eq!(code(&res), 0, "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let p = payload(&res);
    assert_eq!(p["certified"], true);
    assert_eq!(p["n"], 150);
    assert!(p["cost"].as_u64().unwrap() <= 2_250);

    let noisy = read_colored(Path::new(&noisy_path)).unwrap();
    let transcript = read_transcript(&tr_path).unwrap();
    let fixed = apply_edits(&noisy, &transcript).unwrap();
    assert_eq!(count_rainbow_triangles(&fixed).unwrap(), 0);
}

#[test]
fn tester_accepts_clean_input_and_rejects_far_input() {
    let dir = tempfile::tempdir().unwrap();
    let clean_path = make_graph(dir.path(), "clean.json", "100", "11");
    let res = run(&["test", "--input", &clean_path, "--epsilon", "0.05", "--seed", "1"]);
    assert_eq!(code(&res), 0);
    let p = payload(&res);
    assert_eq!(p["verdict"], "accept");
    assert_eq!(p["witness"], Value::Null);

    let far_path = path_str(&dir.path().join("far.json"));
    let res = run(&[
        "generate", "corrupt", "--input", &clean_path, "--noise", "0.3", "--seed", "2", "--out",
        &far_path,
    ]);
    assert_eq!(code(&res), 0);
    let res = run(&["test", "--input", &far_path, "--epsilon", "0.05", "--seed", "1"]);
    assert_eq!(code(&res), 1);
    let p = payload(&res);
    assert_eq!(p["verdict"], "reject");
    assert_eq!(p["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn decompose_reports_tree_dot_and_rainbow_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let clean_path = make_graph(dir.path(), "clean.json", "60", "13");
    let res = run(&["decompose", "--input", &clean_path]);
    assert_eq!(code(&res), 0);
    let p = payload(&res);
    assert_eq!(p["n"], 60);
    assert_eq!(p["leaves"], 60);
    assert!(p["tree"].is_object());

    let dot_path = dir.path().join("tree.dot");
    let res = run(&[
        "decompose", "--input", &clean_path, "--format", "dot", "--out", &path_str(&dot_path),
    ]);
    assert_eq!(code(&res), 0);
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("digraph "), "got: {}", &dot[..dot.len().min(40)]);

    let far_path = path_str(&dir.path().join("far.json"));
    let res = run(&[
        "generate", "corrupt", "--input", &clean_path, "--noise", "0.3", "--seed", "4", "--out",
        &far_path,
    ]);
    assert_eq!(code(&res), 0);
    let res = run(&["decompose", "--input", &far_path]);
    assert_eq!(code(&res), 1);
    let p = payload(&res);
    assert_eq!(p["error"], "rainbow_triangle");
    assert_eq!(p["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn bundle_verifies_clean_and_flags_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let bundle_dir = path_str(&dir.path().join("d3"));
    let res = run(&["generate", "d3-hardness", "--m", "8", "--factor", "4", "--out-dir", &bundle_dir]);
    assert_eq!(code(&res), 0, "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let p = payload(&res);
    assert_eq!(p["m"], 8);
    assert_eq!(p["factor"], 4);
    assert_eq!(p["host_n"], 48);

    let res = run(&["verify", "--dir", &bundle_dir]);
    assert_eq!(code(&res), 0, "stderr: {}", String::from_utf8_lossy(&res.stderr));
    let p = payload(&res);
    assert_eq!(p["ok"], true);
    assert!(p["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    // Swap the first two vertices of one planted copy: the tuple no longer
    // matches the pattern at its roles, so re-derivation must fail.
    let fam_path = dir.path().join("d3").join("family.json");
    let mut fam: Value = serde_json::from_slice(&std::fs::read(&fam_path).unwrap()).unwrap();
    let copy = fam["copies"][0].as_array().unwrap().clone();
    fam["copies"][0] = Value::Array(vec![copy[1].clone(), copy[0].clone(), copy[2].clone()]);
    std::fs::write(&fam_path, serde_json::to_vec(&fam).unwrap()).unwrap();

    let res = run(&["verify", "--dir", &bundle_dir]);
    assert_eq!(code(&res), 1);
    let p = payload(&res);
    assert_eq!(p["ok"], false);
    assert!(p["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn usage_and_input_errors_exit_two() {
    let res = run(&["frobnicate"]);
    assert_eq!(code(&res), 2);
    assert!(!res.stderr.is_empty());

    let res = run(&["repair", "--input", "/nonexistent/graph.json", "--epsilon", "0.1", "--seed", "1"]);
    assert_eq!(code(&res), 2);
    assert!(String::from_utf8_lossy(&res.stderr).starts_with("error:"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, b"{ definitely not json").unwrap();
    let res = run(&["decompose", "--input", &path_str(&bad)]);
    assert_eq!(code(&res), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = make_graph(dir.path(), "a.json", "80", "21");
    let b = make_graph(dir.path(), "b.json", "80", "21");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    // Same command, same payload; only wall time may differ.
    let r1 = run(&["repair", "--input", &a, "--epsilon", "0.1", "--seed", "6"]);
    let r2 = run(&["repair", "--input", &a, "--epsilon", "0.1", "--seed", "6"]);
    assert_eq!(code(&r1), code(&r2));
    assert_eq!(payload(&r1), payload(&r2));
    let e1: Value = serde_json::from_slice(&r1.stdout).unwrap();
    let e2: Value = serde_json::from_slice(&r2.stdout).unwrap();
    assert_eq!(e1["command"], e2["command"]);
    assert_eq!(e1["seed"], e2["seed"]);
}
