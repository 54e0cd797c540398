//! End-to-end tests running the built binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_parenbraid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eq_decides_relations() {
    let o = run(&["eq", "s1 s2 s1", "s2 s1 s2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equal\n");

    let o = run(&["eq", "a1 s2 a1^-1 s3^-1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "equal\n");

    let o = run(&["eq", "s1", "a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not equal\n");
}

#[test]
fn parse_failures_exit_two() {
    assert_eq!(run(&["eq", "s1 xq", "s1"]).status.code(), Some(2));
    assert_eq!(run(&["act", "--tree", "((..)", "s1"]).status.code(), Some(2));
    assert_eq!(run(&["aut", "s1", "--on", "x(0)"]).status.code(), Some(2));
    // Unknown flags are parse errors too.
    assert_eq!(run(&["eq", "--frobnicate", "s1", "s1"]).status.code(), Some(2));
}

#[test]
fn cmp_prints_the_sign_and_certificate() {
    let o = run(&["cmp", "s2", "s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "<\ncertificate: s2^-1 s1\n");

    let o = run(&["cmp", "s1 s2 s1", "s2 s1 s2"]);
    assert_eq!(stdout(&o), "=\n");

    let o = run(&["cmp", "a1", "a2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some(">"));
}

#[test]
fn nf_emits_versioned_json() {
    let o = run(&["nf", "s1 a1^-1 s2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["num"]["word"], "a2");
    assert_eq!(v["den"]["braid"], "s1 s2 s2");
    assert_eq!(v["den"]["thompson"], "1");
    assert!(v["den"]["special"]["factors"].is_array());
}

#[test]
fn reverse_replays_the_known_run() {
    let o = run(&["reverse", "--side", "right", "s4^-1 a2 s2^-1 a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "input = v u^-1\nv = a2 s1 s2 a3\nu = s1 s2\nsteps = 4\n");

    let o = run(&["reverse", "--side", "left", "s1 a1^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("input = u^-1 v\n"));
}

#[test]
fn reverse_respects_the_budget_env() {
    let w = "s1^-1 s2 s1^-1 s2 s1^-1 s2";
    let o = bin()
        .args(["reverse", "--side", "right", w])
        .env("PARENBRAID_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["reverse", "--side", "right", w]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("steps = 10\n"));
}

#[test]
fn act_prints_trees_and_partiality_exits_one() {
    let o = run(&["act", "--tree", "(.(..))", "s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(.(..))\n");

    let o = run(&["act", "--tree", "(..)", "a1"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("a1"), "{err}");
}

#[test]
fn aut_applies_automorphisms() {
    let o = run(&["aut", "a2 s1", "--on", "x(1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x(1) x(2) x(3) x(1)^-1\n");

    let o = run(&["aut", "s1", "--on", "x(1) x(2)"]);
    assert_eq!(stdout(&o), "x(1) x(2)\n");
}

#[test]
fn draw_writes_stable_files_atomically() {
    let dir = std::env::temp_dir().join(format!("parenbraid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg: PathBuf = dir.join("d.svg");
    let o = run(&["draw", "--tree", "(.(..))", "s1", "-o", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let first = std::fs::read(&svg).unwrap();
    assert!(first.starts_with(b"<svg"));
    assert!(!dir.join("d.svg.tmp").exists());

    let o = run(&["draw", "--tree", "(.(..))", "s1", "-o", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&svg).unwrap(), first);

    let ascii = dir.join("d.txt");
    let o = run(&[
        "draw", "--tree", "(.(..))", "s1", "-o", ascii.to_str().unwrap(), "--format", "ascii",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let grid = String::from_utf8(std::fs::read(&ascii).unwrap()).unwrap();
    assert!(grid.contains('\\') && grid.contains('/'));

    // Partiality leaves no file behind.
    let missing = dir.join("missing.svg");
    let o = run(&["draw", "--tree", "(..)", "a1", "-o", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!missing.exists());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cube_reports_every_triple() {
    let o = run(&["cube", "--side", "left", "--max-index", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "64 of 64 triples hold\n");

    let o = run(&["cube", "--side", "right", "--max-index", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "64 of 64 triples hold\n");
}

#[test]
fn pure_answers_are_semantic_negatives() {
    let o = run(&["pure", "s1 s1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pure\n");

    let o = run(&["pure", "a1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not pure\n");
}

#[test]
fn special_lists_representatives() {
    let o = run(&["special", "--enumerate", "3", "--mode", "circ"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("4 special elements at depth 3"));
    assert_eq!(out.lines().count(), 5);

    // Refused beyond the cap unless raised.
    let o = run(&["special", "--enumerate", "7", "--mode", "circ"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["special", "--enumerate", "7", "--mode", "circ", "--cap", "7"]);
    assert_eq!(o.status.code(), Some(0));
    // 197 = 1 + 1 + 2 + 5 + 14 + 42 + 132, one bucket per length.
    assert_eq!(stdout(&o).lines().next(), Some("197 special elements at depth 7"));
}
