use std::path::Path;
use std::process::{Command, Output};

use lexpaint::transcript::TranscriptDoc;
use lexpaint_core::listcolor::find_list_coloring;
use lexpaint_core::Graph;
use serde_json::Value;

fn lexpaint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexpaint"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_of(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs a campaign command with `--json` and returns the exit code and report.
fn campaign(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    all.extend(["--json", p]);
    let out = lexpaint(&all);
    (out.status.code().unwrap(), json_of(&path))
}

#[test]
fn verify_lemma_on_a_triangle() {
    let (code, r) = campaign(&[
        "verify-lemma",
        "--graph",
        "K3",
        "--n",
        "4",
        "--trials",
        "200",
        "--lister",
        "random",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["k"], 30);
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["aggregate"]["painter_wins"], 200);
    assert_eq!(r["aggregate"]["invariant_violations"], 0);
}

#[test]
fn verify_lemma_exhaustively_on_an_edge() {
    let (code, r) = campaign(&[
        "verify-lemma",
        "--graph",
        "K2",
        "--n",
        "1",
        "--b",
        "2",
        "--lister",
        "exhaustive",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["k"], 12);
    assert_eq!(r["exhaustive"]["result"], "painter_wins_every_line");
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn verify_lemma_on_a_single_layer() {
    let (code, r) = campaign(&[
        "verify-lemma",
        "--graph",
        "E1",
        "--n",
        "8",
        "--lister",
        "random",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["k"], 8);
    assert_eq!(r["params"]["delta"], 0);
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn verify_theorem_examples() {
    let (code, r) = campaign(&[
        "verify-theorem",
        "--graph",
        "K2",
        "--fiber",
        "K2",
        "--trials",
        "50",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["inner_budget"], 2);
    assert_eq!(r["params"]["k"], 18);
    assert_eq!(r["verdict"], "pass");

    let (code, r) = campaign(&[
        "verify-theorem",
        "--graph",
        "K2",
        "--fiber",
        "E4",
        "--trials",
        "50",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["inner_budget"], 1);
    assert_eq!(r["params"]["k"], 18);

    let chi_p: u64 = stdout(&lexpaint(&["paint-exact", "--graph", "C4"]))
        .trim()
        .parse()
        .unwrap();
    let (code, r) = campaign(&[
        "verify-theorem",
        "--graph",
        "C4",
        "--fiber",
        "C4",
        "--trials",
        "50",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["params"]["inner_budget"], chi_p);
    assert_eq!(r["verdict"], "pass");
}

#[test]
fn losing_painters_exit_with_one() {
    let (code, r) = campaign(&[
        "simulate",
        "--graph",
        "K3",
        "--painter",
        "greedy-first-fit",
        "--k",
        "2",
        "--trials",
        "5",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], "fail");
}

#[test]
fn bound_table_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let out = lexpaint(&[
        "bound-table",
        "--graph",
        "K2",
        "--graph",
        "E1",
        "--fiber",
        "K2",
        "--fiber",
        "E2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json_of(&path);
    let find = |g: &str, h: &str| {
        rows.as_array()
            .unwrap()
            .iter()
            .find(|r| r["base"] == g && r["fiber"] == h)
            .unwrap()
            .clone()
    };
    let kk = find("K2", "K2");
    assert_eq!(kk["chi_p"], 4);
    assert_eq!(kk["bound"], 18);
    assert!((kk["ratio"].as_f64().unwrap() - 4.0 / 18.0).abs() < 1e-12);
    let ke = find("K2", "E2");
    assert_eq!(ke["ch"], 2);
    assert_eq!(ke["bound"], 12);
    let ek = find("E1", "K2");
    assert_eq!(ek["bound"], 2 * (2 + 1));
    assert_eq!(ek["chi_p"], ek["fiber_chi_p"]);
    assert!(stdout(&out).contains("K2       K2"));
}

#[test]
fn exact_numbers() {
    let num = |args: &[&str]| stdout(&lexpaint(args)).trim().to_string();
    assert_eq!(num(&["paint-exact", "--graph", "K4"]), "4");
    assert_eq!(num(&["paint-exact", "--graph", "E5"]), "1");
    assert_eq!(num(&["choose-exact", "--graph", "C4"]), "2");
    assert_eq!(num(&["choose-exact", "--graph", "K2", "--b", "2"]), "4");
    assert_eq!(num(&["chromatic", "--graph", "C5"]), "3");
    assert_eq!(num(&["chromatic", "--graph", "lex(K3,E2)"]), "3");
    assert_eq!(num(&["chromatic", "--graph", "Kmp:2*3"]), "3");
    assert_eq!(num(&["chromatic", "--graph", "lex(K2,K2)"]), "4");
}

#[test]
fn choice_witness_defeats_every_choice() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ch.json");
    let out = lexpaint(&[
        "choose-exact",
        "--graph",
        "Kbip:3x3",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out).trim(), "3");
    let doc = json_of(&path);
    let lists: Vec<Vec<u32>> = serde_json::from_value(doc["bad_lists_below"].clone()).unwrap();
    assert!(lists.iter().all(|l| l.len() == 2));
    assert!(find_list_coloring(&Graph::complete_bipartite(3, 3), &lists, 1).is_none());
}

#[test]
fn policy_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("policy.json");
    let out = lexpaint(&[
        "paint-exact",
        "--graph",
        "K2",
        "--policy-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&out).trim(), "2");
    let doc = json_of(&path);
    assert_eq!(doc["winner"], "painter");
    assert_eq!(doc["config"]["f"], serde_json::json!([2, 2]));
    assert!(!doc["positions"].as_array().unwrap().is_empty());
}

#[test]
fn product_edge_lists() {
    let out = lexpaint(&["product", "--graph", "K2", "--fiber", "E2"]);
    assert_eq!(stdout(&out), "p 4 4\ne 0 2\ne 0 3\ne 1 2\ne 1 3\n");
    let out = lexpaint(&["product", "--graph", "lex(K2,K2)"]);
    assert!(stdout(&out).starts_with("p 4 6\n"));
    let h = stdout(&lexpaint(&["product", "--graph", "E1", "--fiber", "C5"]));
    assert!(h.starts_with("p 5 5\n"));
    assert_eq!(
        lexpaint(&["product", "--graph", "K3"]).status.code(),
        Some(2)
    );
}

fn lemma_transcripts(dir: &Path) -> Vec<std::path::PathBuf> {
    let out = lexpaint(&[
        "verify-lemma",
        "--graph",
        "K2",
        "--n",
        "2",
        "--trials",
        "5",
        "--seed",
        "3",
        "--transcripts",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    files
}

fn replay(path: &Path) -> (i32, String) {
    let out = lexpaint(&["replay", path.to_str().unwrap()]);
    (out.status.code().unwrap(), stdout(&out))
}

#[test]
fn emitted_transcripts_replay() {
    let dir = tempfile::tempdir().unwrap();
    let files = lemma_transcripts(dir.path());
    assert_eq!(files.len(), 6);
    for f in files {
        let (code, text) = replay(&f);
        assert_eq!(code, 0, "{text}");
        assert!(text.contains("bit-exact"));
    }
}

#[test]
fn tampered_transcripts_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let files = lemma_transcripts(dir.path());
    let original = TranscriptDoc::from_json(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    let graph = original.config.to_config().unwrap().graph().clone();

    // Colour a vertex that was not presented.
    let mut doc = original.clone();
    let (round, extra) = doc
        .rounds
        .iter()
        .enumerate()
        .find_map(|(i, r)| (0..4).find(|v| !r.presented.contains(v)).map(|v| (i, v)))
        .unwrap();
    doc.rounds[round].colored.push(extra);
    doc.rounds[round].colored.sort();
    let path = dir.path().join("outside.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let (code, text) = replay(&path);
    assert_eq!(code, 1);
    assert!(text.contains(&format!("round {round}")), "{text}");

    // Colour two adjacent presented vertices.
    let mut doc = original.clone();
    let round = doc
        .rounds
        .iter()
        .position(|r| {
            r.presented
                .iter()
                .any(|&u| r.presented.iter().any(|&v| graph.has_edge(u, v)))
        })
        .unwrap();
    doc.rounds[round].colored = doc.rounds[round].presented.clone();
    let path = dir.path().join("dependent.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let (code, text) = replay(&path);
    assert_eq!(code, 1);
    assert!(text.contains(&format!("round {round}")), "{text}");

    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(replay(&path).0, 2);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(lexpaint(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        lexpaint(&["chromatic", "--graph", "Q7"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lexpaint(&["verify-lemma", "--graph", "K2", "--n", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lexpaint(&["simulate", "--graph", "K3", "--painter", "weight"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lexpaint(&["paint-exact", "--graph", "lex(C4,E3)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lexpaint(&["--help"]).status.code(), Some(0));
}
