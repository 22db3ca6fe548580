use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use bbcage::export::{encode_graph6, export, GraphFormat};
use bbcage::polygons::projective_plane;
use bbcage::{BipartiteGraph, Field};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbcage")).args(args).output().expect("binary runs")
}

fn json_of(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_cage_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("cage.g6");
    let report = dir.path().join("cage.json");
    let out = run(&[
        "construct",
        "--family",
        "q4-hyperbolic-prune",
        "--q",
        "3",
        "--out",
        path_str(&graph),
        "--report",
        path_str(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json_of(&fs::read(&report).unwrap());
    assert_eq!(r["order"], 56);
    assert_eq!(r["cage_certified"], true);
    assert_eq!(r["schema"], 1);

    let out = run(&["verify", "--in", path_str(&graph), "--expect-m", "3", "--expect-n", "4", "--expect-girth", "8"]);
    assert!(out.status.success());
    let v = json_of(&out.stdout);
    assert_eq!(v["order"], 56);
    assert_eq!(v["girth"], 8);
    assert_eq!(v["report"]["cage_certified"], true);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["construct", "--family", "steiner-cage", "--v", "13", "--format", "dimacs"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("p edge 32 60\n"));
}

#[test]
fn steiner_cage_from_design_file() {
    let dir = tempfile::tempdir().unwrap();
    let design = dir.path().join("sts19.txt");
    let d = bbcage::designs::sts_generate(19).unwrap();
    fs::write(&design, bbcage::designs::design_to_string(&d)).unwrap();
    let report = dir.path().join("r.json");
    let out = run(&[
        "construct",
        "--family",
        "steiner-cage",
        "--design",
        path_str(&design),
        "--out",
        path_str(&dir.path().join("g.g6")),
        "--report",
        path_str(&report),
    ]);
    assert!(out.status.success());
    let r = json_of(&fs::read(&report).unwrap());
    assert_eq!((r["order"].as_u64(), r["cage_certified"].as_bool()), (Some(66), Some(true)));
}

#[test]
fn heawood_fails_girth_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("heawood.g6");
    let g = BipartiteGraph::levi(&projective_plane(&Field::of_order(2).unwrap()).unwrap()).unwrap();
    fs::write(&file, export(&g, GraphFormat::Graph6).unwrap()).unwrap();
    let out = run(&["verify", "--in", path_str(&file), "--expect-girth", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out.stdout)["girth"], 6);
}

#[test]
fn non_biregular_graph_has_no_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("path.g6");
    fs::write(&file, encode_graph6(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap()).unwrap();
    let out = run(&["verify", "--in", path_str(&file)]);
    // a triangle is not bipartite: parse-level rejection
    assert_eq!(out.status.code(), Some(2));

    fs::write(&file, encode_graph6(3, &[(0, 1), (1, 2)]).unwrap()).unwrap();
    let out = run(&["verify", "--in", path_str(&file)]);
    assert!(out.status.success());
    let v = json_of(&out.stdout);
    assert!(v["report"].is_null());
    assert_eq!(v["degrees"], serde_json::json!([[1], [2]]));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "p edge 3 5\ne 1 2\n").unwrap();
    assert_eq!(run(&["verify", "--in", path_str(&file)]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(run(&["construct", "--family", "hexagon", "--q", "5"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "nonsense", "--q", "3"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "branch-prune", "--q", "3"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--m", "3", "--n", "4", "--girth", "7"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--family", "steiner-cage", "--v", "9"]).status.code(), Some(2));
}

#[test]
fn bounds_output() {
    let out = run(&["bounds", "--m", "3", "--n", "4", "--girth", "8"]);
    let v = json_of(&out.stdout);
    assert_eq!((v["moore_bound"].as_u64(), v["improved_lower_bound"].as_u64()), (Some(49), Some(56)));
    let out = run(&["bounds", "--m", "3", "--n", "5", "--girth", "6"]);
    assert_eq!(json_of(&out.stdout)["improved_lower_bound"], 32);
}

#[test]
fn table1_has_seven_rows_per_q() {
    let out = run(&["table1", "--q", "2", "--q", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let data = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data, 14);
    let out = run(&["table1", "--q", "4", "--json", "--no-measure"]);
    assert_eq!(json_of(&out.stdout).as_array().unwrap().len(), 7);
}

#[test]
fn prune_families() {
    for (args, order) in [
        (&["--family", "branch-prune", "--q", "3", "--m1", "3", "--n1", "3", "--edge", "lex"][..], 54),
        (&["--family", "gamma-f", "--q", "2"][..], 20),
        (&["--family", "t2-slab", "--q", "5", "--m1", "3", "--n1", "4"][..], 175),
        (&["--family", "ag2-girth6", "--q", "5", "--m1", "3", "--n1", "4"][..], 35),
    ] {
        let mut full = vec!["construct", "--format", "dimacs"];
        full.extend_from_slice(args);
        let out = run(&full);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let header = String::from_utf8(out.stdout).unwrap();
        assert!(header.starts_with(&format!("p edge {order} ")), "{args:?}: {}", header.lines().next().unwrap());
    }
}
