use std::path::Path;
use std::process::{Command, Output};

fn orthovis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthovis")).args(args).output().expect("binary runs")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn generate_visgraph_recognize_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let (poly, graph) = (path(dir.path(), "poly.json"), path(dir.path(), "graph.txt"));
    assert_eq!(code(&orthovis(&["generate", "--class", "iup", "--s", "1", "--l", "2", "--out", &poly])), 0);
    assert_eq!(code(&orthovis(&["visgraph", "--in", &poly, "--out", &graph])), 0);
    assert!(std::fs::read_to_string(&graph).unwrap().starts_with("16 "));
    let out = orthovis(&["recognize", "--in", &graph]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "accepted");
    assert_eq!(v["class"], "iup");
    assert_eq!(v["format"], 1);
}

#[test]
fn reconstruct_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let (poly, graph) = (path(dir.path(), "poly.json"), path(dir.path(), "graph.txt"));
    let (out, map, svg) = (path(dir.path(), "out.json"), path(dir.path(), "map.json"), path(dir.path(), "fig.svg"));
    assert_eq!(code(&orthovis(&["generate", "--class", "histogram", "--peaks", "3,4,2", "--valleys", "2,1", "--out", &poly])), 0);
    assert_eq!(code(&orthovis(&["visgraph", "--in", &poly, "--out", &graph])), 0);
    assert_eq!(code(&orthovis(&["reconstruct", "--in", &graph, "--class", "histogram", "--out", &out, "--map", &map])), 0);
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&map).unwrap()).unwrap();
    assert_eq!(m["coords"].as_object().unwrap().len(), 24);
    assert_eq!(code(&orthovis(&["render", "--in", &out, "--map", &map, "--out", &svg])), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("<path"));
    assert_eq!(text.matches("<text").count(), 24);
}

#[test]
fn empty_graph_file_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = path(dir.path(), "empty.txt");
    std::fs::write(&empty, "").unwrap();
    let out = orthovis(&["recognize", "--in", &empty]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty"));
    assert_eq!(code(&orthovis(&["recognize", "--in", &path(dir.path(), "missing.txt")])), 2);
}

#[test]
fn rejection_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = path(dir.path(), "c6.txt");
    std::fs::write(&c6, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n").unwrap();
    let out = orthovis(&["recognize", "--in", &c6]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "rejected");
    assert!(v["reason"].is_string());
    assert_eq!(code(&orthovis(&["reconstruct", "--in", &c6, "--out", &path(dir.path(), "p.json")])), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&orthovis(&["generate", "--class", "iup", "--s", "1"])), 2);
    assert_eq!(code(&orthovis(&["generate", "--class", "pentagon"])), 2);
    assert_eq!(code(&orthovis(&["generate", "--class", "iup", "--s", "2", "--l", "2"])), 2);
    assert_eq!(code(&orthovis(&["frobnicate"])), 2);
}

#[test]
fn roundtrip_histogram_sweep() {
    let out = orthovis(&["roundtrip", "--class", "histogram", "--k", "3", "--trials", "25", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 26);
    for (i, l) in lines[..25].iter().enumerate() {
        assert_eq!(l["trial"], i);
        assert_eq!(l["ok"], true);
        assert!(l["candidates"].as_u64().unwrap() <= 2);
        assert!(l["micros"].is_u64());
    }
    assert_eq!(lines[25]["passed"], 25);
}

#[test]
fn roundtrip_failure_exits_one() {
    let out = orthovis(&["roundtrip", "--class", "regular-up", "--s", "2", "--trials", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn outputs_are_deterministic() {
    let run = |args: &[&str]| orthovis(args).stdout;
    let gen = ["generate", "--class", "histogram", "--k", "4", "--seed", "42"];
    assert_eq!(run(&gen), run(&gen));
    let dir = tempfile::tempdir().unwrap();
    let poly = path(dir.path(), "p.json");
    std::fs::write(&poly, run(&gen)).unwrap();
    let vis = ["visgraph", "--in", &poly];
    assert_eq!(run(&vis), run(&vis));
    let graph = path(dir.path(), "g.txt");
    std::fs::write(&graph, run(&vis)).unwrap();
    let rec = ["recognize", "--in", &graph];
    assert_eq!(run(&rec), run(&rec));
    let render = ["render", "--in", &poly];
    assert_eq!(run(&render), run(&render));
    let other = ["generate", "--class", "histogram", "--k", "4", "--seed", "43"];
    assert_ne!(run(&gen), run(&other));
}
