use std::path::Path;
use std::process::{Command, Output};

fn unigraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unigraph")).args(args).output().expect("run binary")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_er_one_is_complete() {
    let o = unigraph(&["gen", "--model", "er", "--p", "1", "--n", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
}

#[test]
fn triangle_free_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt").display().to_string();
    let o = unigraph(&["gen", "--model", "line-trianglefree", "--n", "200", "--seed", "7", "--out", &out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = unigraph(&["verify", "--in", &out, "--checks", "clique:3"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert!(stdout(&v).contains("pass"));
}

#[test]
fn gen_is_byte_identical_and_round_trips() {
    let args = ["gen", "--model", "line-universal", "--n", "80", "--seed", "5"];
    let a = unigraph(&args);
    assert_eq!(a.stdout, unigraph(&args).stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "g.txt", &stdout(&a));
    let g = unigraph::graph::Graph::parse_edge_list(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(g.to_edge_list(), stdout(&a));
}

#[test]
fn json_output_rederives_adjacency() {
    let o = unigraph(&["gen", "--model", "line-universal", "--n", "30", "--seed", "2", "--format", "json"]);
    let s = unigraph::graphon::SampledGraph::from_json(&stdout(&o)).unwrap();
    let g = unigraph::graphon::Graphon::line(unigraph::line_graph::LineMode::Plain);
    let pts = s.points.clone().unwrap();
    for i in 0..30 {
        for j in i + 1..30 {
            assert_eq!(s.graph.has_edge(i, j), g.omega(&pts[i], &pts[j]).unwrap() == num_traits::One::one());
        }
    }
}

#[test]
fn verify_clique_checks() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.txt", "3 3\n0 1\n0 2\n1 2\n");
    let o = unigraph(&["verify", "--in", &k3, "--checks", "clique:3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("[0, 1, 2]"));
    let empty = write(dir.path(), "e.txt", "# no edges\n5 0\n");
    assert_eq!(unigraph(&["verify", "--in", &empty, "--checks", "clique:3"]).status.code(), Some(0));
    let broken = write(dir.path(), "b.txt", "3 2\n0 1\n");
    assert_eq!(unigraph(&["verify", "--in", &broken, "--checks", "clique:3"]).status.code(), Some(1));
}

#[test]
fn verify_census_on_er_sample() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("er.txt").display().to_string();
    assert!(unigraph(&["gen", "--model", "er", "--p", "1/2", "--n", "2000", "--seed", "1", "--out", &out]).status.success());
    let o = unigraph(&["verify", "--in", &out, "--checks", "census:4,extension:2:2:min=0.999,purity", "--seed", "3", "--threads", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("found=11/11"), "{}", stdout(&o));
    let j = unigraph(&["verify", "--in", &out, "--checks", "census:3", "--seed", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&j).lines().next().unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(unigraph(&["verify", "--in", &out, "--checks", "census:3"]).status.code(), Some(1));
}

#[test]
fn cylinder_commands() {
    let dir = tempfile::tempdir().unwrap();
    let edge = write(dir.path(), "edge.txt", "2\n0 1\n1 0\n");
    let o = unigraph(&["cylinder", "--model", "er", "--p", "1/2", "--pattern", &edge]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("1/2 "), "{}", stdout(&o));
    let step = write(dir.path(), "s.json", r#"{"masses": ["1/2", "1/2"], "values": [[0, 1], [1, 0]]}"#);
    let o = unigraph(&["cylinder", "--model", "step", "--step", &step, "--pattern", &edge]);
    assert!(stdout(&o).starts_with("1/2 "), "{}", stdout(&o));
    let o = unigraph(&["cylinder", "--model", "line-universal", "--pattern", &edge]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
    let o = unigraph(&["cylinder", "--model", "line-universal", "--pattern", &edge, "--method", "mc", "--samples", "1000", "--seed", "1"]);
    assert!(o.status.success() && stdout(&o).contains('±'), "{}", stdout(&o));
    let asym = write(dir.path(), "asym.txt", "2\n0 1\n0 0\n");
    assert_eq!(unigraph(&["cylinder", "--model", "er", "--p", "1/2", "--pattern", &asym]).status.code(), Some(1));
}

#[test]
fn compare_exit_codes() {
    let same = unigraph(&["compare", "--a", "er:0.3", "--b", "er:0.3", "--k", "3", "--samples", "10000", "--seed", "1"]);
    assert_eq!(same.status.code(), Some(0), "{}", stdout(&same));
    let diff = unigraph(&["compare", "--a", "er:0.3", "--b", "er:0.5", "--k", "2", "--samples", "10000", "--seed", "1"]);
    assert_eq!(diff.status.code(), Some(2));
    let sparse = unigraph(&["compare", "--a", "er:0.01", "--b", "er:0.99", "--k", "4", "--samples", "100", "--seed", "1"]);
    assert_eq!(sparse.status.code(), Some(3));
    let bad = unigraph(&["compare", "--a", "er:7", "--b", "er:0.5", "--seed", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(unigraph(&["compare", "--a", "er:0.3", "--b", "er:0.5"]).status.code(), Some(1));
}

#[test]
fn help_documents_subcommands() {
    let o = unigraph(&["--help"]);
    assert!(o.status.success());
    for cmd in ["gen", "verify", "cylinder", "compare"] {
        assert!(stdout(&o).contains(cmd));
        assert!(unigraph(&[cmd, "--help"]).status.success());
    }
}
