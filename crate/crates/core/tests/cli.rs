use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn circlegraph(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_circlegraph"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().expect("wait")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("circlegraph-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn golden_corpus_through_the_binary() {
    for inv in circle_graphs::selftest::CORPUS.iter() {
        let o = circlegraph(inv.args, inv.stdin);
        assert_eq!(o.status.code(), Some(inv.code), "{:?}", inv.args);
        assert_eq!(stdout(&o), inv.stdout, "{:?}", inv.args);
    }
}

#[test]
fn reads_files_by_path() {
    let path = fixture("incident.chords");
    let o = circlegraph(&["ig", "--mode", "closed", path.to_str().unwrap()], "");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "graph 2\nedge 0 1\n");
    let o = circlegraph(&["ig", "/nonexistent/diagram.txt"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: /nonexistent/diagram.txt"));
}

#[test]
fn w5_is_its_own_obstruction() {
    let src = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("resources/w5.graph")).unwrap();
    let o = circlegraph(&["check-circle", "--method", "both", "-"], &src);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NOT_CIRCLE\nobstruction W5\nsteps 0\n");
    let o = circlegraph(&["check-circle", "--method", "brute", "-"], &src);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "NOT_CIRCLE\n".to_string()));
}

#[test]
fn obstruction_reached_by_deletion() {
    // W5 with a pendant vertex hanging off the hub
    let mut src = circle_graphs::recognition::ObstructionKind::W5.graph().to_text();
    src = src.replace("graph 6", "graph 7") + "edge 0 6\n";
    let o = circlegraph(&["check-circle", "-"], &src);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("NOT_CIRCLE\nobstruction W5\n"), "{out}");
    assert!(out.lines().any(|l| l.starts_with("delete ")), "{out}");
}

#[test]
fn circle_graph_with_word() {
    let o = circlegraph(&["check-circle", fixture("c6.graph").to_str().unwrap()], "");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("CIRCLE\nword "));
    // the word realizes the graph
    let word = out.lines().nth(1).unwrap().strip_prefix("word ").unwrap();
    let g = circle_graphs::DoWord::parse(word).unwrap().interlacement_graph();
    let c6 = circle_graphs::Graph::parse(&std::fs::read_to_string(fixture("c6.graph")).unwrap()).unwrap();
    assert!(g.isomorphic(&c6).is_some());
}

#[test]
fn pipelines_compose() {
    let diagram = std::fs::read_to_string(fixture("path.chords")).unwrap();
    let flipped = stdout(&circlegraph(&["flip", "--chord", "b"], &diagram));
    let via_flip = stdout(&circlegraph(&["ig", "--mode", "crossing"], &flipped));
    let graph = stdout(&circlegraph(&["ig", "--mode", "crossing"], &diagram));
    let via_locomp = stdout(&circlegraph(&["locomp", "--vertex", "1"], &graph));
    assert_eq!(via_flip, via_locomp);

    let shared = std::fs::read_to_string(fixture("triangle.chords")).unwrap();
    let blown = stdout(&circlegraph(&["blowup"], &shared));
    assert!(circlegraph(&["word"], &blown).status.success());
    assert_eq!(circlegraph(&["word"], &shared).status.code(), Some(2));
}

#[test]
fn text_formats_round_trip() {
    let diagram = std::fs::read_to_string(fixture("two_edges.chords")).unwrap();
    let once = stdout(&circlegraph(&["reembed"], &diagram));
    let twice = stdout(&circlegraph(&["reembed"], &once));
    assert_eq!(once, twice);
    let word = "c a b c a b\n";
    let embedded = stdout(&circlegraph(&["embed"], word));
    assert_eq!(stdout(&circlegraph(&["word"], &embedded)), word);
}

#[test]
fn render_to_file() {
    let out = scratch("two_edges.svg");
    let o = circlegraph(&["render", "-o", out.to_str().unwrap(), fixture("two_edges.chords").to_str().unwrap()], "");
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("line")).count(), 4);
    assert_eq!(doc.root_element().attribute("width"), Some("512"));
}

#[test]
fn obstruction_listing() {
    let o = circlegraph(&["obstructions", "BW3"], "");
    assert!(o.status.success());
    let g = circle_graphs::Graph::parse(&stdout(&o)).unwrap();
    assert_eq!((g.n(), g.edge_count()), (7, 9));
    assert_eq!(circlegraph(&["obstructions", "K5"], "").status.code(), Some(2));
}

#[test]
fn extension_over_an_input_graph() {
    let k2 = "graph 2\nedge 0 1\n";
    let o = circlegraph(&["check-extension", "--ground", "0", "-"], k2);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "U={} W={} -> 0\nU={0} W={} -> 1\nU={} W={0} -> none\nFAIL\n");
    let o = circlegraph(&["check-extension", "--ground", ""], k2);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "U={} W={} -> 0\nPASS\n".to_string()));
}

#[test]
fn witness_sets_reject_overlap() {
    let o = circlegraph(&["locomp-witness-sets", "--vertex", "0", "--u", "0,1", "--w", "1"], "graph 3\nedge 0 1\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr), "error: vertex sets are not disjoint\n");
}
