use std::fs;

use trideg::cli::{run, EXIT_CLAIM, EXIT_INTERRUPTED, EXIT_IO, EXIT_OK, EXIT_USAGE};

fn trideg(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("trideg").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn construct_json() {
    let (code, out, _) = trideg(&["construct", "--n", "7", "--emit", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["degree_sequence"], serde_json::json!([6, 5, 5, 4, 4, 3, 3]));
    assert_eq!(v["triangle_sequence"], serde_json::json!([9, 7, 6, 5, 4, 3, 2]));
    assert_eq!(v["certified"], true);
    assert_eq!(v["labels"].as_array().unwrap().len(), 7);
}

#[test]
fn construct_edges_and_graph6() {
    let (code, out, _) = trideg(&["construct", "--n", "8", "--emit", "edges"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 16);
    let (_, out, _) = trideg(&["construct", "--n", "7", "--emit", "graph6"]);
    assert_eq!(trideg::graph6::decode_str(out.trim()).unwrap().size(), 15);
}

#[test]
fn check_reports_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    let json = dir.path().join("out.json");
    let (_, g7, _) = trideg(&["construct", "--n", "7", "--emit", "graph6"]);
    fs::write(&input, format!("# witnesses\n{g7}\nDQc\n")).unwrap();
    let (code, out, _) = trideg(&["check", "--in", input.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("line 2:") && out.contains("line 4:"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["graphs"][0]["triangle_distinct"], true);
    assert_eq!(v["graphs"][1]["triangle_distinct"], false);
}

#[test]
fn check_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.g6");
    fs::write(&input, "Bw\n\u{1}\n").unwrap();
    let (code, _, err) = trideg(&["check", "--in", input.to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains(":2:"), "{err}");
    let (code, _, _) = trideg(&["check", "--in", dir.path().join("missing").to_str().unwrap()]);
    assert_eq!(code, EXIT_IO);
    let (code, _, _) = trideg(&["check", "--in", input.to_str().unwrap(), "--bounds", "nope"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn search_outputs_witness() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let (code, out, _) = trideg(&["search", "--n", "7", "--workers", "2", "--json", json.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "FBnnw"), "{out}");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["td_labeled"], 5040);
    assert_eq!(v["min_edges"], 15);
}

#[test]
fn search_usage_and_interrupt() {
    assert_eq!(trideg(&["search", "--n", "9"]).0, EXIT_USAGE);
    assert_eq!(trideg(&["search", "--n", "12"]).0, EXIT_USAGE);
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let args = ["search", "--n", "6", "--block-size", "1024", "--stop-after-blocks", "4", "--checkpoint", ck.to_str().unwrap()];
    let (code, _, err) = trideg(&args);
    assert_eq!(code, EXIT_INTERRUPTED);
    assert!(err.contains("resume"));
    let mut last = code;
    for _ in 0..10 {
        last = trideg(&args).0;
        if last == EXIT_OK {
            break;
        }
    }
    assert_eq!(last, EXIT_OK);
}

#[test]
fn regular_search() {
    let (code, out, _) = trideg(&["search", "--n", "7", "--regular"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("examined [4]") && out.contains("td-hits 0"), "{out}");
}

#[test]
fn verify_command() {
    let (code, out, _) = trideg(&["verify", "--n-max", "4", "--samples", "20", "--compose-samples", "5", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 3);
    assert_eq!(trideg(&["verify", "--n-max", "7"]).0, EXIT_USAGE);
}

#[test]
fn compose_command() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g");
    let h = dir.path().join("h");
    fs::write(&g, "Bw\n").unwrap();
    fs::write(&h, "A_\n").unwrap();
    let (code, out, _) = trideg(&["compose", "--g", g.to_str().unwrap(), "--h", h.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next(), Some("E~~w"));
    assert!(!out.contains(" NO"));
}

#[test]
fn exit_code_constants() {
    assert_eq!((EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_CLAIM, EXIT_INTERRUPTED), (0, 2, 3, 4, 130));
}
