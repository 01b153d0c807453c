use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .join("fixtures")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ktoric"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn validate_valid_polytope_exits_zero() {
    let out = run(&["validate", &fixture("cp1.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[pass] smooth"), "{text}");
}

#[test]
fn validate_nonsmooth_exits_one() {
    let out = run(&["validate", &fixture("nonsmooth.json")]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("validation report is JSON");
    assert!(json["checks"].is_array());
}

#[test]
fn parse_error_exits_two() {
    let out = run(&["validate", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = std::env::temp_dir().join("ktoric-cli-bad.json");
    std::fs::write(&dir, "{ not json").unwrap();
    let out = run(&["nonfaces", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_polytope_blocks_computations() {
    let out = run(&["presentation", &fixture("nonsmooth.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn presentation_text_cp1() {
    let out = run(&["presentation", &fixture("cp1.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("I = { (1 - x1^-1)(1 - x2^-1) }"), "{text}");
    assert!(text.contains("J = { x1^-1*x2 - 1 }"), "{text}");
}

#[test]
fn presentation_json_schema() {
    let out = run(&["presentation", &fixture("square.json")]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["generators"], 4);
    assert_eq!(json["nonfaces"], serde_json::json!([[1, 2], [3, 4]]));
    assert_eq!(json["I"].as_array().unwrap().len(), 2);
    assert_eq!(json["J"].as_array().unwrap().len(), 2);
}

#[test]
fn nonfaces_one_based() {
    let out = run(&["nonfaces", &fixture("cp2.json")]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["nonfaces"], serde_json::json!([[1, 2, 3]]));
}

#[test]
fn vertices_cp2() {
    let out = run(&["vertices", &fixture("cp2.json")]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn kernel_square() {
    let out = run(&["kernel", &fixture("square.json")]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let z = json["Z"].as_array().unwrap();
    assert_eq!(z.len(), 4);
    assert!(z
        .iter()
        .any(|c| c["xi"] == serde_json::json!([-1, -1])
            && c["S"] == serde_json::json!([1, 2, 3, 4])));
}

#[test]
fn rank_hirzebruch() {
    let out = run(&["rank", &fixture("hirzebruch_1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["ordinary_rank"], 4);
    assert_eq!(json["odd_rank"], 0);
    assert_eq!(json["certificate"]["triangular"], true);
}

#[test]
fn gkm_graph_square() {
    let out = run(&["gkm", &fixture("square.json")]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 4);
    assert_eq!(json["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_passes_on_fixtures() {
    for name in ["cp1.json", "cp3.json", "hirzebruch_2.json"] {
        let out = run(&["verify", &fixture(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(json["passed"], true, "{name}");
    }
}

#[test]
fn flow_passes_and_respects_xi_flag() {
    let out = run(&["flow", &fixture("cp1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["flow", &fixture("cp1.json"), "--xi", "-1", "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["flows"][0]["hit_times"].as_array().unwrap().len(), 5);
    let out = run(&["flow", &fixture("cp1.json"), "--xi", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", &fixture("square.json"), "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}
