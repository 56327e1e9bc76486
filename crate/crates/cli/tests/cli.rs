use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_rook-crystal");

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn count_only_prints_a_number() {
    assert_eq!(run(&["enumerate", "--m", "2", "--n", "2", "--count-only"]), (0, "15\n".into()));
}

#[test]
fn caps_are_usage_errors() {
    assert_eq!(run(&["enumerate", "--m", "9", "--n", "3", "--count-only"]).0, 2);
}

#[test]
fn unknown_target_is_a_usage_error() {
    assert_eq!(run(&["verify", "no-such-target"]).0, 2);
}

#[test]
fn restriction_decomposes() {
    let (code, out) = run(&["decompose", "--restrict", "1", "--class", "2,1:1,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classes"][0]["counts"], serde_json::json!([1, 0]));
    assert_eq!(v["total_dim"], 1);
}

#[test]
fn blambda_has_eight_nodes() {
    let (code, out) = run(&["crystal", "blambda", "--shape", "2,1", "--n", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 8);
}

#[test]
fn dot_export_labels_classes() {
    let (code, out) = run(&["crystal", "cm", "--m", "2", "--n", "1", "--dot", "-"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert!(out.contains("(1,1) [01]"));
}
