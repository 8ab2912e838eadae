//! Behavior tests for the binary: exit codes, strict input validation,
//! and output round-trips, driven through the real executable.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn bilens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bilens"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("bilens-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compose_identities_is_identity_with_exit_zero() {
    let out = bilens(&["compose", "identity_lens.json", "identity_lens.json"]);
    assert_eq!(out.status.code(), Some(0));
    let identity = std::fs::read_to_string(fixtures().join("identity_lens.json")).unwrap();
    assert_eq!(stdout_of(&out), identity);
}

#[test]
fn compose_worked_example() {
    let out = bilens(&["compose", "mu.json", "lam.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["lens"]["view"]["s"], "p");
    assert_eq!(v["lens"]["update"]["s"]["q0"], "t0");
    assert_eq!(v["lens"]["update"]["s"]["q1"], "t1");
}

#[test]
fn verify_pullback_probe_exits_one_with_witness() {
    let out = bilens(&["verify", "pullback", "probe_cospan.json", "--max-apex", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["status"], "failed");
    assert_eq!(v["witness"]["mediator_count"], 0);
}

#[test]
fn hom_count_matches_formula() {
    let out = bilens(&["hom", "count", "obj_s2t2.json", "obj_a2b2.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "{\"count\":64}\n");
}

#[test]
fn malformed_json_exits_two() {
    let path = write_temp("broken.json", "{\"lens\": tru");
    let out = bilens(&["putget", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_keys_rejected() {
    let path = write_temp(
        "extra_key.json",
        r#"{"set":{"name":"S","elems":["s0"],"color":"red"}}"#,
    );
    let out = bilens(&["identity", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("unknown key"), "stderr: {err}");
}

#[test]
fn unknown_set_name_exits_two() {
    let path = write_temp("dangling.json", r#"{"object":["Nope","T2"]}"#);
    let out = bilens(&["identity", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_total_table_rejected() {
    let path = write_temp(
        "partial_fn.json",
        r#"{"fn":{"dom":"S2","cod":"T2","table":{"s0":"t0"}},
           "sets":[{"name":"S2","elems":["s0","s1"]},{"name":"T2","elems":["t0","t1"]}]}"#,
    );
    let out = bilens(&["naturality", path.to_str().unwrap(), "x", "y"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn clashing_set_definitions_rejected() {
    let path = write_temp(
        "clash.json",
        r#"{"object":["S2","S2"],"sets":[{"name":"S2","elems":["s0"]}]}"#,
    );
    let out = bilens(&[
        "--sets",
        "sets_shared.json",
        "identity",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("defined twice"), "stderr: {err}");
}

#[test]
fn wrong_document_kind_exits_two() {
    let out = bilens(&["compose", "obj_s2t2.json", "identity_lens.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn endpoint_mismatch_exits_two() {
    let out = bilens(&["compose", "lam.json", "lam.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mediator_on_probe_cone_reports_witness_and_exits_one() {
    let out = bilens(&["mediator", "probe_cone.json", "probe_cospan.json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["no_mediator"]["p"], "p");
    assert_eq!(v["no_mediator"]["w"], "(s1,s2')");
    assert_eq!(v["no_mediator"]["b"], "b");
}

#[test]
fn mediator_cone_cospan_consistency_checked() {
    let out = bilens(&["mediator", "probe_cone.json", "id_cospan.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn putget_exit_codes() {
    assert_eq!(bilens(&["putget", "putget_proj.json"]).status.code(), Some(0));
    assert_eq!(bilens(&["putget", "putget_const.json"]).status.code(), Some(1));
    assert_eq!(bilens(&["putget", "lam.json"]).status.code(), Some(2));
}

#[test]
fn outputs_reparse_compose_chain() {
    // compose output feeds back in as an input lens.
    let out = bilens(&["compose", "mu.json", "lam.json"]);
    let composed = write_temp("composed.json", &stdout_of(&out));
    let out2 = bilens(&["adjunct", "from-lens", composed.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
    let adj = write_temp("composed_adj.json", &stdout_of(&out2));
    let out3 = bilens(&["adjunct", "to-lens", adj.to_str().unwrap()]);
    assert_eq!(out3.status.code(), Some(0));
    // Round-trip through the adjunction reproduces the composed lens.
    assert_eq!(stdout_of(&out3), stdout_of(&out));
}

#[test]
fn span_outputs_reparse() {
    let out = bilens(&["span", "compose", "span_left.json", "span_right.json"]);
    assert_eq!(out.status.code(), Some(0));
    let composed = write_temp("span_composed.json", &stdout_of(&out));
    let out2 = bilens(&["span", "iso", composed.to_str().unwrap(), composed.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out2)).unwrap();
    assert_eq!(v["iso"]["found"], true);
}

#[test]
fn span_iso_finds_apex_relabelling() {
    let out = bilens(&["span", "iso", "span_left.json", "span_left_relabelled.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(v["iso"]["found"], true);
}

#[test]
fn pullback_output_classes_are_the_quotient() {
    let out = bilens(&["pullback", "probe_cospan.json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let classes = v["pullback"]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].as_array().unwrap().len(), 4);
}

#[test]
fn budget_env_var_caps_laws() {
    let out = Command::new(env!("CARGO_BIN_EXE_bilens"))
        .args(["laws", "--sizes", "3,3,3,3"])
        .current_dir(fixtures())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_bilens"))
        .args(["laws", "--sizes", "1,1,1,3"])
        .env("BILENS_MAX_BUDGET", "3")
        .current_dir(fixtures())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fixtures_all_parse() {
    let shared = std::fs::read_to_string(fixtures().join("sets_shared.json")).unwrap();
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        // Each fixture parses on its own, except the deliberately bare
        // ones, which rely on the shared preload file.
        let mut ctx = bilens_cli::context::SetContext::new();
        bilens_cli::json::parse_doc(&shared, &mut ctx).unwrap();
        bilens_cli::json::parse_doc(&text, &mut ctx)
            .unwrap_or_else(|e| panic!("{} does not parse: {e}", path.display()));
    }
}

#[test]
fn pretty_flag_renders_tables() {
    let out = bilens(&["--pretty", "compose", "mu.json", "lam.json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("lens: (S,T) -> (P1,Q1)"), "{text}");
    assert!(text.contains("|->"), "{text}");
}

fn canonical_probe_witness(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["witness"]["cocone_failure"]["w"], "(s1,s2')");
}

#[test]
fn probe_witness_cocone_failure_is_recorded() {
    let out = bilens(&["verify", "pullback", "probe_cospan.json", "--max-apex", "2"]);
    let path = write_temp("probe_report.json", &stdout_of(&out));
    canonical_probe_witness(&path);
}
