use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn grlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grlab")).args(args).output().expect("grlab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_e1_is_nr_clean() {
    let spec = fixture("m2z4.grs");
    let o = grlab(&["classify", spec.to_str().unwrap(), "--ring", "R", "--property", "nr-clean"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn classify_nil_good_refuter_exits_one() {
    let spec = fixture("m2z4.grs");
    let o = grlab(&["classify", spec.to_str().unwrap(), "--ring", "B", "--property", "nil-good", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cases"][0]["status"], "FAIL");
    assert!(v["cases"][0]["detail"].as_str().unwrap().contains("refuter (1,0)"));
}

#[test]
fn full_witness_table_in_json() {
    let spec = fixture("m2z4.grs");
    let o = grlab(&["classify", spec.to_str().unwrap(), "--ring", "R", "--property", "nr-clean", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // 16 diagonal + 4 strictly upper + 4 strictly lower, sharing 0
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 22);
    assert!(stdout(&grlab(&["classify", spec.to_str().unwrap(), "--ring", "R"])).contains("more rows"));
}

#[test]
fn spec_errors_exit_two_with_location() {
    let spec = fixture("unresolved.grs");
    let o = grlab(&["classify", spec.to_str().unwrap(), "--ring", "R"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2:"), "{err}");
    assert!(err.contains('A'), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(grlab(&["verify", "T9"]).status.code(), Some(2));
    assert_eq!(grlab(&["classify"]).status.code(), Some(2));
    let spec = fixture("m2z4.grs");
    assert_eq!(grlab(&["classify", spec.to_str().unwrap(), "--ring", "R", "--property", "clean"]).status.code(), Some(2));
    assert_eq!(grlab(&["classify", spec.to_str().unwrap(), "--ring", "Nope"]).status.code(), Some(2));
}

#[test]
fn verify_tn_names_abelian_hypothesis() {
    let spec = fixture("s3.grs");
    let o = grlab(&["verify", "TN", "--spec", spec.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for c in v["cases"].as_array().unwrap() {
        assert_eq!(c["status"], "SKIPPED-hypothesis");
        assert!(c["detail"].as_str().unwrap().contains("G abelian"));
    }
}

#[test]
fn verify_catalog_t1_and_l1_pass() {
    for id in ["T1", "L1"] {
        let o = grlab(&["verify", id, "--catalog"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
    assert!(stdout(&grlab(&["verify", "L1", "--catalog"])).contains("triples"));
}

#[test]
fn json_report_shape_and_order() {
    let o = grlab(&["report", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["version"].is_string());
    assert_eq!(v["spec_sha256"].as_str().unwrap().len(), 64);
    let cases = v["cases"].as_array().unwrap();
    let keys: Vec<(String, String)> = cases
        .iter()
        .map(|c| (c["id"].as_str().unwrap().to_string(), c["instance"].as_str().unwrap().to_string()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for c in cases {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 5);
        assert!(["PASS", "SKIPPED-hypothesis", "SKIPPED-resource"].contains(&c["status"].as_str().unwrap()));
        assert!(c["millis"].is_u64());
    }

    // text and json agree on counts
    let text = stdout(&grlab(&["report", "--format", "text"]));
    let pass = cases.iter().filter(|c| c["status"] == "PASS").count();
    assert!(text.contains(&format!("{} cases: {pass} PASS, 0 FAIL", cases.len())), "{text}");
}

#[test]
fn catalog_lists_examples() {
    let o = grlab(&["catalog", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let find = |n: &str| v.as_array().unwrap().iter().find(|e| e["name"] == n).cloned().unwrap();
    assert_eq!(find("M2Z4_C3")["order"], 256);
    assert_eq!(find("M2Z3_C2")["order"], 81);
    assert_eq!(find("M2Z4_C3")["support"], serde_json::json!(["e", "g", "g^2"]));
}

#[test]
fn max_carrier_env_var_caps_construction() {
    let spec = fixture("m2z4.grs");
    let o = Command::new(env!("CARGO_BIN_EXE_grlab"))
        .args(["classify", spec.to_str().unwrap(), "--ring", "R"])
        .env("GRLAB_MAX_CARRIER", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).to_lowercase().contains("limit"));
}
