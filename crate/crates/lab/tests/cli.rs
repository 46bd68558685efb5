use serde_json::Value;
use std::process::Command;

fn bfk(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bfk"))
        .args(args)
        .env_remove("BFK_CACHE_DIR")
        .output()
        .expect("bfk runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verified_campaign_exits_zero() {
    let (code, out) = bfk(&["verify", "induction", "--max-order", "27"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "bfk-report");
    assert_eq!(v["summary"]["refuted"], 0);
    let claims: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["claim"].as_str().unwrap())
        .collect();
    let mut sorted = claims.clone();
    sorted.sort();
    assert_eq!(claims, sorted);
}

#[test]
fn groups_beyond_the_bound_are_skipped() {
    let (code, out) = bfk(&["verify", "exact", "--max-order", "243", "--format", "csv"]);
    assert_eq!(code, 3);
    assert!(out.lines().any(|l| l.contains("elab:3:5") && l.contains("skipped")));
}

#[test]
fn emitted_system_is_accepted_back() {
    let path = std::env::temp_dir().join(format!("bfk-system-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, _) = bfk(&[
        "limit",
        "--group",
        "xsp:3",
        "--class",
        "X3",
        "--functor",
        "Kdual",
        "--emit-system",
        p,
    ]);
    assert_eq!(code, 0);
    let (code, out) = bfk(&[
        "limit",
        "--group",
        "xsp:3",
        "--class",
        "X3",
        "--functor",
        "Kdual",
        "--system",
        p,
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["witness"]["limit"], reports[1]["witness"]["limit"]);
}

#[test]
fn malformed_system_is_rejected() {
    let path = std::env::temp_dir().join(format!("bfk-bad-system-{}.json", std::process::id()));
    std::fs::write(&path, "{\"sections\": 3}").unwrap();
    let (code, _) = bfk(&["limit", "--group", "elab:3:2", "--system", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1);
}

#[test]
fn catalog_lists_order_81_groups() {
    let (code, out) = bfk(&["catalog"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let n = v.as_array().unwrap().iter().filter(|e| e["order"] == 81).count();
    assert!(n >= 3);
}

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

fn required(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    k.sort();
    k
}

#[test]
fn reports_follow_the_checked_in_schema() {
    let schema: Value = serde_json::from_str(include_str!("../../../schema/report.schema.json")).unwrap();
    assert_eq!(
        schema["properties"]["version"]["const"],
        bfk_lab::report::SCHEMA_VERSION
    );
    assert_eq!(schema["properties"]["schema"]["const"], bfk_lab::report::SCHEMA);
    let (_, out) = bfk(&["probe", "m", "--max-order", "27"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(keys(&v), required(&schema));
    assert_eq!(keys(&v["config"]), required(&schema["properties"]["config"]));
    let item = &schema["properties"]["reports"]["items"];
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(keys(r), required(item));
        assert!(item["properties"]["status"]["enum"]
            .as_array()
            .unwrap()
            .contains(&r["status"]));
        assert!(item["properties"]["campaign"]["enum"]
            .as_array()
            .unwrap()
            .contains(&r["campaign"]));
    }
}
