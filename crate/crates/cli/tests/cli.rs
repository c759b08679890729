use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochschild"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn dim_table() {
    let o = run(&["dim", "--a", "2", "--b", "3", "--char", "0", "--max-degree", "4", "--weight-min", "-15", "--weight-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(r#"{"m":2,"n":-6,"dim":1}"#));
    assert!(text.starts_with(r#"{"params":"#));
    let v = json(&o);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["params", "case", "results", "checks"]);
    assert_eq!(v["case"], "CaseI");
    assert_eq!(v["results"].as_array().unwrap().len(), 5 * 24);
}

#[test]
fn char_two_square() {
    let o = run(&["cup", "--a", "2", "--b", "3", "--char", "2", "--left", "e1:q=0:alpha=0", "--right", "e1:q=0:alpha=0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["results"]["product"][0]["label"], "t:q=1:alpha=0");
    assert_eq!(v["results"]["product"][0]["coefficient"], "1");
    assert_eq!(v["results"]["product"].as_array().unwrap().len(), 1);
}

#[test]
fn odd_square_vanishes_in_characteristic_zero() {
    let o = run(&["cup", "--a", "2", "--b", "3", "--left", "oddpair:q=0:alpha=6", "--right", "oddpair:q=0:alpha=6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["results"]["product"], serde_json::json!([]));
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--a", "3", "--b", "4", "--char", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["results"]["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--a", "2", "--b", "5", "--char", "5"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn swapped_pair_is_reported() {
    let o = run(&["basis", "--a", "3", "--b", "2", "--char", "2", "--max-degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["case"], "CaseII_dividesB");
    assert_eq!((v["params"]["working_a"].as_i64(), v["params"]["working_b"].as_i64()), (Some(2), Some(3)));
    assert_eq!((v["params"]["a"].as_i64(), v["params"]["b"].as_i64()), (Some(3), Some(2)));
}

#[test]
fn hilbert_reports_both_variants() {
    let o = run(&["hilbert", "--a", "2", "--b", "3", "--char", "2", "--max-degree", "2", "--weight-min", "-6", "--weight-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["results"]["comparison"]["matching"], serde_json::json!(["minus-b"]));
    let minus_b = v["results"]["series"]["minus-b"].as_array().unwrap();
    assert!(minus_b.contains(&serde_json::json!([1, -3, 1])));
    let minus_a = &v["results"]["comparison"]["comparisons"][0];
    assert_eq!(minus_a["variant"], "minus-a");
    assert_eq!(minus_a["mismatches"][0], serde_json::json!({"m": 1, "n": -3, "series": 0, "count": 1}));
    let only = run(&["hilbert", "--a", "2", "--b", "3", "--char", "2", "--max-degree", "1", "--variant", "minus-a"]);
    let keys: Vec<String> = json(&only)["results"]["series"].as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["minus-a"]);
}

#[test]
fn present_lists_relations() {
    let o = run(&["present", "--a", "2", "--b", "3", "--max-degree", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("X2^2 - X1^3"));
    assert!(text.contains("presentation is isomorphic to HH*: pass"));
}

#[test]
fn invalid_configurations_exit_two() {
    for args in [
        &["dim", "--a", "2", "--b", "4"][..],
        &["dim", "--a", "1", "--b", "3"],
        &["dim", "--a", "2", "--b", "3", "--char", "4"],
        &["dim", "--a", "2", "--b", "3", "--weight-min", "5", "--weight-max", "1"],
        &["cup", "--a", "2", "--b", "3", "--left", "t:q=1:alpha=3", "--right", "unit:q=0:alpha=0"],
        &["cup", "--a", "2", "--b", "3", "--left", "nonsense", "--right", "unit:q=0:alpha=0"],
        &["dim", "--a", "2"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}
