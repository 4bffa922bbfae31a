use std::process::{Command, Output};

use serde_json::Value;

const B18: &str = r#"{"family":"binomial","n":18,"p":"1/2"}"#;
const HYP: &str = r#"{"family":"hypergeometric","B":21,"W":23,"n":22}"#;
const HYP_A: &str = r#"{"family":"hypergeometric","B":400,"W":509,"n":500}"#;
const HYP_B: &str = r#"{"family":"hypergeometric","B":310,"W":710,"n":700}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochord")).args(args).env_remove("STOCHORD_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn decide_ordered_pair() {
    let o = run(&["decide", B18, HYP]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["relation"], "le_st");
}

#[test]
fn decide_identical_specs() {
    let o = run(&["decide", B18, B18]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["relation"], "equal");
}

#[test]
fn decide_counterexample() {
    let o = run(&["decide", HYP_A, HYP_B]);
    let v = json(&o);
    assert_eq!(v["relation"], "incomparable");
    assert_eq!(v["witnesses"]["k_minus"], 44);
    assert_eq!(v["witnesses"]["k_plus"], 45);
}

#[test]
fn malformed_input_exits_2() {
    for bad in [r#"{"family":"binomial","n":0,"p":"1/2"}"#, "not json", r#"{"family":"gamma"}"#, r#"["0.1","0.9"]"#] {
        let o = run(&["decide", bad, B18]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(run(&["decide", B18, HYP, "--epsilon", "0"]).status.code(), Some(2));
}

#[test]
fn oracle_reports_crossings() {
    let v = json(&run(&["oracle", HYP_A, HYP_B]));
    assert_eq!(v["crossings"], serde_json::json!([45]));
    assert_eq!(v["mode"]["mode"], "exact");
}

#[test]
fn explain_counterexample_shows_ratio_table() {
    let o = run(&["explain", HYP, r#"{"family":"binomial","n":18,"p":"0.5106"}"#]);
    let text = stdout(&o);
    let row = text.lines().find(|l| l.trim_start().starts_with("13 ")).expect("row 13");
    assert!(row.trim_end().ends_with("2.049039"), "{row}");
    assert!(text.contains("half-monotone class member: no"));
}

#[test]
fn explain_names_closed_form_case() {
    let text = stdout(&run(&["explain", r#"{"family":"binomial","n":2,"p":"1/2"}"#, r#"{"family":"binomial","n":3,"p":"1/2"}"#]));
    assert!(text.contains("case binomial_binomial -> P <=st Q holds"));
    assert!(text.contains("left  1/4 >= 1/8"));
    assert!(text.contains("right 2 <= 3"));
}

#[test]
fn explain_bernoulli_vectors() {
    let text = stdout(&run(&["explain", r#"["0.9","0.1"]"#, r#"{"family":"binomial","n":2,"p":"0.7"}"#]));
    assert!(text.contains("bernoulli convolution: success products fails, failure products holds"));
    assert!(text.contains("single-mass criterion (zero mass): P <=st Q holds"));
}

#[test]
fn couple_explicit_boundary() {
    // 1 − √½ rounded up: decimals are read exactly, and rounding down would
    // fall just outside the ordered region.
    let q = r#"{"family":"binomial","n":4,"p":"0.2928932188134525"}"#;
    let o = run(&["couple", r#"{"family":"binomial","n":2,"p":"1/2"}"#, q, "--method", "explicit", "--samples", "20000"]);
    assert_eq!(o.status.code(), Some(0));
    let out = lines(&o);
    assert_eq!(out.len(), 20_001);
    assert_eq!(out[0]["i"], 0);
    let footer = out.last().unwrap();
    assert_eq!(footer["violations"], 0);
    assert!(footer["chi2_p_x1"].as_f64().unwrap() > 1e-3);
}

#[test]
fn couple_quantile_identical_laws() {
    let p = r#"{"family":"poisson","lambda":"3"}"#;
    let out = lines(&run(&["couple", p, p, "--method", "quantile", "--samples", "500"]));
    assert!(out[..500].iter().all(|s| s["x1"] == s["x2"]));
}

#[test]
fn couple_levy_geometric_pair() {
    let o = run(&[
        "couple",
        r#"{"family":"negbinomial","r":1,"p":"0.6"}"#,
        r#"{"family":"negbinomial","r":1,"p":"0.5"}"#,
        "--method",
        "levy",
        "--samples",
        "100000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let footer = lines(&o).pop().unwrap();
    assert_eq!(footer["violations"], 0);
    assert!(footer["chi2_p_x1"].as_f64().unwrap() > 1e-3);
    assert!(footer["chi2_p_x2"].as_f64().unwrap() > 1e-3);
}

#[test]
fn couple_is_reproducible_and_seeded() {
    let args = ["couple", B18, HYP, "--method", "quantile", "--samples", "50"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let seeded = Command::new(env!("CARGO_BIN_EXE_stochord")).args(args).env("STOCHORD_SEED", "99").output().unwrap();
    assert_ne!(seeded.stdout, a.stdout);
    let explicit = run(&[&args[..], &["--seed", "99"]].concat());
    assert_eq!(seeded.stdout, explicit.stdout);
}

#[test]
fn couple_writes_to_file() {
    let path = std::env::temp_dir().join(format!("stochord-couple-{}.jsonl", std::process::id()));
    let path_s = path.to_str().unwrap();
    let o = run(&["couple", B18, HYP, "--method", "quantile", "--samples", "10", "--output", path_s]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 11);
    std::fs::remove_file(path).ok();
}

#[test]
fn couple_precondition_failure_names_condition() {
    let o = run(&[
        "couple",
        r#"{"family":"binomial","n":3,"p":"1/2"}"#,
        r#"{"family":"binomial","n":2,"p":"9/10"}"#,
        "--method",
        "explicit",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n1 <= n2"));
    let o = run(&["couple", B18, HYP, "--method", "levy"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_derivatives_suite() {
    let o = run(&["verify", "--suite", "derivatives"]);
    assert_eq!(o.status.code(), Some(0));
    let out = lines(&o);
    assert_eq!(out[0]["id"], 8);
    assert_eq!(out[0]["passed"], true);
    assert_eq!(out[1]["failed"], 0);
}

#[test]
fn verify_reports_every_criterion_of_a_suite() {
    let o = run(&["verify", "--suite", "counterexamples"]);
    let out = lines(&o);
    assert_eq!(out.len(), 4);
    let ids: Vec<_> = out[..3].iter().map(|v| v["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [1, 2, 3]);
    let failed = out[3]["failed"].as_u64().unwrap();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}

#[test]
fn verify_unknown_suite_exits_2() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
