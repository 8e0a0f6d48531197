use std::process::{Command, Output};

fn qsw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsw")).args(args).output().expect("run qsw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

#[test]
fn list_shows_registry_and_errata_on_request() {
    let plain = stdout(&qsw(&["list"]));
    assert!(plain.lines().count() >= 30);
    assert!(plain.contains("I-GARRETT"));
    assert!(!plain.contains("E-RQ-DIFFEQ"));
    let all = stdout(&qsw(&["list", "--errata"]));
    assert!(all.contains("E-RQ-DIFFEQ"));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(qsw(&["verify", "I-RR1", "--qmax", "30"]).status.code(), Some(0));
    assert_eq!(qsw(&["verify", "E-RQ-DIFFEQ"]).status.code(), Some(1));
    assert_eq!(qsw(&["verify", "E-T4-2PROD-BY1"]).status.code(), Some(2));
    assert_eq!(qsw(&["verify", "NO-SUCH-ID"]).status.code(), Some(2));
    assert_eq!(qsw(&["verify", "I-POCH-1", "--bind", "x=1/2"]).status.code(), Some(2));
    assert_eq!(qsw(&["verify", "I-POCH-1", "--cap", "a=-1"]).status.code(), Some(2));
    assert_eq!(qsw(&["verify", "I-POCH-1", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(qsw(&["bogus"]).status.code(), Some(2));
}

#[test]
fn verify_json_is_stable_and_ordered() {
    let args = ["verify", "T4-BY1", "--json", "--no-timing", "--seed", "7"];
    let a = qsw(&args);
    let b = qsw(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with(r#"{"id":"T4-BY1","pass":true,"convention":"signed","caps":{"#));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["bindings"].as_array().unwrap().len(), 5);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn failing_json_has_witness() {
    let o = qsw(&["verify", "E-RQ-DIFFEQ", "--json", "--no-timing"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["witness"]["monomial"], "z");
    assert_eq!(v["witness"]["lhs"], "0/1");
    assert_eq!(v["witness"]["rhs"], "1/1");
}

#[test]
fn bindings_and_caps_from_the_command_line() {
    let o = qsw(&["verify", "T4-BY1", "--bind", "y=2/3", "--cap", "a=3", "--json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bindings"][0]["y"], "2/3");
    assert_eq!(v["bindings"][0]["b"], "3/2");
    assert_eq!(v["caps"]["a"], 3);
}

#[test]
fn printed_convention_is_refuted() {
    let o = qsw(&["verify", "I-GARRETT", "--convention", "printed", "--no-timing"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL I-GARRETT [printed] at k:"));
}

#[test]
fn eval_outputs() {
    let rs = stdout(&qsw(&["eval", "sw-star", "--n", "2"]));
    assert_eq!(rs.trim(), "x^2 + q*x*y + q^2*x*y + q^4*y^2");
    let rq = stdout(&qsw(&["eval", "rq", "--n", "1", "--qmax", "6"]));
    assert_eq!(rq.trim(), "1 + q^2 + q^3 + q^4 + q^5 + 2*q^6");
    assert_eq!(stdout(&qsw(&["eval", "garrett-b", "--n", "3"])).trim(), "1 + q");
    let json = stdout(&qsw(&["eval", "garrett-a", "--n", "4", "--json"]));
    serde_json::from_str::<serde_json::Value>(&json).unwrap();
}

#[test]
fn garrett_convention_report() {
    let o = qsw(&["garrett-convention"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("printed form disagrees first at k = 1"));
    assert!(text.contains("selected convention: signed"));
    let json = stdout(&qsw(&["garrett-convention", "--kmax", "4", "--json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["report"]["convention"], "signed");
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn errata_are_all_refuted() {
    let o = qsw(&["errata", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12/12 printed variants refuted"));
}

#[test]
fn verify_all_passes() {
    let o = qsw(&["verify", "all", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert!(text.trim_end().ends_with("41/41 passed"));
}
