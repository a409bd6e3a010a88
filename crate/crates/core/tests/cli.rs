use std::process::{Command, Output};

fn wdrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wdrc"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_json() {
    let o = wdrc(&["check", "13:1,3,9", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["types"], serde_json::json!([3]));
    assert_eq!(v["primitive"], true);
}

#[test]
fn check_failure_and_flags() {
    let o = wdrc(&["check", "24:1,7,10,13,19,22"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("not weakly distance-regular"));

    let o = wdrc(&["check", "12:1,7,10", "--scheme", "--sring", "--delta", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("intersection numbers")
            && out.contains("multiplier group")
            && out.contains("Δ_3")
    );
}

#[test]
fn construct_and_usage_errors() {
    let o = wdrc(&["construct", "C3xKh(h=4)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "12:1,7,10");
    assert_eq!(wdrc(&["construct", "Nope(x=1)"]).status.code(), Some(2));
    assert_eq!(wdrc(&["check", "12:0,1"]).status.code(), Some(2));
    assert_eq!(
        wdrc(&["classify", "--n-min", "3", "--n-max", "40"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(wdrc(&[]).status.code(), Some(2));
}

#[test]
fn classify_and_props() {
    let o = wdrc(&["classify", "--n-min", "3", "--n-max", "14", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"] == "exact-match"));

    let o = wdrc(&["props", "13:1,3,9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all pass"));
}
