use std::process::{Command, Output};

use serde_json::Value;

fn syz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syz")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn scroll_of_a_quadric_surface() {
    let out = syz(&["scroll", "--exponents", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let strand = &r["results"]["scroll_1_1"]["strand"];
    assert_eq!(strand[0]["p"], 1);
    assert_eq!(strand[0]["k_p1"], 1);
}

#[test]
fn genus_four_has_one_quadric() {
    let dir = std::env::temp_dir().join(format!("syz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("betti.csv");
    let out = syz(&["betti", "--genus", "4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let table = r["results"]["betti"]["table"].as_array().unwrap();
    assert!(table.iter().any(|row| row == &serde_json::json!([1, 1, 1])));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("p,q,dim\n") && text.contains("\n1,1,1\n"));
}

#[test]
fn no_pencils_below_the_gonality() {
    let out = syz(&["pencils", "--genus", "8", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let s = &r["results"]["pencils_d4"]["search"];
    assert_eq!(s["complete"], true);
    assert!(s["pencils"].as_array().unwrap().is_empty());
}

#[test]
fn odd_genus_suite_is_a_config_error() {
    assert_eq!(syz(&["suite", "--genus", "7"]).status.code(), Some(4));
    assert_eq!(syz(&["betti", "--koszul-prime", "100"]).status.code(), Some(4));
    assert_eq!(syz(&["scroll", "--exponents", "1,2"]).status.code(), Some(4));
}

#[test]
fn exhausted_budget_still_writes_a_report() {
    let out = syz(&["betti", "--budget-secs", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["status"], "budget_exceeded");
    assert_eq!(r["halted_at"], "betti");
}

#[test]
fn genus_six_suite_is_reproducible() {
    let a = syz(&[
        "suite",
        "--genus",
        "6",
        "--seed",
        "1",
        "--pairs",
        "1",
        "--samples",
        "10",
    ]);
    let b = syz(&[
        "suite",
        "--genus",
        "6",
        "--seed",
        "1",
        "--pairs",
        "1",
        "--samples",
        "10",
    ]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let (mut ra, mut rb) = (report(&a), report(&b));
    assert_eq!(ra["verdicts"]["gsc.p2.span"], true);
    ra.as_object_mut().unwrap().remove("timing");
    rb.as_object_mut().unwrap().remove("timing");
    assert_eq!(ra, rb);
}

#[test]
fn curve_spec_file_is_embedded() {
    let dir = std::env::temp_dir().join(format!("syz-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.json");
    std::fs::write(
        &path,
        r#"{"genus": 5, "modulus": 101, "seed": 3, "mode": "random_pairs"}"#,
    )
    .unwrap();
    let out = syz(&["betti", "--curve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["config"]["genus"], 5);
    assert_eq!(r["curves"][0]["spec"]["modulus"], 101);
    assert_eq!(r["curves"][0]["pairs"].as_array().unwrap().len(), 5);
}
