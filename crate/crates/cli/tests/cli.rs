use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diagdecomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("structured error")
}

const HQ: &str = r#"{"ring":"hq","rows":3,"cols":3,"entries":[
  [["0","1","0","0"],["1","0","0","0"],["0","0","0","1"]],
  [["2","0","0","0"],["0","0","1","0"],["1/2","0","0","0"]],
  [["0","0","0","0"],["1","1","1","1"],["3","0","0","0"]]]}"#;

#[test]
fn decompose_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HQ);
    for (mode, strategy) in [("sum", "auto"), ("product", "char-ne2"), ("product", "central-rich")] {
        let c = dir.path().join(format!("{mode}-{strategy}.json"));
        let o = bin(&["decompose", "--mode", mode, "--ring", "hq", "--input", &a, "--out", c.to_str().unwrap(), "--strategy", strategy]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v = bin(&["verify", c.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0));
        let report: Value = serde_json::from_slice(&v.stdout).unwrap();
        assert_eq!(report["parts"], 2);
    }
}

#[test]
fn tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HQ);
    let c = dir.path().join("c.json");
    bin(&["decompose", "--mode", "sum", "--ring", "hq", "--input", &a, "--out", c.to_str().unwrap()]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&c).unwrap()).unwrap();
    doc["parts"][1]["diag"][0] = serde_json::json!(["7", "0", "0", "0"]);
    let bad = write(dir.path(), "bad.json", &doc.to_string());
    assert_eq!(bin(&["verify", &bad]).status.code(), Some(1));
}

#[test]
fn gf2_nonsingular_product_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "g.json", r#"{"ring":"gf2","rows":2,"cols":2,"entries":[[1,1],[0,1]]}"#);
    let o = bin(&["decompose", "--mode", "product", "--ring", "gf2", "--input", &a]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "gf2-nonsingular-unreachable");
}

#[test]
fn usage_errors() {
    let o = bin(&["decompose", "--ring", "hq"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "usage");
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", HQ);
    let o = bin(&["decompose", "--mode", "sum", "--ring", "gf3", "--input", &a]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["decompose", "--mode", "squares", "--ring", "hq", "--input", &a]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "unsupported-ring");
    let junk = write(dir.path(), "junk.json", "{not json");
    assert_eq!(bin(&["verify", &junk]).status.code(), Some(2));
}

#[test]
fn waring_modes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "h.json",
        r#"{"ring":"hf","rows":2,"cols":2,"entries":[[[0.5,1,0,0],[1,0,0,-2]],[[2,0,0,0],[0,0,1,0]]]}"#,
    );
    let runs: [&[&str]; 4] = [
        &["--mode", "waring-sum", "--k", "3"],
        &["--mode", "waring-product", "--k", "5"],
        &["--mode", "lincomb", "--ks", "2,5", "--coeffs", "-1,3.14159"],
        &["--mode", "squares"],
    ];
    for (i, extra) in runs.iter().enumerate() {
        let c = dir.path().join(format!("w{i}.json"));
        let mut args = vec!["decompose", "--ring", "hf", "--input", &a, "--out", c.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = bin(&args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(bin(&["verify", c.to_str().unwrap()]).status.code(), Some(0));
    }
}

#[test]
fn sharpness_tables() {
    let o = bin(&["sharpness", "--field", "gf2", "--n", "2", "--mode", "sum", "--jobs", "2"]);
    assert!(o.status.success());
    let t: Value = serde_json::from_slice(&o.stdout).unwrap();
    let max = t["histogram"].as_object().unwrap().keys().map(|k| k.parse::<u32>().unwrap()).max();
    assert_eq!(max, Some(3));
    let o = bin(&["sharpness", "--field", "gf3", "--n", "4", "--mode", "sum"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "too-large");
    let o = bin(&["sharpness", "--field", "gf2", "--n", "1", "--mode", "product", "--format", "csv"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("ring,n,mode,width,count"));
}

#[test]
fn roundtrip_all_rings() {
    let o = bin(&["roundtrip", "--count", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rings"].as_array().unwrap().len(), 7);
}
