use std::path::Path;
use std::process::{Command, Output};

fn rydberg(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rydberg")).current_dir(dir).args(args).output().expect("binary runs")
}

fn k2(dir: &Path) {
    std::fs::write(dir.join("k2.txt"), "0 1\n").unwrap();
}

#[test]
fn verify_k2_passes() {
    let d = tempfile::tempdir().unwrap();
    k2(d.path());
    let out = rydberg(d.path(), &["verify", "k2.txt"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stderr).trim(), "PASS");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["atoms"], 18);
    assert!(v["manifest"]["sha256"].as_str().unwrap().len() == 64);
}

#[test]
fn constants_table_rows() {
    let d = tempfile::tempdir().unwrap();
    let out = rydberg(d.path(), &["constants"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("0.490084"));
    assert!(text.contains("0.268031"));
    let json = rydberg(d.path(), &["constants", "--json", "--q", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert!(v["entries"].as_array().unwrap().len() > 10);
}

#[test]
fn pipeline_and_render_are_deterministic() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    k2(p);
    for args in [
        vec!["embed", "k2.txt", "-o", "d.json"],
        vec!["arrange", "d.json", "--k", "8", "--phi", "7", "-o", "l.json"],
        vec!["compile", "l.json", "-o", "i.json"],
        vec!["solve", "i.json", "-o", "s.json"],
        vec!["render", "instance", "i.json", "--svg", "a.svg"],
        vec!["render", "layout", "l.json", "--svg", "l.svg"],
    ] {
        let out = rydberg(p, &args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read_to_string(p.join("a.svg")).unwrap();
    assert_eq!(rydberg(p, &["render", "instance", "i.json", "--svg", "a.svg"]).status.code(), Some(0));
    assert_eq!(a, std::fs::read_to_string(p.join("a.svg")).unwrap());
    assert_eq!(a.matches("<circle").count(), 18);
    assert_eq!(a.matches("<line").count(), 17);
    assert!(a.contains("manifest sha256"));
    assert!(a.contains(r#"id="legend""#));

    let dec = rydberg(p, &["decode", "i.json", "s.json"]);
    assert_eq!(dec.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&dec.stdout).unwrap();
    assert_eq!(v["witness"].as_array().unwrap().len(), 1);
    assert_eq!(v["independent"], true);

    let first = rydberg(p, &["solve", "i.json"]);
    let second = rydberg(p, &["solve", "i.json"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn identical_invocations_match() {
    let d = tempfile::tempdir().unwrap();
    k2(d.path());
    let a = rydberg(d.path(), &["oracle-mis", "k2.txt", "--count"]);
    let b = rydberg(d.path(), &["oracle-mis", "k2.txt", "--count"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["size"], 1);
    assert_eq!(v["optimal_count"], 2);
}

#[test]
fn usage_errors_exit_two() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(rydberg(d.path(), &["bogus"]).status.code(), Some(2));
    assert_eq!(rydberg(d.path(), &["embed", "missing.txt"]).status.code(), Some(2));
    std::fs::write(d.path().join("k5.txt"), "0 1\n0 2\n0 3\n0 4\n").unwrap();
    let out = rydberg(d.path(), &["verify", "k5.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn infeasible_window_exits_one() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    k2(p);
    assert_eq!(rydberg(p, &["embed", "k2.txt", "-o", "d.json"]).status.code(), Some(0));
    assert_eq!(rydberg(p, &["arrange", "d.json", "--k", "8", "--phi", "1", "-o", "l.json"]).status.code(), Some(0));
    let out = rydberg(p, &["compile", "l.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("compile"));
}
