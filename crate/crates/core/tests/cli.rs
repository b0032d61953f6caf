use std::path::PathBuf;
use std::process::Command;

use saut_morse::serial::GraphDocument;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_saut-morse"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("saut-morse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr))
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["selftest"]).0, 0);
    assert_eq!(run(&["check-links", "--max-rank", "2", "--max-vertices", "3"]).0, 0);
    // a cell bijection fails at n = 0 where the basepoint would drop to valency one
    assert_eq!(run(&["stability", "--map", "mu", "-n", "0", "-m", "2", "-k", "1"]).0, 1);
    assert_eq!(run(&["enumerate", "-n", "3", "-m", "1", "-k", "4", "--budget-cells", "3"]).0, 2);
    assert_eq!(run(&["enumerate", "--mode", "generalized"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn enumerate_report_holds_valid_graphs() {
    let path = scratch("enumerate.json");
    let (code, text) = run(&["enumerate", "-n", "1", "-m", "1", "-k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{text}");
    assert!(text.starts_with("5 classes"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["command"], "enumerate");
    assert_eq!(report["passed"], true);
    assert_eq!(report["result"]["count"], 5);
    for entry in report["result"]["graphs"].as_array().unwrap() {
        let doc: GraphDocument = serde_json::from_value(entry["graph"].clone()).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!((g.rank(), g.num_cycles()), (2, 1));
    }
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for p in [&a, &b] {
        let (code, _) = run(&["orbit-homology", "-n", "2", "-m", "1", "-k", "2", "--decoration", "pure", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (sa, sb) = (std::fs::read_to_string(&a).unwrap(), std::fs::read_to_string(&b).unwrap());
    assert_eq!(sa, sb);
    assert!(!sa.contains("wall"));
}

#[test]
fn failing_stability_report_is_marked_failed() {
    let path = scratch("stability.json");
    let (code, _) = run(&["stability", "--map", "mu", "-n", "0", "-m", "2", "-k", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], false);
}
