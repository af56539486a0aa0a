use std::path::Path;
use std::process::{Command, Output};

use morreylab::cli::RunConfig;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_morreylab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn morreylab")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn corpus(dir: &Path) -> String {
    let out = dir.join("c");
    assert_eq!(code(&["corpus", "--level", "6", "--count", "3", "--out", out.to_str().unwrap()]), 0);
    out.to_str().unwrap().to_string()
}

#[test]
fn corpus_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(format!("{c}/corpus.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 2024);
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 3);
    for e in manifest["inputs"].as_array().unwrap() {
        assert!(Path::new(&c).join(e["file"].as_str().unwrap()).exists());
    }
}

#[test]
fn op_and_norm() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let input = format!("{c}/input_bump0.csv");
    let sym = format!("{c}/symbol_log0.csv");
    let out = dir.path().join("o.csv");
    let out = out.to_str().unwrap();
    assert_eq!(code(&["op", "ialpha", "--in", &input, "--alpha", "0.3", "--out", out]), 0);
    assert_eq!(code(&["op", "commutator", "--in", &input, "--b", &sym, "--alpha", "0.3"]), 0);
    for name in ["m", "mfrac", "mdelta", "msharp"] {
        assert_eq!(code(&["op", name, "--in", &input, "--beta", "0.2", "--r", "1.5"]), 0, "{name}");
    }
    assert_eq!(code(&["op", "mw", "--in", &input, "--w", "power:x0=0,gamma=-0.3"]), 0);
    let r = run(&["norm", "--space", "morrey:p=2,kappa=0.25", "--in", out]);
    assert_eq!(r.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert!(v["value"].as_f64().unwrap() > 0.0);
    assert_eq!(code(&["norm", "--space", "osc:beta=0,p=2,w=power:x0=0,gamma=-0.3", "--in", &sym]), 0);
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let c = corpus(dir.path());
    let input = format!("{c}/input_bump0.csv");
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["op", "bogus", "--in", &input]), 2);
    assert_eq!(code(&["op", "ialpha", "--in", &input, "--alpha", "1.5"]), 2);
    assert_eq!(code(&["op", "ialpha", "--in", &input]), 2);
    let s = bin().env("MORREYLAB_THREADS", "zero").args(["corpus", "--out", "x"]).status().unwrap();
    assert_eq!(s.code(), Some(2));
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn parse_and_io_errors_exit_3() {
    assert_eq!(code(&["norm", "--space", "morrey:p=2,kappa=0.25", "--in", "/nonexistent/f.csv"]), 3);
    assert_eq!(code(&["norm", "--space", "morrey:p=2", "--in", "x.csv"]), 3);
    assert_eq!(code(&["verify", "--id", "THM9"]), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "not,a,grid\n").unwrap();
    assert_eq!(code(&["op", "m", "--in", bad.to_str().unwrap()]), 3);
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "id = THM1\nweight = sampled:/nonexistent/w.csv\n").unwrap();
    assert_eq!(code(&["verify", "--config", cfg.to_str().unwrap()]), 3);
}

#[test]
fn weights_and_oracle() {
    assert_eq!(code(&["weights", "--w", "power:x0=0,gamma=-0.4", "--class", "ap", "--p", "1", "--level", "9"]), 0);
    assert_eq!(code(&["weights", "--w", "power:x0=0,gamma=-0.5", "--class", "rh", "--r", "3"]), 4);
    let r = run(&["weights", "--w", "power:x0=0,gamma=0.3", "--class", "ap", "--p", "1", "--oracle"]);
    assert_eq!(r.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(v["oracle"], false);
    assert_eq!(v["agree"], true);
    // a tiny positive exponent grows too slowly per refinement to be told apart from a member
    assert_eq!(code(&["weights", "--w", "power:x0=0,gamma=0.01", "--class", "ap", "--p", "1", "--oracle"]), 5);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&["verify", "--id", "L3.2", "--levels", "7,8", "--count", "4", "--out", out]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["id"], "L3.2");
    assert_eq!(code(&["verify", "--id", "P3.7", "--levels", "7,8", "--count", "3", "--r", "1.2"]), 0);
    assert_eq!(code(&["verify", "--id", "THM1", "--kappa", "0.6"]), 6);
    assert_eq!(code(&["verify", "--id", "THM1", "--gamma", "-0.6", "--levels", "6,7", "--count", "2"]), 6);
    assert_eq!(code(&["verify", "--id", "THM1", "--levels", "7,8", "--count", "6"]), 7);

    let cfg = dir.path().join("run.cfg");
    let c = RunConfig { levels: vec![7, 8], count: 4, ..RunConfig::default() };
    std::fs::write(&cfg, format!("# run\n{}", c.emit())).unwrap();
    assert_eq!(code(&["verify", "--config", cfg.to_str().unwrap(), "--id", "L3.4"]), 0);
}
