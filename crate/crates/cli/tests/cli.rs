use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const A3: &str = r#"{"vertices":3,"arrows":[{"id":"a1","from":1,"to":2,"kind":"full"},{"id":"a2","from":3,"to":2,"kind":"dashed"}]}"#;
const A2: &str = r#"{"vertices":2,"arrows":[{"id":"a","from":1,"to":2,"kind":"dashed"}]}"#;

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("biquiver-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.0.join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biquiver")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_and_roots() {
    let s = Scratch::new("classify");
    let a3 = s.file("a3.json", A3);
    let out = run(&["classify", &a3]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"definiteness":"PositiveDefinite","diagram":"A3","kind":"Finite"}"#);
    let a2 = s.file("a2.json", A2);
    let out = run(&["roots", &a2, "--value", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "[[0,1],[1,0],[1,1]]");

    let kron = s.file("k.json", r#"{"vertices":2,"arrows":[{"id":"x","from":1,"to":2,"kind":"full"},{"id":"y","from":1,"to":2,"kind":"dashed"}]}"#);
    assert_eq!(run(&["roots", &kron, "--value", "0"]).status.code(), Some(3));
    assert_eq!(ok_json(&["roots", &kron, "--value", "0", "--bound", "2"]), serde_json::json!([[1, 1], [2, 2]]));
    assert_eq!(ok_json(&["tits", &kron])["radical"], serde_json::json!([1, 1]));
}

#[test]
fn exit_codes() {
    let s = Scratch::new("exit");
    let disc = s.file("d.json", r#"{"vertices":2,"arrows":[]}"#);
    assert_eq!(run(&["classify", &disc]).status.code(), Some(3));
    let comps = ok_json(&["classify", &disc, "--components"]);
    assert_eq!(comps["components"].as_array().unwrap().len(), 2);
    assert_eq!(comps["components"][1]["vertices"], serde_json::json!([2]));

    let bad = s.file("bad.json", r#"{"vertices":2,"arrows":[{"id":"a","from":3,"to":1,"kind":"full"}]}"#);
    assert_eq!(run(&["classify", &bad]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["roots", &disc, "--value", "5"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn conjugate_and_eliminate() {
    let s = Scratch::new("conj");
    let a3 = s.file("a3.json", A3);
    let g = ok_json(&["conjugate", &a3, "--vertex", "3"]);
    assert!(g["arrows"].as_array().unwrap().iter().all(|a| a["kind"] == "full"));
    let plan = ok_json(&["eliminate", &a3]);
    assert_eq!(plan["possible"], true);
    assert_eq!(plan["vertices"], serde_json::json!([3]));

    let lp = s.file("lp.json", r#"{"vertices":2,"arrows":[{"id":"a1","from":1,"to":2,"kind":"full"},{"id":"a2","from":2,"to":2,"kind":"dashed"}]}"#);
    let no = ok_json(&["eliminate", &lp]);
    assert_eq!(no["possible"], false);
    assert_eq!(no["obstruction"]["reason"], "dashed_loop");
    assert_eq!(no["obstruction"]["vertex"], 2);
    assert_eq!(run(&["conjugate", &a3, "--vertex", "4"]).status.code(), Some(2));
}

#[test]
fn iso_and_decompose_certificates_reverify() {
    let s = Scratch::new("iso");
    let a3 = s.file("a3.json", A3);
    let x = run(&["rep", "random", &a3, "--dims", "1,2,1", "--bound", "4", "--seed", "1"]);
    let y = run(&["rep", "random", &a3, "--dims", "1,2,1", "--bound", "4", "--seed", "2"]);
    let xf = s.file("x.json", &String::from_utf8(x.stdout).unwrap());
    let yf = s.file("y.json", &String::from_utf8(y.stdout).unwrap());
    assert_eq!(ok_json(&["rep", "validate", &a3, &xf])["dims"], serde_json::json!([1, 2, 1]));

    let args = ["rep", "iso", &a3, &xf, &yf, "--trials", "8", "--seed", "7"];
    let first = run(&args);
    assert_eq!(first.stdout, run(&args).stdout, "output must be deterministic");
    let iso: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(iso["verdict"], "Yes");
    let cert = s.file("iso.json", &iso.to_string());
    assert_eq!(ok_json(&["rep", "verify", &a3, &xf, &cert, &yf])["valid"], true);
    assert_eq!(ok_json(&["rep", "verify", &a3, &yf, &cert, &xf])["valid"], false);

    let d = ok_json(&["rep", "decompose", &a3, &xf]);
    assert_eq!(d["summands"].as_array().unwrap().len(), 2);
    let df = s.file("d.json", &d.to_string());
    assert_eq!(ok_json(&["rep", "verify", &a3, &xf, &df])["valid"], true);

    let sum = run(&["rep", "sum", &a3, &xf, &yf]);
    let sf = s.file("s.json", &String::from_utf8(sum.stdout).unwrap());
    assert_eq!(ok_json(&["rep", "decompose", &a3, &sf])["summands"].as_array().unwrap().len(), 4);
    assert!(ok_json(&["rep", "hom", &a3, &xf, &yf])["dim"].as_u64().unwrap() >= 2);
}

#[test]
fn gadgets() {
    let s = Scratch::new("gadget");
    let p = s.file("p.json", r#"[[["1","0"]]]"#);
    let q = s.file("q.json", r#"[[["0","0"]]]"#);
    let g1 = ok_json(&["gadget", "g1", "--p", &p, "--q", &q]);
    assert_eq!(g1["representation"]["dims"], serde_json::json!([2, 1]));
    let g4 = ok_json(&["gadget", "g4", "--p", &p, "--q", &q]);
    assert_eq!(g4["representation"]["dims"], serde_json::json!([4]));

    let tri = s.file(
        "tri.json",
        r#"{"vertices":3,"arrows":[{"id":"a1","from":1,"to":2,"kind":"full"},{"id":"a2","from":2,"to":3,"kind":"full"},{"id":"a3","from":3,"to":1,"kind":"full"}]}"#,
    );
    let m = s.file("m.json", r#"[[["0","0"],["1","0"]],[["0","0"],["0","0"]]]"#);
    let c = ok_json(&["gadget", "cycle", &tri, "--matrix", &m, "--cycle", "a1,a2,a3"]);
    assert_eq!(c["representation"]["dims"], serde_json::json!([2, 2, 2]));
    let rect = s.file("r.json", r#"[[["1","0"],["1","0"]]]"#);
    assert_eq!(run(&["gadget", "cycle", &tri, "--matrix", &rect]).status.code(), Some(2));
}
