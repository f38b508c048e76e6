use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cheegerkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_emits_graph_with_metadata() {
    let out = run(&["build", "cayleysum:zn:5:1,4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["n"], 5);
    let edges: Vec<(u64, u64)> = serde_json::from_value(v["edges"].clone()).unwrap();
    assert!(edges.contains(&(2, 2)) && edges.contains(&(3, 3)));
    assert_eq!(v["metadata"]["class"], "cayley-sum");
    assert_eq!(v["metadata"]["regular_degree"], 2);
}

#[test]
fn constants_render_exact_fractions() {
    let out = run(&["constants", "cycle:5", "--which", "h_out,h_out_sigma,h_sym_sigma,beta"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let value = |name: &str| {
        v["constants"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .map(|c| c["value"].clone())
            .unwrap()
    };
    assert_eq!(value("h_out"), "1");
    assert_eq!(value("h_out_sigma"), "1/4");
    assert_eq!(value("h_sym_sigma"), "3/4");
    assert_eq!(value("beta"), "1/5");
    let c6 = json(&run(&["constants", "cycle:6", "--which", "h"]));
    assert_eq!(c6["constants"][0]["value"], "1/3");
}

#[test]
fn constants_report_cap_exceeded() {
    let out = run(&["constants", "cycle:12", "--which", "beta", "--tripartition-cap", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["constants"][0]["status"], "cap-exceeded");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "petersen"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "cayley:zn:5:1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "cycle:5", "--ids", "NOPE"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "cycle:5", "--tol", "0.5"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["verify", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = run(&[
        "verify",
        "cayley:zn:5:1,4",
        "--ids",
        "THM11_UPPER",
        "--override",
        "h_out=10",
        "--counterexample-dir",
        path_str(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdicts"][0]["status"], "fail");
    let written: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("counterexample-"))
        .collect();
    assert_eq!(written.len(), 1);
    let replay = run(&["verify", path_str(&written[0])]);
    assert_eq!(replay.status.code(), Some(1));
}

#[test]
fn json_and_csv_agree() {
    let args = ["verify", "cycle:7", "--ids", "ALON,BHT,THM51,KEY1,LEM31"];
    let j = json(&run(&args));
    let csv_out = run(&[&args[..], &["--format", "csv"]].concat());
    assert_eq!(csv_out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(csv_out.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let verdicts = j["verdicts"].as_array().unwrap();
    assert_eq!(rows.len(), verdicts.len());
    let text = |v: &Value| match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    for (row, v) in rows.iter().zip(verdicts) {
        assert_eq!(&row[1], v["id"].as_str().unwrap());
        assert_eq!(&row[2], v["status"].as_str().unwrap());
        for (i, key) in [(3, "lhs"), (5, "margin")] {
            assert_eq!(row[i], text(&v[key]), "{key} of {}", &row[1]);
        }
        if let Some(r) = v.get("rhs").filter(|r| !r.is_object()) {
            assert_eq!(row[4], text(r));
        }
    }
}

#[test]
fn build_then_load_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d4.json");
    let out = run(&["build", "cayley:dn:4:s,sr1,sr2,sr3", "--out", path_str(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let direct = json(&run(&[
        "constants",
        "cayley:dn:4:s,sr1,sr2,sr3",
        "--which",
        "h_out,beta_out",
    ]));
    let loaded = json(&run(&["constants", path_str(&file), "--which", "h_out,beta_out"]));
    for i in 0..2 {
        assert_eq!(direct["constants"][i]["value"], loaded["constants"][i]["value"]);
    }
    let v = json(&run(&["verify", path_str(&file), "--ids", "THM51"]));
    assert_eq!(v["instance"]["class"], "cayley");
    assert_eq!(v["verdicts"][0]["status"], "not-applicable");
}

#[test]
fn scan_reports_and_resumes() {
    let out = run(&["scan", "cycle:{n}", "--from", "5", "--to", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let args = [
        "scan",
        "cayley:zn:{n}:1,-1",
        "--from",
        "3",
        "--to",
        "9",
        "--step",
        "2",
        "--ids",
        "THM51,ALON",
        "--checkpoint",
        path_str(&ck),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let a = json(&first);
    assert_eq!(a["instances"].as_array().unwrap().len(), 4);
    assert_eq!(a["per_id"]["THM51"]["counts"]["pass"], 4);
    assert_eq!(a["per_id"]["THM51"]["min_margin"], "-98");
    assert!(ck.exists());
    let second = json(&run(&args));
    assert_ne!(second["resumed"], Value::from(0));
    assert_eq!(a["per_id"], second["per_id"]);
}

#[test]
fn signature_and_measure_flags() {
    let out = run(&["verify", "cycle:8", "--sigma", "random:3", "--ids", "SANDWICH_SIGNED"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["instance"]["signature"], "random:3");
    let dir = tempfile::tempdir().unwrap();
    let pi = dir.path().join("pi.json");
    std::fs::write(&pi, "[1, 2, 1, 2, 1]").unwrap();
    let v = json(&run(&[
        "verify",
        "cycle:5",
        "--pi",
        path_str(&pi),
        "--ids",
        "LEM31,PROP31",
    ]));
    assert_eq!(v["instance"]["measure"], "custom");
    assert_eq!(v["verdicts"][0]["status"], "not-applicable");
    assert_eq!(v["verdicts"][1]["status"], "pass");
}
