use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CHAIN: &str = "# the chain on three points\nn=3\n000\n001\n011\n111\n";

fn rtdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_chain() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.cc", CHAIN);
    let out = rtdim(&["analyze", &chain, "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vcd"], 1);
    assert_eq!(v["rtd"], 1);
    assert_eq!(v["td_max"], 2);
    assert_eq!(v["td_min"], 1);
    let tds: Vec<u64> = v["td"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["td"].as_u64().unwrap())
        .collect();
    assert_eq!(tds, [1, 2, 2, 1]);
    assert_eq!(v["maximal"], true);
    assert_eq!(v["intersection_closed"], true);
    assert_eq!(v["profile"]["3"], 4);

    let human = rtdim(&["analyze", &chain]);
    assert_eq!(code(&human), 0);
    assert!(stdout(&human).contains("rtd "));
}

#[test]
fn analyze_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.cc", CHAIN);
    let text = stdout(&rtdim(&["analyze", &chain, "--json"]));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "dup.cc", "n=3\n000\n001\n000\n");
    let out = rtdim(&["analyze", &dup]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());

    let missing = dir.path().join("absent.cc");
    assert_eq!(code(&rtdim(&["analyze", missing.to_str().unwrap()])), 2);
    let bad = write(dir.path(), "bad.cc", "n=3\n0a0\n");
    assert_eq!(code(&rtdim(&["construct", &bad])), 2);
}

#[test]
fn infeasible_parameters_exit_3() {
    assert_eq!(
        code(&rtdim(&[
            "search",
            "--n",
            "4",
            "--size",
            "6",
            "--vcd-cap",
            "1",
            "--max-evals",
            "5"
        ])),
        3
    );
    assert_eq!(
        code(&rtdim(&[
            "search",
            "--n",
            "4",
            "--size",
            "5",
            "--vcd-cap",
            "1"
        ])),
        3
    );
    assert_eq!(
        code(&rtdim(&[
            "random", "--n", "20", "--size", "10", "--trials", "1"
        ])),
        3
    );
    assert_eq!(code(&rtdim(&["bounds", "--d", "0"])), 3);
    assert_eq!(code(&rtdim(&["bounds", "--d", "1", "--alpha", "2.5"])), 3);
    assert_eq!(code(&rtdim(&["--threads", "0", "bounds", "--d", "1"])), 3);
}

#[test]
fn bounds_d1() {
    let out = rtdim(&["bounds", "--d", "1", "--json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["rtd_bound"].as_f64().unwrap() - 35.7422).abs() < 1e-3);
    assert_eq!(v["x_start"], 5);
    let ks: Vec<u64> = v["chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["k"].as_u64().unwrap())
        .collect();
    assert_eq!(ks, [7, 4, 4, 1]);

    let human = stdout(&rtdim(&["bounds", "--d", "1"]));
    assert!(human.contains("35.742"), "{human}");
}

#[test]
fn construct_teaches_the_concept() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.cc", CHAIN);
    let out = rtdim(&["construct", &chain, "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["trace"]["d"], 1);
    let size = v["teaching_set"]["instances"].as_array().unwrap().len() as f64;
    assert!(size <= v["trace"]["rtd_bound"].as_f64().unwrap());
}

#[test]
fn search_and_random_are_seeded() {
    let args = [
        "search",
        "--n",
        "5",
        "--size",
        "10",
        "--vcd-cap",
        "2",
        "--max-evals",
        "300",
        "--seed",
        "4",
        "--json",
    ];
    let a = stdout(&rtdim(&args));
    assert_eq!(a, stdout(&rtdim(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 4);
    assert_eq!(v["evaluations"], 300);
    assert!(v["vcd"].as_u64().unwrap() <= 2);

    let r = [
        "random", "--n", "6", "--size", "20", "--trials", "8", "--seed", "2", "--json",
    ];
    let single = stdout(&rtdim(
        &["--threads", "1"]
            .iter()
            .chain(&r)
            .copied()
            .collect::<Vec<_>>(),
    ));
    assert_eq!(single, stdout(&rtdim(&r)));
    let v: Value = serde_json::from_str(&single).unwrap();
    assert_eq!(v["trials"], 8);
}

#[test]
fn product_writes_a_class_file() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write(dir.path(), "chain.cc", CHAIN);
    let out_path = dir.path().join("prod.cc");
    let out = rtdim(&["product", &chain, &chain, "-o", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let analyzed = rtdim(&["analyze", out_path.to_str().unwrap(), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&analyzed)).unwrap();
    assert_eq!(
        (v["n"].as_u64(), v["size"].as_u64(), v["vcd"].as_u64()),
        (Some(6), Some(16), Some(2))
    );
    assert!(v["rtd"].as_u64().unwrap() <= 2);
}

#[test]
fn verify_corpus_directory() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "chain.cc", CHAIN);
    write(dir.path(), "square.cc", "n=2\n00\n01\n10\n11\n");
    write(dir.path(), "empty.cc", "n=4\n");
    let path = dir.path().to_str().unwrap();

    let out = rtdim(&["verify", path, "--pairs", "--json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("skipped empty.cc"));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 3);

    write(dir.path(), "broken.cc", "n=2\n00\n0\n");
    let out = rtdim(&["verify", path]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("broken.cc"));
    assert_eq!(code(&rtdim(&["verify", "/nonexistent/corpus"])), 2);
}
