mod common;

use std::path::Path;
use std::process::{Command, Output};

use detmax::cli::{self, InstanceFile, RoundingMethod, SolveOptions, SCHEMA_VERSION};
use detmax::instances;
use detmax::matroid::Matroid;
use tempfile::TempDir;

fn detmax(args: &[&str]) -> Output {
    detmax_env(args, &[])
}

fn detmax_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_detmax"));
    cmd.args(args).env_remove("DETMAX_ENUM_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

#[test]
fn instance_files_round_trip() {
    let inst = instances::gen_experimental_design(6, 2, Matroid::partition(vec![0, 0, 1, 1, 2, 2], vec![1, 1, 1]), 3).unwrap();
    let file = InstanceFile::from_instance(&inst);
    assert_eq!(file.schema_version, SCHEMA_VERSION);
    assert_eq!((file.n, file.d), (6, 2));
    let text = file.to_json().unwrap();
    let back = InstanceFile::parse(&text).unwrap().into_instance().unwrap();
    assert_eq!(back, inst);

    let dir = TempDir::new().unwrap();
    let p = dir.path().join("i.json");
    cli::write_instance(&p, &inst).unwrap();
    assert_eq!(cli::read_instance(&p).unwrap(), inst);
}

#[test]
fn malformed_instance_files_are_input_errors() {
    let inst = instances::gen_experimental_design(4, 2, Matroid::uniform(4, 2), 0).unwrap();
    let good: serde_json::Value = serde_json::from_str(&InstanceFile::from_instance(&inst).to_json().unwrap()).unwrap();
    let mutate = |f: &dyn Fn(&mut serde_json::Value)| {
        let mut v = good.clone();
        f(&mut v);
        InstanceFile::parse(&v.to_string()).and_then(|f| f.into_instance())
    };
    assert!(mutate(&|v| v["schema_version"] = "2".into()).is_err());
    assert!(mutate(&|v| v["n"] = 5.into()).is_err());
    assert!(mutate(&|v| v["d"] = 3.into()).is_err());
    assert!(mutate(&|v| v["vectors"][0] = serde_json::json!([1.0])).is_err());
    assert!(mutate(&|v| v["matroid"] = serde_json::json!({"type": "uniform", "params": {"n": 9, "rank": 2}})).is_err());
    assert!(InstanceFile::parse("{not json").is_err());
    for e in [
        mutate(&|v| v["schema_version"] = "2".into()).unwrap_err(),
        InstanceFile::parse("{not json").unwrap_err(),
    ] {
        assert_eq!(e.exit_code(), 2);
    }
}

#[test]
fn gen_is_reproducible_and_loadable() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    for p in [&a, &b] {
        let o = detmax(&["gen", "design", "--n", "8", "--d", "2", "--rank", "3", "--seed", "7", "--out", p]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let inst = cli::read_instance(Path::new(&a)).unwrap();
    assert_eq!((inst.n(), inst.d(), inst.k()), (8, 2, 3));

    let cases: [&[&str]; 4] = [
        &["gen", "design", "--n", "6", "--d", "2", "--matroid", "partition", "--parts", "0,0,0,1,1,1", "--caps", "1,1"],
        &["gen", "design", "--d", "2", "--matroid", "graphic", "--vertices", "4", "--edges", "0-1,1-2,2-3,0-3,0-2"],
        &["gen", "nsw", "--utilities", "1,2,0;0,1,3"],
        &["gen", "adversarial", "--m", "5"],
    ];
    for args in cases {
        let o = detmax(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        InstanceFile::parse(&String::from_utf8(o.stdout).unwrap()).unwrap().into_instance().unwrap();
    }
    let net = detmax(&["gen", "network", "--vertices", "4", "--edges", "0-1,1-2,2-3,0-3", "--seed", "2"]);
    assert_eq!(code(&net), 0);
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(code(&detmax(&["gen", "design", "--n", "2", "--d", "3"])), 2);
    assert_eq!(code(&detmax(&["gen", "adversarial", "--m", "1"])), 2);
    assert_eq!(code(&detmax(&["frobnicate"])), 2);
    assert_eq!(code(&detmax(&["solve", "/nonexistent/instance.json"])), 2);
    assert_eq!(code(&detmax(&["--help"])), 0);
}

#[test]
fn solve_writes_a_complete_report() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    let out = path(&dir, "r.json");
    assert_eq!(code(&detmax(&["gen", "design", "--n", "7", "--d", "2", "--rank", "3", "--seed", "1", "--out", &inst])), 0);
    let o = detmax(&["solve", &inst, "--seed", "5", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["schema_version"], SCHEMA_VERSION);
    assert_eq!(report["status"], "ok");
    assert_eq!(report["exit_code"], 0);
    assert_eq!(report["seeds"]["master"], 5);
    for key in ["cp", "sparsify", "round", "oracle", "timings", "preprocessing"] {
        assert!(!report[key].is_null(), "missing {key}");
    }
    assert_eq!(report["round"]["basis"].as_array().unwrap().len(), 3);
    assert_eq!(report["oracle"]["chain"]["opt_le_exp_f"], true);

    // Same seed, same report apart from timings.
    let again = path(&dir, "r2.json");
    detmax(&["solve", &inst, "--seed", "5", "--out", &again]);
    let mut a = report.clone();
    let mut b: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&again).unwrap()).unwrap();
    a["timings"] = serde_json::Value::Null;
    b["timings"] = serde_json::Value::Null;
    a["instance"] = serde_json::Value::Null;
    b["instance"] = serde_json::Value::Null;
    assert_eq!(a, b);
}

#[test]
fn solve_options_cover_every_rounding_method() {
    let inst = instances::gen_experimental_design(6, 2, Matroid::partition(vec![0, 0, 0, 1, 1, 1], vec![1, 1]), 2).unwrap();
    for rounding in [RoundingMethod::Sparse, RoundingMethod::Deterministic, RoundingMethod::Partition] {
        let opts = SolveOptions {
            rounding,
            ..SolveOptions::default()
        };
        let r = cli::cmd_solve(&inst, &opts);
        assert_eq!(r.status, "ok", "{rounding:?}: {:?}", r.error);
        let round = r.round.unwrap();
        assert!(inst.matroid.indep(&round.basis) && round.basis.len() == inst.k());
        assert!(r.oracle.unwrap().chain.unwrap().all_pass(), "{rounding:?}");
    }
    let skip = cli::cmd_solve(&inst, &SolveOptions { skip_sparsify: true, no_oracle: true, ..SolveOptions::default() });
    assert_eq!(skip.status, "ok");
    assert!(skip.sparsify.is_none() && skip.oracle.is_none());
}

#[test]
fn degenerate_and_mismatched_inputs() {
    let dir = TempDir::new().unwrap();
    // Every vector on one line: no basis has positive determinant.
    let flat = instances::Instance::new(
        detmax::numerics::VectorSet::new(2, &[vec![1.0, 0.0], vec![2.0, 0.0], vec![3.0, 0.0]]).unwrap(),
        Matroid::uniform(3, 2),
        Default::default(),
    )
    .unwrap();
    let r = cli::cmd_solve(&flat, &SolveOptions::default());
    assert_eq!((r.status.as_str(), r.exit_code), ("opt_zero", 0));

    let graphic = path(&dir, "g.json");
    detmax(&["gen", "network", "--vertices", "4", "--edges", "0-1,1-2,2-3,0-3", "--out", &graphic]);
    assert_eq!(code(&detmax(&["solve", &graphic, "--rounding", "partition"])), 2);
}

#[test]
fn brute_respects_the_enumeration_limit() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "i.json");
    detmax(&["gen", "design", "--n", "8", "--d", "2", "--rank", "3", "--out", &inst]);
    let o = detmax(&["brute", &inst]);
    assert_eq!(code(&o), 0);
    let res: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(res["basis_count"], 56);
    let limited = detmax_env(&["brute", &inst], &[("DETMAX_ENUM_LIMIT", "10")]);
    assert_eq!(code(&limited), 2);
    assert!(String::from_utf8_lossy(&limited.stderr).contains("enumeration limit"));
}

#[test]
fn bench_writes_one_row_per_trial() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    for (i, (_, inst)) in common::corpus().into_iter().take(3).enumerate() {
        cli::write_instance(&corpus.join(format!("i{i}.json")), &inst).unwrap();
    }
    let csv_path = path(&dir, "bench.csv");
    let o = detmax(&["bench", &corpus.display().to_string(), "--trials", "2", "--csv", &csv_path]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, cli::BenchRow::HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let pass = header.iter().position(|h| h == "chain_pass").unwrap();
    assert!(rows.iter().all(|r| &r[pass] == "true"));

    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let o = detmax(&["bench", &empty.display().to_string()]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim(), cli::BenchRow::HEADER.join(","));
}

#[test]
fn demo_reports_the_gap() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "demo.json");
    let o = detmax(&["demo-adversarial", "--m-list", "8,12", "--samples", "2000", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        let m = r["m"].as_f64().unwrap();
        assert!(r["oblivious_ratio"].as_f64().unwrap() >= m / 4.0);
    }
}
