use std::fs;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use xquery_cli::format::{read_model, save_model};
use xquery_core::reductions::cnf_to_bnn;
use xquery_core::{Classifier, Clause, CnfFormula, Family};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/example")
        .join(name)
        .display()
        .to_string()
}

fn xquery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xquery"))
        .args(args)
        .env_remove("XQUERY_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn write_cnf(dir: &Path, name: &str, phi: CnfFormula) -> String {
    let path = dir.join(name);
    save_model(&Classifier::Cnf(phi), &path).unwrap();
    path.display().to_string()
}

#[test]
fn counts_the_negative_class_of_the_tree() {
    let o = xquery(&[
        "query",
        "cin",
        "--model",
        &fixture("tree.dt.json"),
        "--class",
        "0",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{\"count\":\"11\"}\n");
}

#[test]
fn counterfactual_of_the_perceptron() {
    let o = xquery(&[
        "query",
        "eco",
        "--model",
        &fixture("perceptron.mlp.json"),
        "--instance",
        "1111",
        "--engine",
        "oracle",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{\"instance\":\"0111\",\"distance\":1}\n");
}

#[test]
fn every_query_agrees_between_tree_and_forest() {
    let cases: &[&[&str]] = &[
        &["emc", "--instance", "1111"],
        &["dpi", "--instance", "1111", "--order", "4,3,2,1"],
        &["eco", "--instance", "1111"],
        &["cin"],
        &["ein", "--class", "0"],
        &["ima", "--term", "1"],
        &["ima", "--term", "-3", "--mode", "forbidden"],
        &["iir", "--feature", "2"],
        &[
            "imo",
            "--feature",
            "3",
            "--class",
            "0",
            "--mode",
            "antimonotone",
        ],
        &["mcp", "--instance", "1111"],
    ];
    for args in cases {
        let run = |file: &str| {
            let model = fixture(file);
            let mut full = vec!["query", args[0], "--model", model.as_str()];
            full.extend(&args[1..]);
            let o = xquery(&full);
            assert_eq!(code(&o), 0, "{args:?} on {file}");
            // The dt engine streams in traversal order; compare as sets.
            let mut lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
            lines.sort();
            lines
        };
        assert_eq!(run("tree.dt.json"), run("forest.rf.json"), "{args:?}");
    }
}

#[test]
fn golden_lines() {
    let q = |args: &[&str]| stdout(&xquery(args));
    let dt = fixture("tree.dt.json");
    assert_eq!(
        q(&["query", "emc", "--model", &dt, "--instance", "1111"]),
        "{\"instance\":\"1100\",\"ones\":2}\n"
    );
    assert_eq!(
        q(&[
            "query",
            "dpi",
            "--model",
            &dt,
            "--instance",
            "1111",
            "--order",
            "3,4,1,2"
        ]),
        "{\"term\":[1,2]}\n"
    );
    assert_eq!(
        q(&["query", "mcp", "--model", &dt, "--instance", "1111"]),
        "{\"distance\":2}\n"
    );
    assert_eq!(
        q(&["query", "iir", "--model", &dt, "--feature", "4"]),
        "{\"answer\":0}\n"
    );
    assert_eq!(
        q(&["query", "ein", "--model", &dt, "--class", "0", "--limit", "2"])
            .lines()
            .count(),
        2
    );
}

#[test]
fn missing_counterfactual_is_null() {
    let dir = tempfile::tempdir().unwrap();
    let top = write_cnf(dir.path(), "top.cnf", CnfFormula::new(3, vec![]));
    let o = xquery(&["query", "eco", "--model", &top, "--instance", "101"]);
    assert_eq!(stdout(&o), "{\"counterfactual\":null}\n");
}

#[test]
fn usage_errors_exit_2() {
    let dt = fixture("tree.dt.json");
    let bt = fixture("boosted.bt.json");
    for args in [
        vec!["query", "cin", "--model", bt.as_str(), "--engine", "dt"],
        vec!["query", "emc", "--model", dt.as_str()],
        vec!["query", "emc", "--model", dt.as_str(), "--instance", "111"],
        vec!["query", "iir", "--model", dt.as_str(), "--feature", "9"],
        vec!["query", "cin", "--model", dt.as_str(), "--class", "2"],
        vec![
            "query",
            "cin",
            "--model",
            dt.as_str(),
            "--mode",
            "forbidden",
        ],
        vec!["query", "ima", "--model", dt.as_str(), "--term", "1,-1"],
        vec!["query", "nope", "--model", dt.as_str()],
    ] {
        let o = xquery(&args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn large_models_are_refused_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let phi = CnfFormula::new(40, (1..=40).map(|i| Clause::from_dimacs(&[i])).collect());
    let path = dir.path().join("big.bnn.json");
    save_model(&Classifier::Bnn(cnf_to_bnn(&phi).unwrap()), &path).unwrap();
    let o = xquery(&[
        "query",
        "cin",
        "--model",
        path.to_str().unwrap(),
        "--engine",
        "oracle",
    ]);
    assert_eq!(code(&o), 3);

    let cnf = write_cnf(
        dir.path(),
        "small.cnf",
        CnfFormula::from_dimacs(6, &[&[1, 2]]),
    );
    let o = Command::new(env!("CARGO_BIN_EXE_xquery"))
        .args(["query", "cin", "--model", &cnf])
        .env("XQUERY_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_xquery"))
        .args(["query", "cin", "--model", &cnf, "--force"])
        .env("XQUERY_ORACLE_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "{\"count\":\"48\"}\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn parse_errors_exit_4_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cnf");
    fs::write(&bad, "p cnf 2 1\n1 x 0\n").unwrap();
    let o = xquery(&["query", "cin", "--model", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 3"));

    let repeated = dir.path().join("repeat.dt.json");
    fs::write(
        &repeated,
        r#"{"n":1,"root":{"var":1,"lo":{"leaf":0},"hi":{"var":1,"lo":{"leaf":0},"hi":{"leaf":1}}}}"#,
    )
    .unwrap();
    let o = xquery(&["query", "cin", "--model", repeated.to_str().unwrap()]);
    assert_eq!(code(&o), 4);
}

#[test]
fn translate_to_forest_has_2k_minus_1_trees() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write_cnf(
        dir.path(),
        "phi.cnf",
        CnfFormula::from_dimacs(3, &[&[1], &[2, -3], &[-1, 3]]),
    );
    let out = dir.path().join("phi.rf.json");
    let o = xquery(&[
        "translate",
        "--to",
        "rf",
        "--in",
        &phi,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let Classifier::Forest(f) = read_model(&out, None).unwrap() else {
        panic!("not a forest")
    };
    assert_eq!(f.trees().len(), 5);
}

#[test]
fn translate_reports_stripped_clauses_and_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let phi = write_cnf(
        dir.path(),
        "v.cnf",
        CnfFormula::from_dimacs(2, &[&[1, -1], &[2]]),
    );
    let o = xquery(&["translate", "--to", "mlp", "--in", &phi]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("removed 1"));

    let only_valid = write_cnf(dir.path(), "w.cnf", CnfFormula::from_dimacs(2, &[&[1, -1]]));
    let o = xquery(&["translate", "--to", "bnn", "--in", &only_valid]);
    assert_eq!(code(&o), 5);
}

#[test]
fn negating_the_empty_cnf_gives_the_empty_dnf() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_cnf(dir.path(), "empty.cnf", CnfFormula::new(3, vec![]));
    let o = xquery(&["translate", "--to", "dnf-neg", "--in", &empty]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "p dnf 3 0\n");
}

#[test]
fn iir_gadget_adds_a_unit_clause_on_a_fresh_feature() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.cnf");
    let o = xquery(&[
        "gadget",
        "--query",
        "iir",
        "--cnf",
        &fixture("formula.cnf"),
        "--out",
        out.to_str().unwrap(),
        "--print-aux",
    ]);
    assert_eq!(code(&o), 0);
    let aux: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(aux["feature"], 5);
    assert_eq!(aux["class"], 0);
    let Classifier::Cnf(rho) = read_model(&out, Some(Family::Cnf)).unwrap() else {
        panic!("not a CNF")
    };
    assert_eq!(rho.n(), 5);
    assert_eq!(rho.clauses().last().unwrap(), &Clause::from_dimacs(&[5]));
}

#[test]
fn map_rows_and_dispatch() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("map.jsonl");
    let o = xquery(&[
        "map",
        "--dir",
        &fixture(""),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let rows: Vec<serde_json::Value> = fs::read_to_string(&report)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 8 * 9);
    for r in &rows {
        let expected = if r["family"] == "dt" { "dt" } else { "oracle" };
        assert_eq!(r["engine"], expected);
        assert_eq!(r["status"], "ok");
        let mut same_query = rows.iter().filter(|s| s["query"] == r["query"]);
        assert!(same_query.all(|s| s["answer"] == r["answer"]), "{r}");
    }
    assert_eq!(stdout(&o).lines().count(), 1 + 8 * 9);
}

#[test]
fn map_of_an_empty_dir_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let o = xquery(&["map", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn map_keeps_going_past_a_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.cnf"), "p cnf 1 1\n1 0\n").unwrap();
    fs::write(dir.path().join("b.cnf"), "garbage").unwrap();
    let o = xquery(&["map", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert_eq!(stdout(&o).lines().count(), 1 + 9);
    assert!(String::from_utf8_lossy(&o.stderr).contains("b.cnf"));
}

#[test]
fn interrupted_streams_emit_whole_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.dt.json");
    save_model(
        &Classifier::Tree(xquery_core::generate::chain_tree(40)),
        &path,
    )
    .unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_xquery"))
        .args(["query", "ein", "--model", path.to_str().unwrap()])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut reader = BufReader::new(child.stdout.take().unwrap());
    for _ in 0..50 {
        let mut line = String::new();
        reader.read_line(&mut line).unwrap();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["instance"].as_str().unwrap().len(), 40);
    }
    drop(reader);
    let status = child.wait().unwrap();
    assert!(status.success(), "{status:?}");
}
