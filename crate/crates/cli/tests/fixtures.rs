//! The shipped example fixtures are exactly what the writers produce for the
//! in-code example models. Set `XQUERY_BLESS=1` to regenerate them.

use std::fs;
use std::path::PathBuf;

use xquery_cli::format::{read_model, write_model};
use xquery_core::model::example;
use xquery_core::Classifier;

fn fixtures() -> Vec<(&'static str, Classifier)> {
    vec![
        ("tree.dt.json", Classifier::Tree(example::tree())),
        ("forest.rf.json", Classifier::Forest(example::forest())),
        ("boosted.bt.json", Classifier::Boosted(example::boosted())),
        (
            "perceptron.mlp.json",
            Classifier::Mlp(example::perceptron()),
        ),
        ("network.bnn.json", Classifier::Bnn(example::bnn())),
        ("formula.cnf", Classifier::Cnf(example::cnf())),
        ("formula.dnf", Classifier::Dnf(example::dnf())),
        ("rules.dl.json", Classifier::List(example::decision_list())),
    ]
}

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/example")
}

#[test]
fn fixtures_match_the_writers_byte_for_byte() {
    let bless = std::env::var_os("XQUERY_BLESS").is_some();
    for (name, model) in fixtures() {
        let path = dir().join(name);
        let expected = write_model(&model);
        if bless {
            fs::write(&path, &expected).unwrap();
        }
        let actual = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(actual, expected, "{name}");
        assert_eq!(read_model(&path, None).unwrap(), model, "{name}");
    }
}

#[test]
fn the_fixture_directory_holds_nothing_else() {
    let mut names: Vec<String> = fs::read_dir(dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    let mut expected: Vec<String> = fixtures().iter().map(|(n, _)| n.to_string()).collect();
    expected.sort();
    assert_eq!(names, expected);
}
