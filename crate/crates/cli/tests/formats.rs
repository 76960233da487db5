use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use xquery_cli::format::{format_rational, parse_rational};
use xquery_cli::format::{parse_model, write_model, FormatError};
use xquery_core::generate::{random_cnf, random_tree, rng};
use xquery_core::reductions::{
    cnf_negation_to_dnf, cnf_to_bnn, cnf_to_decision_list, cnf_to_mlp, cnf_to_random_forest,
    rf_to_boosted_tree,
};
use xquery_core::{BoostedTree, Classifier, Clause, CnfFormula, Mlp, Neuron};

fn round_trip(c: &Classifier) {
    let text = write_model(c);
    let back = parse_model(&text, c.family()).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(&back, c);
    assert_eq!(write_model(&back), text);
}

fn ratio(rng: &mut impl Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-50i64..=50)),
        BigInt::from(rng.gen_range(1i64..=12)),
    )
}

#[test]
fn every_family_round_trips() {
    let mut r = rng(7);
    for _ in 0..60 {
        let n = r.gen_range(1..=7);
        let phi = random_cnf(n, r.gen_range(1..=6), 3, &mut r);
        let forest = cnf_to_random_forest(&phi);
        for c in [
            Classifier::Cnf(phi.clone()),
            Classifier::Dnf(cnf_negation_to_dnf(&phi)),
            Classifier::List(cnf_to_decision_list(&phi)),
            Classifier::Boosted(rf_to_boosted_tree(&forest).unwrap()),
            Classifier::Forest(forest),
            Classifier::Mlp(cnf_to_mlp(&phi).unwrap()),
            Classifier::Bnn(cnf_to_bnn(&phi).unwrap()),
            Classifier::Tree(random_tree(n, 31, &mut r)),
        ] {
            round_trip(&c);
        }
    }
}

#[test]
fn fractional_weights_round_trip_exactly() {
    let mut r = rng(11);
    for _ in 0..40 {
        let n = r.gen_range(1..=5);
        let hidden: Vec<Neuron> = (0..3)
            .map(|_| Neuron::new((0..n).map(|_| ratio(&mut r)).collect(), ratio(&mut r)))
            .collect();
        let out = Neuron::new((0..3).map(|_| ratio(&mut r)).collect(), ratio(&mut r));
        round_trip(&Classifier::Mlp(Mlp::new(n, vec![hidden, vec![out]])));

        let raw: Vec<BigRational> = (0..3)
            .map(|_| BigRational::new(r.gen_range(1i64..=9).into(), r.gen_range(1i64..=7).into()))
            .collect();
        let total: BigRational = raw.iter().sum();
        let members = raw
            .into_iter()
            .map(|w| (random_tree(n, 15, &mut r), w / &total))
            .collect();
        round_trip(&Classifier::Boosted(BoostedTree::new(n, members)));
    }
}

#[test]
fn rationals_survive_text() {
    let mut r = rng(3);
    for _ in 0..500 {
        let q = ratio(&mut r);
        assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
    assert_eq!(
        parse_rational("0.25").unwrap(),
        parse_rational("1/4").unwrap()
    );
    assert_eq!(
        parse_rational("-4.5").unwrap(),
        parse_rational("-9/2").unwrap()
    );
    assert_eq!(format_rational(&parse_rational("2/6").unwrap()), "1/3");
}

#[test]
fn dimacs_basics() {
    let c = parse_model(
        "c two units\np cnf 2 2\n1 0\n-2 0\n",
        xquery_core::Family::Cnf,
    )
    .unwrap();
    assert_eq!(
        c,
        Classifier::Cnf(CnfFormula::new(
            2,
            vec![Clause::from_dimacs(&[1]), Clause::from_dimacs(&[-2])]
        ))
    );
    let d = parse_model("p dnf 3 2\n1 -2 0\n3 0\n", xquery_core::Family::Dnf).unwrap();
    assert_eq!(d.n(), 3);
    assert!(matches!(
        parse_model("p cnf 2 2\n1 0\n", xquery_core::Family::Cnf),
        Err(FormatError::Syntax { .. })
    ));
    assert!(matches!(
        parse_model("p cnf 2 1\n3 0\n", xquery_core::Family::Cnf),
        Err(FormatError::Syntax { line: 2, .. })
    ));
}
