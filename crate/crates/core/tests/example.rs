//! Every representation of the running example answers every query alike.

use xquery_core::model::example;
use xquery_core::oracle::Oracle;
use xquery_core::{dt, Classifier, ImaMode, ImoMode, Instance, Query, QueryAnswer, Term, Var};

fn all_queries() -> Vec<Query> {
    let mut qs = Vec::new();
    for i in 0..16 {
        let x = Instance::from_index(4, i);
        qs.push(Query::Emc {
            instance: x.clone(),
            limit: None,
        });
        qs.push(Query::Eco {
            instance: x.clone(),
            limit: None,
        });
        qs.push(Query::Dpi {
            instance: x.clone(),
            order: None,
        });
        qs.push(Query::Mcp { instance: x });
    }
    for class in [false, true] {
        qs.push(Query::Cin { class });
        qs.push(Query::Ein { class, limit: None });
        for v in Var::range(4) {
            qs.push(Query::Iir { feature: v, class });
            for mode in [ImoMode::Monotone, ImoMode::Antimonotone] {
                qs.push(Query::Imo {
                    feature: v,
                    class,
                    mode,
                });
            }
            for lit in [v.get() as i64, -(v.get() as i64)] {
                for mode in [ImaMode::Mandatory, ImaMode::Forbidden] {
                    let term = Term::from_dimacs(&[lit]).unwrap();
                    qs.push(Query::Ima { term, class, mode });
                }
            }
        }
    }
    qs
}

#[test]
fn family_independence() {
    let tree = example::tree();
    let oracle = Oracle::new();
    for q in all_queries() {
        let reference = dt::answer(&tree, &q).unwrap().normalized();
        for c in example::all() {
            let got = oracle.answer(&c, &q).unwrap().normalized();
            assert_eq!(got, reference, "{} on {q:?}", c.family());
        }
    }
}

#[test]
fn golden_values() {
    let ones: Instance = "1111".parse().unwrap();
    for c in example::all() {
        let table = Oracle::new().table(&c).unwrap();
        assert_eq!(table.count(false), 11u8.into());
        assert_eq!(
            table
                .answer(&Query::Eco {
                    instance: ones.clone(),
                    limit: None
                })
                .unwrap(),
            QueryAnswer::Instances(vec!["0111".parse().unwrap()])
        );
        assert_eq!(table.mcp(&ones), 2);
    }
    assert!(example::all().iter().all(|c: &Classifier| c.n() == 4));
}
