//! Query instances whose answer reveals whether a CNF is satisfiable.
//!
//! Each builder takes `α` over `x1 … x_{n−1}` and produces `ρ` over
//! `x1 … xn` together with the query arguments.

use crate::error::{Error, Result};
use crate::model::{Clause, CnfFormula, Instance, Literal, Var};
use crate::query::{ImaMode, ImoMode, Query, QueryAnswer, QueryTag};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gadget {
    pub rho: CnfFormula,
    pub query: Query,
    /// What the answer looks like exactly when `α` is unsatisfiable.
    pub unsat_when: &'static str,
}

impl Gadget {
    pub fn tag(&self) -> QueryTag {
        self.query.tag()
    }

    /// Reads the satisfiability of the source formula off a query answer.
    pub fn source_satisfiable(&self, answer: &QueryAnswer) -> bool {
        let n = self.rho.n();
        let unsat = match (&self.query, answer) {
            (Query::Emc { .. }, QueryAnswer::Instances(v)) => v == &[Instance::ones(n)],
            (Query::Dpi { .. }, QueryAnswer::Assignment(a)) => a.is_empty(),
            (Query::Eco { .. }, a) => matches!(a, QueryAnswer::Absent),
            (Query::Cin { .. }, QueryAnswer::Count(c)) => c.bits() == 0,
            (Query::Ein { .. }, QueryAnswer::Instances(v)) => v.is_empty(),
            (Query::Ima { .. } | Query::Iir { .. } | Query::Imo { .. }, QueryAnswer::Bit(b)) => *b,
            (Query::Mcp { .. }, QueryAnswer::Distance(d)) => *d == 0,
            (q, a) => panic!("answer {a:?} does not fit query {}", q.tag()),
        };
        !unsat
    }
}

fn widen(alpha: &CnfFormula) -> Result<usize> {
    if alpha.n() < 1 {
        return Err(Error::TooFewFeatures);
    }
    Ok(alpha.n() + 1)
}

/// `⋀_i ⋀_j (δ_i ∨ ℓ_j)` with `ℓ_j = x_j` (or `¬x_j`): equivalent to
/// `α ∨ ⋀_j ℓ_j`. Tautologous products are left out.
fn disjoin_with_cube(alpha: &CnfFormula, n: usize, positive: bool) -> CnfFormula {
    let clauses = alpha
        .clauses()
        .iter()
        .flat_map(|d| Var::range(n).map(move |v| d.with(Literal::new(v, positive))))
        .filter(|c| !c.is_valid())
        .collect();
    CnfFormula::new(n, clauses)
}

/// `α ∧ extra`.
fn conjoin(alpha: &CnfFormula, n: usize, extra: Clause) -> CnfFormula {
    let mut clauses = alpha.clauses().to_vec();
    clauses.push(extra);
    CnfFormula::new(n, clauses)
}

fn last(n: usize) -> Var {
    Var::new(n)
}

/// The construction for `tag`, using the mandatory and monotone variants of
/// IMA and IMO.
pub fn build_gadget(tag: QueryTag, alpha: &CnfFormula) -> Result<Gadget> {
    let n = widen(alpha)?;
    let ones = Instance::ones(n);
    let some_zero = Clause::new(Var::range(n).map(|v| Literal::new(v, false)));
    let gadget = match tag {
        QueryTag::Emc => Gadget {
            rho: disjoin_with_cube(alpha, n, true),
            query: Query::Emc {
                instance: ones,
                limit: None,
            },
            unsat_when: "the only minimum-cardinality explanation of 1…1 is 1…1 itself",
        },
        QueryTag::Mcp => Gadget {
            rho: disjoin_with_cube(alpha, n, true),
            query: Query::Mcp { instance: ones },
            unsat_when: "the maximal distance from 1…1 to its class is 0",
        },
        QueryTag::Dpi => Gadget {
            rho: conjoin(alpha, n, some_zero),
            query: Query::Dpi {
                instance: ones,
                order: None,
            },
            unsat_when: "the empty term explains 1…1",
        },
        QueryTag::Eco => Gadget {
            rho: conjoin(alpha, n, some_zero),
            query: Query::Eco {
                instance: ones,
                limit: None,
            },
            unsat_when: "1…1 has no counterfactual",
        },
        QueryTag::Cin => Gadget {
            rho: alpha.widened(n),
            query: Query::Cin { class: true },
            unsat_when: "no instance is classified 1",
        },
        QueryTag::Ein => Gadget {
            rho: alpha.widened(n),
            query: Query::Ein {
                class: true,
                limit: None,
            },
            unsat_when: "the class-1 enumeration is empty",
        },
        QueryTag::Ima => Gadget {
            rho: disjoin_with_cube(alpha, n, true),
            query: Query::Ima {
                term: Literal::new(last(n), true).into(),
                class: true,
                mode: ImaMode::Mandatory,
            },
            unsat_when: "x_n is mandatory for class 1",
        },
        QueryTag::Iir => Gadget {
            rho: conjoin(alpha, n, Clause::new([Literal::new(last(n), true)])),
            query: Query::Iir {
                feature: last(n),
                class: false,
            },
            unsat_when: "x_n is irrelevant",
        },
        QueryTag::Imo => Gadget {
            rho: conjoin(alpha, n, Clause::new([Literal::new(last(n), false)])),
            query: Query::Imo {
                feature: last(n),
                class: true,
                mode: ImoMode::Monotone,
            },
            unsat_when: "class 1 is monotone in x_n",
        },
    };
    Ok(gadget)
}

/// IMA with `t = x_n` forbidden: `ρ ≡ α ∨ ⋀_j ¬x_j`.
pub fn ima_forbidden_gadget(alpha: &CnfFormula) -> Result<Gadget> {
    let n = widen(alpha)?;
    Ok(Gadget {
        rho: disjoin_with_cube(alpha, n, false),
        query: Query::Ima {
            term: Literal::new(last(n), true).into(),
            class: true,
            mode: ImaMode::Forbidden,
        },
        unsat_when: "x_n is forbidden for class 1",
    })
}

/// IMO antimonotone: `ρ = α ∧ x_n`.
pub fn imo_antimonotone_gadget(alpha: &CnfFormula) -> Result<Gadget> {
    let n = widen(alpha)?;
    Ok(Gadget {
        rho: conjoin(alpha, n, Clause::new([Literal::new(last(n), true)])),
        query: Query::Imo {
            feature: last(n),
            class: true,
            mode: ImoMode::Antimonotone,
        },
        unsat_when: "class 1 is antimonotone in x_n",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Classifier;
    use crate::oracle::Oracle;

    fn run(g: &Gadget) -> QueryAnswer {
        Oracle::new()
            .answer(&Classifier::Cnf(g.rho.clone()), &g.query)
            .unwrap()
    }

    #[test]
    fn emc_on_a_contradiction() {
        let alpha = CnfFormula::from_dimacs(1, &[&[1], &[-1]]);
        let g = build_gadget(QueryTag::Emc, &alpha).unwrap();
        assert_eq!(g.rho.n(), 2);
        let answer = run(&g);
        assert_eq!(answer, QueryAnswer::Instances(vec!["11".parse().unwrap()]));
        assert!(!g.source_satisfiable(&answer));
    }

    #[test]
    fn emc_on_a_satisfiable_formula() {
        let alpha = CnfFormula::from_dimacs(1, &[&[1]]);
        let g = build_gadget(QueryTag::Emc, &alpha).unwrap();
        let answer = run(&g);
        assert_eq!(answer, QueryAnswer::Instances(vec!["10".parse().unwrap()]));
        assert!(g.source_satisfiable(&answer));
    }

    #[test]
    fn iir_arguments() {
        let alpha = CnfFormula::from_dimacs(2, &[&[1, 2]]);
        let g = build_gadget(QueryTag::Iir, &alpha).unwrap();
        assert_eq!(
            g.query,
            Query::Iir {
                feature: Var::new(3),
                class: false
            }
        );
        assert_eq!(g.rho.clauses().last().unwrap(), &Clause::from_dimacs(&[3]));
    }

    #[test]
    fn no_features_is_rejected() {
        let alpha = CnfFormula::new(0, vec![]);
        assert!(matches!(
            build_gadget(QueryTag::Cin, &alpha),
            Err(Error::TooFewFeatures)
        ));
    }

    #[test]
    fn cube_products_drop_tautologies() {
        let alpha = CnfFormula::from_dimacs(2, &[&[-1, 2]]);
        let g = build_gadget(QueryTag::Emc, &alpha).unwrap();
        assert!(!g.rho.has_valid_clause());
        assert_eq!(g.rho.len(), 2);
    }
}
