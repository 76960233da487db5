use std::fmt;

use crate::error::{Error, Result};

use super::{Instance, PartialAssignment, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub var: Var,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal { var, positive }
    }

    pub fn pos(var: usize) -> Literal {
        Literal::new(Var::new(var), true)
    }

    pub fn neg(var: usize) -> Literal {
        Literal::new(Var::new(var), false)
    }

    /// DIMACS convention: `3` is `x3`, `-3` is `¬x3`; `0` is not a literal.
    pub fn from_dimacs(lit: i64) -> Option<Literal> {
        let var = Var::try_new(lit.unsigned_abs() as usize)?;
        Some(Literal::new(var, lit > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var.get() as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn negated(self) -> Literal {
        Literal::new(self.var, !self.positive)
    }

    pub fn eval(self, x: &Instance) -> bool {
        x.get(self.var) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "¬{}", self.var)
        }
    }
}

fn dedup(literals: impl IntoIterator<Item = Literal>) -> Vec<Literal> {
    let mut out: Vec<Literal> = Vec::new();
    for lit in literals {
        if !out.contains(&lit) {
            out.push(lit);
        }
    }
    out
}

fn find_complementary(literals: &[Literal]) -> Option<Var> {
    literals
        .iter()
        .find(|l| literals.contains(&l.negated()))
        .map(|l| l.var)
}

/// A conjunction of literals. Literal order is kept as given, duplicates are
/// dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Term {
    literals: Vec<Literal>,
    contradictory: bool,
}

impl Term {
    /// Rejects terms mentioning a feature with both polarities.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Result<Term> {
        let literals = dedup(literals);
        if let Some(var) = find_complementary(&literals) {
            return Err(Error::ContradictoryTerm(var));
        }
        Ok(Term {
            literals,
            contradictory: false,
        })
    }

    /// Accepts complementary pairs; such a term is marked unsatisfiable.
    pub fn allow_contradiction(literals: impl IntoIterator<Item = Literal>) -> Term {
        let literals = dedup(literals);
        let contradictory = find_complementary(&literals).is_some();
        Term {
            literals,
            contradictory,
        }
    }

    pub fn from_dimacs(lits: &[i64]) -> Result<Term> {
        Term::new(
            lits.iter()
                .map(|&l| Literal::from_dimacs(l).expect("0 is not a literal")),
        )
    }

    /// The empty term ⊤.
    pub fn top() -> Term {
        Term::default()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_satisfiable(&self) -> bool {
        !self.contradictory
    }

    pub fn eval(&self, x: &Instance) -> bool {
        !self.contradictory && self.literals.iter().all(|l| l.eval(x))
    }

    /// `None` for contradictory terms.
    pub fn to_assignment(&self) -> Option<PartialAssignment> {
        self.is_satisfiable()
            .then(|| self.literals.iter().map(|l| (l.var, l.positive)).collect())
    }

    pub fn max_var(&self) -> Option<Var> {
        self.literals.iter().map(|l| l.var).max()
    }

    /// De Morgan dual: the clause of the negated literals.
    pub fn negated(&self) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.negated()))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("⊤");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Term {
        Term {
            literals: vec![l],
            contradictory: false,
        }
    }
}

/// A disjunction of literals. A clause holding a literal and its negation is
/// valid (tautologous).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause {
            literals: dedup(literals),
        }
    }

    pub fn from_dimacs(lits: &[i64]) -> Clause {
        Clause::new(
            lits.iter()
                .map(|&l| Literal::from_dimacs(l).expect("0 is not a literal")),
        )
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        find_complementary(&self.literals).is_some()
    }

    pub fn eval(&self, x: &Instance) -> bool {
        self.literals.iter().any(|l| l.eval(x))
    }

    pub fn max_var(&self) -> Option<Var> {
        self.literals.iter().map(|l| l.var).max()
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.literals.iter().any(|l| l.var == var)
    }

    /// De Morgan dual; contradictory when the clause is valid.
    pub fn negated(&self) -> Term {
        Term::allow_contradiction(self.literals.iter().map(|l| l.negated()))
    }

    /// `self ∨ lit`.
    pub fn with(&self, lit: Literal) -> Clause {
        Clause::new(self.literals.iter().copied().chain([lit]))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("⊥");
        }
        f.write_str("(")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// A conjunction of clauses; no clauses is ⊤, an empty clause makes it ⊥.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CnfFormula {
    n: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(n: usize, clauses: Vec<Clause>) -> CnfFormula {
        CnfFormula { n, clauses }
    }

    pub fn from_dimacs(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| Clause::from_dimacs(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Sum of clause sizes.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn evaluate(&self, x: &Instance) -> bool {
        self.clauses.iter().all(|c| c.eval(x))
    }

    pub fn has_valid_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_valid)
    }

    /// Same clauses over a larger feature space.
    pub fn widened(&self, n: usize) -> CnfFormula {
        assert!(n >= self.n);
        CnfFormula::new(n, self.clauses.clone())
    }
}

/// A disjunction of terms; no terms is ⊥.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DnfFormula {
    n: usize,
    terms: Vec<Term>,
}

impl DnfFormula {
    pub fn new(n: usize, terms: Vec<Term>) -> DnfFormula {
        DnfFormula { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn size(&self) -> usize {
        self.terms.iter().map(Term::len).sum()
    }

    pub fn evaluate(&self, x: &Instance) -> bool {
        self.terms.iter().any(|t| t.eval(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contradictory_terms_need_the_flag() {
        assert!(matches!(
            Term::from_dimacs(&[1, -1]),
            Err(Error::ContradictoryTerm(v)) if v == Var::new(1)
        ));
        let t = Term::allow_contradiction([Literal::pos(1), Literal::neg(1)]);
        assert!(!t.is_satisfiable());
        assert!(!t.eval(&"1".parse().unwrap()));
        assert!(!t.eval(&"0".parse().unwrap()));
    }

    #[test]
    fn clauses_collapse_duplicates_and_flag_tautologies() {
        let c = Clause::from_dimacs(&[1, 2, 1]);
        assert_eq!(c.len(), 2);
        assert!(!c.is_valid());
        assert!(Clause::from_dimacs(&[1, -1]).is_valid());
    }

    #[test]
    fn empty_conventions() {
        let x: Instance = "01".parse().unwrap();
        assert!(CnfFormula::new(2, vec![]).evaluate(&x));
        assert!(!DnfFormula::new(2, vec![]).evaluate(&x));
        assert!(!CnfFormula::new(2, vec![Clause::default()]).evaluate(&x));
        assert!(Term::top().eval(&x));
    }

    #[test]
    fn de_morgan() {
        let c = Clause::from_dimacs(&[1, -2]);
        let t = c.negated();
        assert_eq!(t, Term::from_dimacs(&[-1, 2]).unwrap());
        for i in 0..4 {
            let x = Instance::from_index(2, i);
            assert_eq!(c.eval(&x), !t.eval(&x));
        }
    }
}
