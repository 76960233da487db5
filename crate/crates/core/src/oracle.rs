//! Exhaustive reference engine: evaluates the classifier on all of `B^n`
//! and answers every query from the resulting truth table.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Classifier, CnfFormula, Compiled, Instance, PartialAssignment, Term, Var};
use crate::query::{check_order, ImaMode, ImoMode, Query, QueryAnswer};

pub const DEFAULT_CAP: usize = 20;

/// Hard ceiling: indices must fit a machine word.
const MAX_FEATURES: usize = 63;

const CHUNK: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct Oracle {
    cap: usize,
    forced: bool,
    deadline: Option<Instant>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Oracle {
        Oracle {
            cap: DEFAULT_CAP,
            forced: false,
            deadline: None,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Oracle {
        self.cap = cap;
        self
    }

    /// Ignores the cap (but not the 63-feature ceiling).
    pub fn forced(mut self, forced: bool) -> Oracle {
        self.forced = forced;
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Oracle {
        self.deadline = deadline;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn check_scale(&self, n: usize) -> Result<()> {
        if n > MAX_FEATURES || (n > self.cap && !self.forced) {
            let cap = if self.forced { MAX_FEATURES } else { self.cap };
            return Err(Error::OverCap { n, cap });
        }
        Ok(())
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    /// Evaluates `c` on every instance.
    pub fn table(&self, c: &Classifier) -> Result<TruthTable> {
        self.check_scale(c.n())?;
        let compiled = c.compile()?;
        self.sweep(&compiled)
    }

    fn sweep(&self, compiled: &Compiled) -> Result<TruthTable> {
        let n = compiled.n();
        let mut classes = vec![false; 1usize << n];
        let fill = |(k, chunk): (usize, &mut [bool])| -> Result<()> {
            self.check_deadline()?;
            let mut bits = vec![false; n];
            for (off, slot) in chunk.iter_mut().enumerate() {
                let index = k * CHUNK + off;
                for (j, b) in bits.iter_mut().enumerate() {
                    *b = index >> j & 1 == 1;
                }
                *slot = compiled.evaluate(&bits);
            }
            Ok(())
        };
        if classes.len() >= CHUNK {
            classes
                .par_chunks_mut(CHUNK)
                .enumerate()
                .try_for_each(fill)?;
        } else {
            classes.chunks_mut(CHUNK).enumerate().try_for_each(fill)?;
        }
        Ok(TruthTable { n, classes })
    }

    pub fn answer(&self, c: &Classifier, query: &Query) -> Result<QueryAnswer> {
        query.check(c.n())?;
        let table = self.table(c)?;
        table.answer(query)
    }

    /// Satisfiability by enumeration.
    pub fn sat(&self, phi: &CnfFormula) -> Result<bool> {
        self.check_scale(phi.n())?;
        let n = phi.n();
        Ok((0..1u64 << n).any(|i| phi.evaluate(&Instance::from_index(n, i))))
    }
}

/// Satisfiability by enumeration under the default cap.
pub fn sat_brute_force(phi: &CnfFormula) -> Result<bool> {
    Oracle::new().sat(phi)
}

/// The class of every instance, indexed with `x1` as the least significant
/// bit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruthTable {
    n: usize,
    classes: Vec<bool>,
}

fn index_of(x: &Instance) -> usize {
    x.to_index() as usize
}

fn instance(n: usize, index: usize) -> Instance {
    Instance::from_index(n, index as u64)
}

/// Iterates the submasks of `mask` in decreasing order, `mask` and 0 included.
fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let s = next?;
        next = (s != 0).then(|| (s - 1) & mask);
        Some(s)
    })
}

/// Fixed positions and values of an assignment as bit masks.
fn masks(a: &PartialAssignment) -> (usize, usize) {
    a.iter().fold((0, 0), |(fixed, value), (v, b)| {
        (fixed | 1 << v.idx(), value | (b as usize) << v.idx())
    })
}

impl TruthTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class_of_index(&self, index: usize) -> bool {
        self.classes[index]
    }

    pub fn class(&self, x: &Instance) -> bool {
        self.classes[index_of(x)]
    }

    fn all(&self) -> usize {
        (1usize << self.n) - 1
    }

    pub fn count(&self, class: bool) -> BigUint {
        BigUint::from(self.classes.iter().filter(|&&c| c == class).count())
    }

    /// Instances of `class` in ascending index order.
    pub fn members(&self, class: bool) -> impl Iterator<Item = Instance> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter(move |(_, &c)| c == class)
            .map(|(i, _)| instance(self.n, i))
    }

    /// Every completion of `a` has class `class`.
    pub fn is_implicant(&self, a: &PartialAssignment, class: bool) -> bool {
        let (fixed, value) = masks(a);
        submasks(self.all() & !fixed).all(|s| self.classes[value | s] == class)
    }

    /// `a` is coherent with `x`, forces `x`'s class, and no single feature
    /// can be dropped from it. Forcing is monotone under adding features, so
    /// single drops decide subset-minimality.
    pub fn is_sufficient_reason(&self, x: &Instance, a: &PartialAssignment) -> bool {
        let class = self.class(x);
        if !a.is_coherent_with(x) || !self.is_implicant(a, class) {
            return false;
        }
        a.iter().all(|(v, _)| {
            let mut smaller = a.clone();
            smaller.remove(v);
            !self.is_implicant(&smaller, class)
        })
    }

    pub fn emc(&self, x: &Instance) -> Vec<Instance> {
        let class = self.class(x);
        let mut best = usize::MAX;
        let mut out = Vec::new();
        for s in submasks(index_of(x)) {
            if self.classes[s] != class {
                continue;
            }
            let ones = s.count_ones() as usize;
            if ones < best {
                best = ones;
                out.clear();
            }
            if ones == best {
                out.push(s);
            }
        }
        out.sort_unstable();
        out.into_iter().map(|s| instance(self.n, s)).collect()
    }

    pub fn dpi(&self, x: &Instance, order: Option<&[Var]>) -> Result<PartialAssignment> {
        if let Some(o) = order {
            check_order(o, self.n)?;
        }
        let order: Vec<Var> = order.map_or_else(|| Var::range(self.n).collect(), <[Var]>::to_vec);
        let class = self.class(x);
        let mut a = x.to_assignment();
        for v in order {
            let kept = a.remove(v).expect("full assignment");
            if !self.is_implicant(&a, class) {
                a.insert(v, kept);
            }
        }
        Ok(a)
    }

    /// `None` when the opposite class is empty.
    pub fn eco(&self, x: &Instance) -> Option<Vec<Instance>> {
        let xi = index_of(x);
        let class = self.classes[xi];
        let mut best = usize::MAX;
        let mut out = Vec::new();
        for (i, &c) in self.classes.iter().enumerate() {
            if c == class {
                continue;
            }
            let d = (i ^ xi).count_ones() as usize;
            if d < best {
                best = d;
                out.clear();
            }
            if d == best {
                out.push(instance(self.n, i));
            }
        }
        (!out.is_empty()).then_some(out)
    }

    pub fn ima(&self, term: &Term, class: bool, mode: ImaMode) -> Result<bool> {
        let a = term
            .to_assignment()
            .ok_or_else(|| Error::ContradictoryTerm(term.literals()[0].var))?;
        let (fixed, value) = masks(&a);
        let mut members = self
            .classes
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == class)
            .map(|(i, _)| i);
        Ok(match mode {
            ImaMode::Mandatory => members.all(|i| i & fixed == value),
            ImaMode::Forbidden => !members.any(|i| i & fixed == value),
        })
    }

    pub fn iir(&self, feature: Var) -> bool {
        let bit = 1 << feature.idx();
        (0..self.classes.len()).all(|i| self.classes[i] == self.classes[i ^ bit])
    }

    pub fn imo(&self, feature: Var, class: bool, mode: ImoMode) -> bool {
        let bit = 1 << feature.idx();
        (0..self.classes.len())
            .filter(|&i| self.classes[i] == class)
            .all(|i| {
                let j = match mode {
                    ImoMode::Monotone => i | bit,
                    ImoMode::Antimonotone => i & !bit,
                };
                self.classes[j] == class
            })
    }

    pub fn mcp(&self, x: &Instance) -> usize {
        let xi = index_of(x);
        let class = self.classes[xi];
        (0..self.classes.len())
            .filter(|&i| self.classes[i] == class)
            .map(|i| (i ^ xi).count_ones() as usize)
            .max()
            .expect("x belongs to its own class")
    }

    pub fn answer(&self, query: &Query) -> Result<QueryAnswer> {
        query.check(self.n)?;
        let cut = |v: Vec<Instance>, limit: &Option<usize>| {
            QueryAnswer::Instances(v.into_iter().take(limit.unwrap_or(usize::MAX)).collect())
        };
        Ok(match query {
            Query::Emc { instance, limit } => cut(self.emc(instance), limit),
            Query::Dpi { instance, order } => {
                QueryAnswer::Assignment(self.dpi(instance, order.as_deref())?)
            }
            Query::Eco { instance, limit } => match self.eco(instance) {
                Some(v) => cut(v, limit),
                None => QueryAnswer::Absent,
            },
            Query::Cin { class } => QueryAnswer::Count(self.count(*class)),
            Query::Ein { class, limit } => QueryAnswer::Instances(
                self.members(*class)
                    .take(limit.unwrap_or(usize::MAX))
                    .collect(),
            ),
            Query::Ima { term, class, mode } => QueryAnswer::Bit(self.ima(term, *class, *mode)?),
            Query::Iir { feature, .. } => QueryAnswer::Bit(self.iir(*feature)),
            Query::Imo {
                feature,
                class,
                mode,
            } => QueryAnswer::Bit(self.imo(*feature, *class, *mode)),
            Query::Mcp { instance } => QueryAnswer::Distance(self.mcp(instance)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{example, DecisionTree};

    fn x(s: &str) -> Instance {
        s.parse().unwrap()
    }

    #[test]
    fn submask_walk_covers_everything_once() {
        let mut got: Vec<usize> = submasks(0b1011).collect();
        got.sort_unstable();
        assert_eq!(got, [0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn example_values_for_the_forest() {
        let table = Oracle::new()
            .table(&Classifier::Forest(example::forest()))
            .unwrap();
        assert_eq!(table.count(false), 11u8.into());
        assert_eq!(table.emc(&x("1111")), [x("1100")]);
        assert_eq!(table.eco(&x("1111")), Some(vec![x("0111")]));
        assert_eq!(table.mcp(&x("1111")), 2);
        let a: PartialAssignment = [(Var::new(1), true), (Var::new(2), true)]
            .into_iter()
            .collect();
        assert!(table.is_sufficient_reason(&x("1111"), &a));
        let b: PartialAssignment = [(Var::new(1), true)].into_iter().collect();
        assert!(!table.is_sufficient_reason(&x("1111"), &b));
    }

    #[test]
    fn scale_limits() {
        let big = Classifier::Tree(DecisionTree::constant(40, true));
        assert!(matches!(
            Oracle::new().table(&big),
            Err(Error::OverCap { n: 40, cap: 20 })
        ));
        assert!(Oracle::new().forced(true).check_scale(40).is_ok());
        assert!(Oracle::new().forced(true).check_scale(64).is_err());
    }

    #[test]
    fn sat_by_enumeration() {
        assert!(!sat_brute_force(&CnfFormula::from_dimacs(1, &[&[1], &[-1]])).unwrap());
        assert!(sat_brute_force(&CnfFormula::new(3, vec![])).unwrap());
    }

    #[test]
    fn expired_deadline_times_out() {
        let o = Oracle::new().with_deadline(Some(Instant::now()));
        std::thread::sleep(std::time::Duration::from_millis(2));
        let c = Classifier::Tree(DecisionTree::constant(4, true));
        assert!(matches!(o.table(&c), Err(Error::Timeout)));
    }
}
