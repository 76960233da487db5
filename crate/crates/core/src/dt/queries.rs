//! The nine queries on decision trees.

use crate::error::{Error, Result};
use crate::model::{Classifier, DecisionTree, Instance, Node, PartialAssignment, Term, Var};
use crate::query::{check_order, ImaMode, ImoMode, Query, QueryAnswer};

use super::ops::{complement, condition, condition_dense, entails, equivalent, reaches};
use super::stream::{Fill, InstanceStream};
use super::weights::{optimize, WeightFn};

/// The tree whose models are the instances of class `class`.
fn class_tree(tree: &DecisionTree, class: bool) -> DecisionTree {
    if class {
        tree.clone()
    } else {
        complement(tree)
    }
}

/// EIN: every instance of class `class`.
pub fn enumerate_class(tree: &DecisionTree, class: bool) -> InstanceStream {
    InstanceStream::new(tree, class, vec![Fill::Free; tree.n()])
}

/// EMC: the instances of `x`'s class whose ones lie within `x`'s ones and
/// are fewest.
pub fn emc(tree: &DecisionTree, x: &Instance) -> InstanceStream {
    let w = class_tree(tree, tree.evaluate(x));
    let zeros: PartialAssignment = Var::range(x.n())
        .filter(|&v| !x.get(v))
        .map(|v| (v, false))
        .collect();
    let below = condition(&w, &zeros);
    let opt =
        optimize(&below, &WeightFn::ones_count(x.n())).expect("x is a model of its own class");
    InstanceStream::new(&opt, true, vec![Fill::Fixed(false); x.n()])
}

pub fn emc_one(tree: &DecisionTree, x: &Instance) -> Instance {
    emc(tree, x).next().expect("x is a model of its own class")
}

/// ECO: the opposite-class instances nearest to `x`. Empty when the
/// opposite class is.
pub fn eco(tree: &DecisionTree, x: &Instance) -> InstanceStream {
    let w = class_tree(tree, !tree.evaluate(x));
    match optimize(&w, &WeightFn::hamming(x)) {
        Ok(opt) => {
            let fill = x.bits().iter().map(|&b| Fill::Fixed(b)).collect();
            InstanceStream::new(&opt, true, fill)
        }
        Err(_) => InstanceStream::empty(),
    }
}

pub fn eco_one(tree: &DecisionTree, x: &Instance) -> Option<Instance> {
    eco(tree, x).next()
}

/// DPI: drops features of `x` in `order` (ascending by default) while the
/// rest still forces `x`'s class.
pub fn dpi(tree: &DecisionTree, x: &Instance, order: Option<&[Var]>) -> Result<PartialAssignment> {
    let n = x.n();
    let default: Vec<Var>;
    let order = match order {
        Some(o) => {
            check_order(o, n)?;
            o
        }
        None => {
            default = Var::range(n).collect();
            &default
        }
    };
    let class = tree.evaluate(x);
    let mut a: Vec<Option<bool>> = x.bits().iter().map(|&b| Some(b)).collect();
    for v in order {
        let kept = a[v.idx()].take();
        if reaches(tree.root(), &a, !class) {
            a[v.idx()] = kept;
        }
    }
    Ok(a.iter()
        .enumerate()
        .filter_map(|(i, b)| b.map(|b| (Var::from_idx(i), b)))
        .collect())
}

/// IMA. Mandatory: every literal of `term` holds on the whole class.
/// Forbidden: `term` holds on no instance of the class.
pub fn ima(tree: &DecisionTree, term: &Term, class: bool, mode: ImaMode) -> Result<bool> {
    let Some(a) = term.to_assignment() else {
        return Err(Error::ContradictoryTerm(term.literals()[0].var));
    };
    let root = class_tree(tree, class).into_root();
    let n = tree.n();
    Ok(match mode {
        ImaMode::Mandatory => term.literals().iter().all(|l| {
            let mut dense = vec![None; n];
            dense[l.var.idx()] = Some(!l.positive);
            !reaches(&root, &dense, true)
        }),
        ImaMode::Forbidden => !reaches(&root, &a.to_dense(n), true),
    })
}

/// IIR: flipping `feature` never changes the class. The same answer holds
/// for both classes.
pub fn iir(tree: &DecisionTree, feature: Var) -> bool {
    let (t0, t1) = split(tree, feature);
    equivalent(&t0, &t1)
}

/// IMO: setting `feature` to 1 (monotone) or 0 (antimonotone) keeps every
/// instance of class `class` in that class.
pub fn imo(tree: &DecisionTree, feature: Var, class: bool, mode: ImoMode) -> bool {
    let (t0, t1) = split(&class_tree(tree, class), feature);
    match mode {
        ImoMode::Monotone => entails(&t0, &t1),
        ImoMode::Antimonotone => entails(&t1, &t0),
    }
}

fn split(tree: &DecisionTree, feature: Var) -> (DecisionTree, DecisionTree) {
    let mut a = vec![None; tree.n().max(feature.get())];
    a[feature.idx()] = Some(false);
    let t0 = condition_dense(tree, &a);
    a[feature.idx()] = Some(true);
    (t0, condition_dense(tree, &a))
}

/// MCP: the largest Hamming distance from `x` to an instance of its class.
pub fn mcp(tree: &DecisionTree, x: &Instance) -> usize {
    fn go(node: &Node, x: &Instance, depth: usize) -> Option<usize> {
        match node {
            Node::Leaf(false) => None,
            Node::Leaf(true) => Some(x.n() - depth),
            Node::Decision { var, lo, hi } => {
                let xv = x.get(*var);
                let a = go(lo, x, depth + 1).map(|g| g + xv as usize);
                let b = go(hi, x, depth + 1).map(|g| g + !xv as usize);
                a.max(b)
            }
        }
    }
    let w = class_tree(tree, tree.evaluate(x));
    go(w.root(), x, 0).expect("x is a model of its own class")
}

/// The model of `tree` that is smallest as a binary integer with `x1` least
/// significant.
pub fn first_model(tree: &DecisionTree) -> Option<Instance> {
    let n = tree.n();
    let mut a = vec![None; n];
    if !reaches(tree.root(), &a, true) {
        return None;
    }
    for i in (0..n).rev() {
        a[i] = Some(false);
        if !reaches(tree.root(), &a, true) {
            a[i] = Some(true);
        }
    }
    Some(Instance::new(a.into_iter().map(|b| b.unwrap()).collect()))
}

fn collect(stream: InstanceStream, limit: Option<usize>) -> QueryAnswer {
    let mut v: Vec<Instance> = stream.take(limit.unwrap_or(usize::MAX)).collect();
    v.sort();
    QueryAnswer::Instances(v)
}

/// Answers `query` on `tree`. Enumerations are cut at `limit` in stream
/// order, then sorted.
pub fn answer(tree: &DecisionTree, query: &Query) -> Result<QueryAnswer> {
    let violations = Classifier::Tree(tree.clone()).validate();
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    query.check(tree.n())?;
    Ok(match query {
        Query::Emc { instance, limit } => collect(emc(tree, instance), *limit),
        Query::Dpi { instance, order } => {
            QueryAnswer::Assignment(dpi(tree, instance, order.as_deref())?)
        }
        Query::Eco { instance, limit } => {
            let mut s = eco(tree, instance).peekable();
            if s.peek().is_none() {
                QueryAnswer::Absent
            } else {
                let mut v: Vec<Instance> = s.take(limit.unwrap_or(usize::MAX)).collect();
                v.sort();
                QueryAnswer::Instances(v)
            }
        }
        Query::Cin { class } => QueryAnswer::Count(super::count_models(tree, *class)),
        Query::Ein { class, limit } => collect(enumerate_class(tree, *class), *limit),
        Query::Ima { term, class, mode } => QueryAnswer::Bit(ima(tree, term, *class, *mode)?),
        Query::Iir { feature, .. } => QueryAnswer::Bit(iir(tree, *feature)),
        Query::Imo {
            feature,
            class,
            mode,
        } => QueryAnswer::Bit(imo(tree, *feature, *class, *mode)),
        Query::Mcp { instance } => QueryAnswer::Distance(mcp(tree, instance)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::example;

    fn x(s: &str) -> Instance {
        s.parse().unwrap()
    }

    #[test]
    fn example_values() {
        let t = example::tree();
        let all_ones = x("1111");
        assert_eq!(emc(&t, &all_ones).collect::<Vec<_>>(), [x("1100")]);
        assert_eq!(eco(&t, &all_ones).collect::<Vec<_>>(), [x("0111")]);
        assert_eq!(mcp(&t, &all_ones), 2);
        assert!(enumerate_class(&t, false).any(|y| y == x("0111")));
        assert!(ima(
            &t,
            &Term::from_dimacs(&[1]).unwrap(),
            true,
            ImaMode::Mandatory
        )
        .unwrap());
        assert!(!ima(
            &t,
            &Term::from_dimacs(&[4]).unwrap(),
            true,
            ImaMode::Mandatory
        )
        .unwrap());
        for v in Var::range(4) {
            assert!(!iir(&t, v));
            assert!(imo(&t, v, true, ImoMode::Monotone));
        }
    }

    #[test]
    fn dpi_depends_on_the_order() {
        let t = example::tree();
        let all_ones = x("1111");
        let ascending = dpi(&t, &all_ones, None).unwrap();
        assert_eq!(ascending.to_term(), Term::from_dimacs(&[1, 3, 4]).unwrap());
        let order: Vec<Var> = [3, 4, 1, 2].into_iter().map(Var::new).collect();
        let other = dpi(&t, &all_ones, Some(&order)).unwrap();
        assert_eq!(other.to_term(), Term::from_dimacs(&[1, 2]).unwrap());
    }

    #[test]
    fn constant_trees() {
        let top = DecisionTree::constant(3, true);
        let bottom = DecisionTree::constant(3, false);
        let y = x("101");
        assert_eq!(emc(&top, &y).collect::<Vec<_>>(), [x("000")]);
        assert!(eco_one(&top, &y).is_none());
        assert!(dpi(&top, &y, None).unwrap().is_empty());
        assert_eq!(mcp(&top, &y), 3);
        assert!(iir(&top, Var::new(2)));
        assert!(ima(
            &bottom,
            &Term::from_dimacs(&[1]).unwrap(),
            true,
            ImaMode::Mandatory
        )
        .unwrap());
        assert!(imo(&bottom, Var::new(1), true, ImoMode::Monotone));
    }

    #[test]
    fn imo_detects_a_decreasing_feature() {
        // Positive iff x1 = 0.
        let t = DecisionTree::new(
            1,
            Node::decision(Var::new(1), Node::Leaf(true), Node::Leaf(false)),
        );
        assert!(!imo(&t, Var::new(1), true, ImoMode::Monotone));
        assert!(imo(&t, Var::new(1), true, ImoMode::Antimonotone));
    }

    #[test]
    fn first_model_is_the_smallest_index() {
        let t = example::tree();
        assert_eq!(first_model(&t), Some(x("1100")));
        assert_eq!(first_model(&DecisionTree::constant(2, false)), None);
    }
}
