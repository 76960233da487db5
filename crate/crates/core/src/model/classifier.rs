use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

use super::linear::LinearThreshold;
use super::tree::FlatTree;
use super::{
    Bnn, BnnInput, BoostedTree, CnfFormula, DecisionList, DecisionTree, DnfFormula, Instance,
    Literal, Mlp, RandomForest, Term, Var,
};

/// One broken structural invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub kind: &'static str,
    pub location: String,
    pub detail: String,
}

impl Violation {
    fn new(kind: &'static str, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            location: location.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn read_once(location: String, var: Var) -> Self {
        Violation::new("read-once", location, format!("{var} repeats on the path"))
    }

    pub(crate) fn var_out_of_range(location: String, var: Var, n: usize) -> Self {
        Violation::new("feature-range", location, format!("{var} exceeds n = {n}"))
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.location, self.detail)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    Cnf,
    Dnf,
    Tree,
    List,
    Forest,
    Boosted,
    Mlp,
    Bnn,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Cnf,
        Family::Dnf,
        Family::Tree,
        Family::List,
        Family::Forest,
        Family::Boosted,
        Family::Mlp,
        Family::Bnn,
    ];

    /// Short tag, also used as the file-format name.
    pub fn tag(self) -> &'static str {
        match self {
            Family::Cnf => "cnf",
            Family::Dnf => "dnf",
            Family::Tree => "dt",
            Family::List => "dl",
            Family::Forest => "rf",
            Family::Boosted => "bt",
            Family::Mlp => "mlp",
            Family::Bnn => "bnn",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Family, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// Any of the supported classifier families behind one evaluation contract.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classifier {
    Cnf(CnfFormula),
    Dnf(DnfFormula),
    Tree(DecisionTree),
    List(DecisionList),
    Forest(RandomForest),
    Boosted(BoostedTree),
    Mlp(Mlp),
    Bnn(Bnn),
}

impl Classifier {
    pub fn family(&self) -> Family {
        match self {
            Classifier::Cnf(_) => Family::Cnf,
            Classifier::Dnf(_) => Family::Dnf,
            Classifier::Tree(_) => Family::Tree,
            Classifier::List(_) => Family::List,
            Classifier::Forest(_) => Family::Forest,
            Classifier::Boosted(_) => Family::Boosted,
            Classifier::Mlp(_) => Family::Mlp,
            Classifier::Bnn(_) => Family::Bnn,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Classifier::Cnf(c) => c.n(),
            Classifier::Dnf(d) => d.n(),
            Classifier::Tree(t) => t.n(),
            Classifier::List(l) => l.n(),
            Classifier::Forest(f) => f.n(),
            Classifier::Boosted(b) => b.n(),
            Classifier::Mlp(m) => m.n(),
            Classifier::Bnn(b) => b.n(),
        }
    }

    pub fn as_tree(&self) -> Option<&DecisionTree> {
        match self {
            Classifier::Tree(t) => Some(t),
            _ => None,
        }
    }

    /// Checked evaluation: validates the structure and the instance width.
    /// Sweeps over many instances should go through [`Classifier::compile`].
    pub fn evaluate(&self, x: &Instance) -> Result<bool> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.n(),
            });
        }
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(self.evaluate_unchecked(x))
    }

    /// Evaluation without validation. Malformed neural nets may panic.
    pub fn evaluate_unchecked(&self, x: &Instance) -> bool {
        match self {
            Classifier::Cnf(c) => c.evaluate(x),
            Classifier::Dnf(d) => d.evaluate(x),
            Classifier::Tree(t) => t.evaluate(x),
            Classifier::List(l) => l.evaluate(x),
            Classifier::Forest(f) => f.evaluate(x),
            Classifier::Boosted(b) => b.evaluate(x),
            Classifier::Mlp(m) => m.evaluate(x),
            Classifier::Bnn(b) => b.evaluate(x),
        }
    }

    /// Every broken invariant; empty iff the classifier is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n() == 0 {
            out.push(Violation::new(
                "feature-count",
                "model",
                "n must be positive",
            ));
        }
        match self {
            Classifier::Cnf(c) => {
                for (i, clause) in c.clauses().iter().enumerate() {
                    check_literals(
                        clause.literals(),
                        c.n(),
                        &format!("clause {}", i + 1),
                        &mut out,
                    );
                }
            }
            Classifier::Dnf(d) => {
                for (i, term) in d.terms().iter().enumerate() {
                    check_literals(term.literals(), d.n(), &format!("term {}", i + 1), &mut out);
                }
            }
            Classifier::Tree(t) => out.extend(t.violations("")),
            Classifier::List(l) => validate_list(l, &mut out),
            Classifier::Forest(f) => {
                if f.trees().is_empty() {
                    out.push(Violation::new("ensemble-size", "forest", "no trees"));
                }
                for (i, t) in f.trees().iter().enumerate() {
                    validate_member(t, f.n(), i, &mut out);
                }
            }
            Classifier::Boosted(b) => validate_boosted(b, &mut out),
            Classifier::Mlp(m) => validate_mlp(m, &mut out),
            Classifier::Bnn(b) => validate_bnn(b, &mut out),
        }
        out
    }

    /// Validates, then lowers to an integer-arithmetic evaluator.
    pub fn compile(&self) -> Result<Compiled> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let kind = match self {
            Classifier::Cnf(c) => CompiledKind::Cnf(
                c.clauses()
                    .iter()
                    .map(|cl| lower_literals(cl.literals()))
                    .collect(),
            ),
            Classifier::Dnf(d) => CompiledKind::Dnf(d.terms().iter().map(lower_term).collect()),
            Classifier::Tree(t) => CompiledKind::Tree(FlatTree::new(t.root())),
            Classifier::List(l) => CompiledKind::List(
                l.rules()
                    .iter()
                    .map(|r| (lower_term(&r.term), r.class))
                    .collect(),
            ),
            Classifier::Forest(f) => {
                CompiledKind::Forest(f.trees().iter().map(|t| FlatTree::new(t.root())).collect())
            }
            Classifier::Boosted(b) => {
                let weights: Vec<BigRational> =
                    b.members().iter().map(|(_, w)| w.clone()).collect();
                let half = -BigRational::new(One::one(), 2.into());
                CompiledKind::Boosted(
                    b.members()
                        .iter()
                        .map(|(t, _)| FlatTree::new(t.root()))
                        .collect(),
                    LinearThreshold::new(&weights, &half, true),
                )
            }
            Classifier::Mlp(m) => CompiledKind::Mlp(
                m.layers()
                    .iter()
                    .map(|layer| {
                        layer
                            .iter()
                            .map(|nr| LinearThreshold::new(&nr.weights, &nr.bias, false))
                            .collect()
                    })
                    .collect(),
            ),
            Classifier::Bnn(b) => compile_bnn(b),
        };
        Ok(Compiled { n: self.n(), kind })
    }
}

fn check_literals(literals: &[Literal], n: usize, location: &str, out: &mut Vec<Violation>) {
    for l in literals {
        if l.var.get() > n {
            out.push(Violation::var_out_of_range(location.to_string(), l.var, n));
        }
    }
}

fn validate_list(l: &DecisionList, out: &mut Vec<Violation>) {
    for (i, rule) in l.rules().iter().enumerate() {
        check_literals(rule.term.literals(), l.n(), &format!("rule {}", i + 1), out);
    }
    match l.rules().last() {
        Some(last) if last.term.is_empty() => {}
        Some(_) => out.push(Violation::new(
            "default-rule",
            format!("rule {}", l.rules().len()),
            "last rule must have the empty term",
        )),
        None => out.push(Violation::new("default-rule", "list", "no rules")),
    }
}

fn validate_member(t: &DecisionTree, n: usize, i: usize, out: &mut Vec<Violation>) {
    let location = format!("tree {}/", i + 1);
    if t.n() != n {
        out.push(Violation::new(
            "ensemble-width",
            format!("tree {}", i + 1),
            format!("tree has n = {}, ensemble has n = {n}", t.n()),
        ));
    }
    out.extend(t.violations(&location));
}

fn validate_boosted(b: &BoostedTree, out: &mut Vec<Violation>) {
    if b.members().is_empty() {
        out.push(Violation::new("ensemble-size", "boosted tree", "no trees"));
    }
    for (i, (t, w)) in b.members().iter().enumerate() {
        validate_member(t, b.n(), i, out);
        if w.is_negative() {
            out.push(Violation::new(
                "negative-weight",
                format!("tree {}", i + 1),
                format!("weight {w} < 0"),
            ));
        }
    }
    let sum = b.weight_sum();
    if !b.members().is_empty() && !sum.is_one() {
        out.push(Violation::new(
            "weight-sum",
            "boosted tree",
            format!("weights sum to {sum}, not 1"),
        ));
    }
}

fn validate_mlp(m: &Mlp, out: &mut Vec<Violation>) {
    let layers = m.layers();
    if layers.is_empty() {
        out.push(Violation::new("layer-shape", "network", "no output layer"));
        return;
    }
    let mut width = m.n();
    for (l, layer) in layers.iter().enumerate() {
        for (i, neuron) in layer.iter().enumerate() {
            if neuron.weights.len() != width {
                out.push(Violation::new(
                    "layer-shape",
                    format!("layer {} neuron {}", l + 2, i + 1),
                    format!("{} weights for {width} inputs", neuron.weights.len()),
                ));
            }
        }
        width = layer.len();
    }
    if width != 1 {
        out.push(Violation::new(
            "layer-shape",
            format!("layer {}", layers.len() + 1),
            format!("output layer has {width} neurons, expected 1"),
        ));
    }
}

fn check_signs(rows: &[Vec<i8>], location: &str, out: &mut Vec<Violation>) {
    for (r, row) in rows.iter().enumerate() {
        if let Some(c) = row.iter().position(|&a| a != 1 && a != -1) {
            out.push(Violation::new(
                "sign-matrix",
                format!("{location} row {} column {}", r + 1, c + 1),
                format!("entry {} is not ±1", row[c]),
            ));
        }
    }
}

fn check_width(rows: &[Vec<i8>], width: usize, location: &str, out: &mut Vec<Violation>) {
    for (r, row) in rows.iter().enumerate() {
        if row.len() != width {
            out.push(Violation::new(
                "block-shape",
                format!("{location} row {}", r + 1),
                format!("{} columns for {width} inputs", row.len()),
            ));
        }
    }
}

fn validate_bnn(b: &Bnn, out: &mut Vec<Violation>) {
    if b.input() == BnnInput::Duplicated && !b.n_in().is_multiple_of(2) {
        out.push(Violation::new(
            "input-width",
            "network",
            format!(
                "duplicated encoding needs an even input width, got {}",
                b.n_in()
            ),
        ));
    }
    let mut width = b.n_in();
    for (k, block) in b.blocks().iter().enumerate() {
        let location = format!("block {}", k + 1);
        check_width(&block.weights, width, &location, out);
        check_signs(&block.weights, &location, out);
        let rows = block.outputs();
        if block.bias.len() != rows || block.norm.len() != rows {
            out.push(Violation::new(
                "block-shape",
                location.clone(),
                format!(
                    "{rows} rows but {} biases and {} batch-norm entries",
                    block.bias.len(),
                    block.norm.len()
                ),
            ));
        }
        for (i, bn) in block.norm.iter().enumerate() {
            if !bn.nu.is_positive() {
                out.push(Violation::new(
                    "batch-norm",
                    format!("{location} output {}", i + 1),
                    format!("nu = {} must be positive", bn.nu),
                ));
            }
        }
        width = rows;
    }
    let output = b.output();
    if output.weights.len() != 2 || output.bias.len() != 2 {
        out.push(Violation::new(
            "output-rows",
            "output block",
            format!(
                "{} rows and {} biases, expected 2",
                output.weights.len(),
                output.bias.len()
            ),
        ));
    }
    check_width(&output.weights, width, "output block", out);
    check_signs(&output.weights, "output block", out);
}

fn lower_literals(literals: &[Literal]) -> Vec<(usize, bool)> {
    literals.iter().map(|l| (l.var.idx(), l.positive)).collect()
}

/// `None` for an unsatisfiable term.
fn lower_term(t: &Term) -> Option<Vec<(usize, bool)>> {
    t.is_satisfiable().then(|| lower_literals(t.literals()))
}

fn compile_bnn(b: &Bnn) -> CompiledKind {
    let int = |a: i8| BigRational::from_integer(a.into());
    let blocks = b
        .blocks()
        .iter()
        .map(|block| {
            block
                .weights
                .iter()
                .zip(&block.bias)
                .zip(&block.norm)
                .map(|((row, bias), bn)| {
                    // α((A·x + b) − μ)/ν + γ ≥ 0, rewritten as an affine form in x.
                    let scale = &bn.alpha / &bn.nu;
                    let weights: Vec<BigRational> = row.iter().map(|&a| &scale * int(a)).collect();
                    let offset = &scale * (bias - &bn.mu) + &bn.gamma;
                    LinearThreshold::new(&weights, &offset, false)
                })
                .collect()
        })
        .collect();
    let out = b.output();
    // Positive iff score 2 strictly beats score 1.
    let weights: Vec<BigRational> = out.weights[1]
        .iter()
        .zip(&out.weights[0])
        .map(|(&w2, &w1)| int(w2) - int(w1))
        .collect();
    let offset = &out.bias[1] - &out.bias[0];
    CompiledKind::Bnn {
        input: b.input(),
        blocks,
        output: LinearThreshold::new(&weights, &offset, true),
    }
}

/// A validated classifier lowered to integer arithmetic for fast sweeps.
#[derive(Clone, Debug)]
pub struct Compiled {
    n: usize,
    kind: CompiledKind,
}

/// `(bit index, polarity)` pairs; `None` marks an unsatisfiable term.
type Lits = Vec<(usize, bool)>;

#[derive(Clone, Debug)]
enum CompiledKind {
    Cnf(Vec<Lits>),
    Dnf(Vec<Option<Lits>>),
    Tree(FlatTree),
    List(Vec<(Option<Lits>, bool)>),
    Forest(Vec<FlatTree>),
    Boosted(Vec<FlatTree>, LinearThreshold),
    Mlp(Vec<Vec<LinearThreshold>>),
    Bnn {
        input: BnnInput,
        blocks: Vec<Vec<LinearThreshold>>,
        output: LinearThreshold,
    },
}

fn holds(literals: &[(usize, bool)], bits: &[bool]) -> bool {
    literals.iter().all(|&(i, p)| bits[i] == p)
}

impl Compiled {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `bits[i]` is the value of feature `x_{i+1}`.
    pub fn evaluate(&self, bits: &[bool]) -> bool {
        debug_assert_eq!(bits.len(), self.n);
        match &self.kind {
            CompiledKind::Cnf(clauses) => {
                clauses.iter().all(|c| c.iter().any(|&(i, p)| bits[i] == p))
            }
            CompiledKind::Dnf(terms) => terms
                .iter()
                .any(|t| t.as_ref().is_some_and(|t| holds(t, bits))),
            CompiledKind::Tree(t) => t.evaluate(bits),
            CompiledKind::List(rules) => rules
                .iter()
                .find(|(t, _)| t.as_ref().is_some_and(|t| holds(t, bits)))
                .is_some_and(|&(_, c)| c),
            CompiledKind::Forest(trees) => {
                let votes = trees.iter().filter(|t| t.evaluate(bits)).count();
                2 * votes > trees.len()
            }
            CompiledKind::Boosted(trees, vote) => {
                vote.fires(trees.iter().map(|t| t.evaluate(bits) as i64))
            }
            CompiledKind::Mlp(layers) => {
                let mut signal: Vec<i64> = bits.iter().map(|&b| b as i64).collect();
                for layer in layers {
                    signal = layer
                        .iter()
                        .map(|unit| unit.fires(signal.iter().copied()) as i64)
                        .collect();
                }
                signal[0] == 1
            }
            CompiledKind::Bnn {
                input,
                blocks,
                output,
            } => {
                let mut signal: Vec<i64> = match input {
                    BnnInput::Duplicated => bits
                        .iter()
                        .flat_map(|&b| {
                            let s = if b { 1 } else { -1 };
                            [s, s]
                        })
                        .collect(),
                    BnnInput::Signed => bits.iter().map(|&b| if b { 1 } else { -1 }).collect(),
                };
                for block in blocks {
                    signal = block
                        .iter()
                        .map(|unit| {
                            if unit.fires(signal.iter().copied()) {
                                1
                            } else {
                                -1
                            }
                        })
                        .collect();
                }
                output.fires(signal)
            }
        }
    }

    pub fn evaluate_instance(&self, x: &Instance) -> bool {
        self.evaluate(x.bits())
    }
}
