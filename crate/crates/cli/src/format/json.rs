//! JSON documents for trees, lists, ensembles and networks. Rationals are
//! strings so that no precision is lost.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use xquery_core::{
    BatchNorm, Bnn, BnnBlock, BnnInput, BnnOutput, BoostedTree, DecisionList, DecisionTree,
    Literal, Mlp, Neuron, Node, RandomForest, Rule, Term, Var,
};

use super::rational::{format_rational, parse_rational};
use super::FormatError;

fn value_error(location: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Value {
        location: location.into(),
        message: message.into(),
    }
}

/// A rational written as a string, or as a bare integer for convenience.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
enum RatDoc {
    Text(String),
    Int(i64),
}

impl RatDoc {
    fn from_rational(r: &BigRational) -> RatDoc {
        RatDoc::Text(format_rational(r))
    }

    fn to_rational(&self, location: &str) -> Result<BigRational, FormatError> {
        match self {
            RatDoc::Text(s) => parse_rational(s).map_err(|m| value_error(location, m)),
            RatDoc::Int(i) => Ok(BigRational::from_integer((*i).into())),
        }
    }
}

fn rationals(docs: &[RatDoc], location: &str) -> Result<Vec<BigRational>, FormatError> {
    docs.iter()
        .enumerate()
        .map(|(i, d)| d.to_rational(&format!("{location}[{i}]")))
        .collect()
}

fn rat_docs(rs: &[BigRational]) -> Vec<RatDoc> {
    rs.iter().map(RatDoc::from_rational).collect()
}

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
enum NodeDoc {
    Leaf {
        leaf: u8,
    },
    Decision {
        var: usize,
        lo: Box<NodeDoc>,
        hi: Box<NodeDoc>,
    },
}

impl NodeDoc {
    fn from_node(node: &Node) -> NodeDoc {
        match node {
            Node::Leaf(c) => NodeDoc::Leaf { leaf: *c as u8 },
            Node::Decision { var, lo, hi } => NodeDoc::Decision {
                var: var.get(),
                lo: Box::new(NodeDoc::from_node(lo)),
                hi: Box::new(NodeDoc::from_node(hi)),
            },
        }
    }

    fn to_node(&self, location: &str) -> Result<Node, FormatError> {
        match self {
            NodeDoc::Leaf { leaf: 0 } => Ok(Node::Leaf(false)),
            NodeDoc::Leaf { leaf: 1 } => Ok(Node::Leaf(true)),
            NodeDoc::Leaf { leaf } => Err(value_error(
                location,
                format!("leaf class {leaf} is not 0 or 1"),
            )),
            NodeDoc::Decision { var, lo, hi } => {
                let v = Var::try_new(*var)
                    .ok_or_else(|| value_error(location, "feature indices start at 1"))?;
                Ok(Node::decision(
                    v,
                    lo.to_node(&format!("{location}.lo"))?,
                    hi.to_node(&format!("{location}.hi"))?,
                ))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDoc {
    n: usize,
    root: NodeDoc,
}

pub fn parse_tree(text: &str) -> Result<DecisionTree, FormatError> {
    let doc: TreeDoc = serde_json::from_str(text)?;
    Ok(DecisionTree::new(doc.n, doc.root.to_node("root")?))
}

pub fn write_tree(t: &DecisionTree) -> String {
    to_json(&TreeDoc {
        n: t.n(),
        root: NodeDoc::from_node(t.root()),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    term: Vec<i64>,
    class: u8,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ListDoc {
    n: usize,
    rules: Vec<RuleDoc>,
}

fn class_bit(c: u8, location: &str) -> Result<bool, FormatError> {
    match c {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(value_error(location, format!("class {c} is not 0 or 1"))),
    }
}

pub fn parse_list(text: &str) -> Result<DecisionList, FormatError> {
    let doc: ListDoc = serde_json::from_str(text)?;
    let rules = doc
        .rules
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let location = format!("rules[{i}]");
            let lits = r
                .term
                .iter()
                .map(|&l| {
                    Literal::from_dimacs(l)
                        .ok_or_else(|| value_error(&location, "0 is not a literal"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let term = Term::new(lits).map_err(|e| value_error(&location, e.to_string()))?;
            Ok(Rule::new(term, class_bit(r.class, &location)?))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(DecisionList::new(doc.n, rules))
}

pub fn write_list(l: &DecisionList) -> String {
    to_json(&ListDoc {
        n: l.n(),
        rules: l
            .rules()
            .iter()
            .map(|r| RuleDoc {
                term: r.term.literals().iter().map(|l| l.to_dimacs()).collect(),
                class: r.class as u8,
            })
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ForestDoc {
    n: usize,
    trees: Vec<NodeDoc>,
}

pub fn parse_forest(text: &str) -> Result<RandomForest, FormatError> {
    let doc: ForestDoc = serde_json::from_str(text)?;
    let trees = doc
        .trees
        .iter()
        .enumerate()
        .map(|(i, t)| Ok(DecisionTree::new(doc.n, t.to_node(&format!("trees[{i}]"))?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(RandomForest::new(doc.n, trees))
}

pub fn write_forest(f: &RandomForest) -> String {
    to_json(&ForestDoc {
        n: f.n(),
        trees: f
            .trees()
            .iter()
            .map(|t| NodeDoc::from_node(t.root()))
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct MemberDoc {
    weight: RatDoc,
    #[serde(flatten)]
    tree: NodeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoostedDoc {
    n: usize,
    trees: Vec<MemberDoc>,
}

pub fn parse_boosted(text: &str) -> Result<BoostedTree, FormatError> {
    let doc: BoostedDoc = serde_json::from_str(text)?;
    let members = doc
        .trees
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let location = format!("trees[{i}]");
            Ok((
                DecisionTree::new(doc.n, m.tree.to_node(&location)?),
                m.weight.to_rational(&format!("{location}.weight"))?,
            ))
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(BoostedTree::new(doc.n, members))
}

pub fn write_boosted(b: &BoostedTree) -> String {
    to_json(&BoostedDoc {
        n: b.n(),
        trees: b
            .members()
            .iter()
            .map(|(t, w)| MemberDoc {
                weight: RatDoc::from_rational(w),
                tree: NodeDoc::from_node(t.root()),
            })
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NeuronDoc {
    w: Vec<RatDoc>,
    b: RatDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MlpDoc {
    n: usize,
    layers: Vec<Vec<NeuronDoc>>,
}

pub fn parse_mlp(text: &str) -> Result<Mlp, FormatError> {
    let doc: MlpDoc = serde_json::from_str(text)?;
    let layers = doc
        .layers
        .iter()
        .enumerate()
        .map(|(l, layer)| {
            layer
                .iter()
                .enumerate()
                .map(|(i, nr)| {
                    let location = format!("layers[{l}][{i}]");
                    Ok(Neuron::new(
                        rationals(&nr.w, &format!("{location}.w"))?,
                        nr.b.to_rational(&format!("{location}.b"))?,
                    ))
                })
                .collect::<Result<Vec<_>, FormatError>>()
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(Mlp::new(doc.n, layers))
}

pub fn write_mlp(m: &Mlp) -> String {
    to_json(&MlpDoc {
        n: m.n(),
        layers: m
            .layers()
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|nr| NeuronDoc {
                        w: rat_docs(&nr.weights),
                        b: RatDoc::from_rational(&nr.bias),
                    })
                    .collect()
            })
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BatchNormDoc {
    alpha: Vec<RatDoc>,
    mu: Vec<RatDoc>,
    nu: Vec<RatDoc>,
    gamma: Vec<RatDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    #[serde(rename = "A")]
    a: Vec<Vec<i8>>,
    b: Vec<RatDoc>,
    /// Identity when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bn: Option<BatchNormDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutDoc {
    #[serde(rename = "A")]
    a: Vec<Vec<i8>>,
    b: Vec<RatDoc>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum EncodingDoc {
    Duplicated,
    Signed,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BnnDoc {
    #[serde(rename = "nIn")]
    n_in: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    encoding: Option<EncodingDoc>,
    blocks: Vec<BlockDoc>,
    out: OutDoc,
}

pub fn parse_bnn(text: &str) -> Result<Bnn, FormatError> {
    let doc: BnnDoc = serde_json::from_str(text)?;
    let input = match doc.encoding {
        Some(EncodingDoc::Signed) => BnnInput::Signed,
        _ => BnnInput::Duplicated,
    };
    let blocks = doc
        .blocks
        .iter()
        .enumerate()
        .map(|(k, block)| {
            let location = format!("blocks[{k}]");
            let bias = rationals(&block.b, &format!("{location}.b"))?;
            let norm = match &block.bn {
                None => vec![BatchNorm::identity(); block.a.len()],
                Some(bn) => {
                    let field =
                        |xs: &[RatDoc], name: &str| rationals(xs, &format!("{location}.bn.{name}"));
                    let (alpha, mu, nu, gamma) = (
                        field(&bn.alpha, "alpha")?,
                        field(&bn.mu, "mu")?,
                        field(&bn.nu, "nu")?,
                        field(&bn.gamma, "gamma")?,
                    );
                    let len = alpha.len();
                    if [mu.len(), nu.len(), gamma.len()].iter().any(|&l| l != len) {
                        return Err(value_error(
                            format!("{location}.bn"),
                            "alpha, mu, nu and gamma must have the same length",
                        ));
                    }
                    (0..len)
                        .map(|i| BatchNorm {
                            alpha: alpha[i].clone(),
                            mu: mu[i].clone(),
                            nu: nu[i].clone(),
                            gamma: gamma[i].clone(),
                        })
                        .collect()
                }
            };
            Ok(BnnBlock {
                weights: block.a.clone(),
                bias,
                norm,
            })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let output = BnnOutput {
        weights: doc.out.a.clone(),
        bias: rationals(&doc.out.b, "out.b")?,
    };
    Ok(Bnn::new(doc.n_in, input, blocks, output))
}

pub fn write_bnn(b: &Bnn) -> String {
    let blocks = b
        .blocks()
        .iter()
        .map(|block| {
            let col = |f: fn(&BatchNorm) -> &BigRational| {
                block
                    .norm
                    .iter()
                    .map(|bn| RatDoc::from_rational(f(bn)))
                    .collect()
            };
            BlockDoc {
                a: block.weights.clone(),
                b: rat_docs(&block.bias),
                bn: Some(BatchNormDoc {
                    alpha: col(|bn| &bn.alpha),
                    mu: col(|bn| &bn.mu),
                    nu: col(|bn| &bn.nu),
                    gamma: col(|bn| &bn.gamma),
                }),
            }
        })
        .collect();
    to_json(&BnnDoc {
        n_in: b.n_in(),
        encoding: (b.input() == BnnInput::Signed).then_some(EncodingDoc::Signed),
        blocks,
        out: OutDoc {
            a: b.output().weights.clone(),
            b: rat_docs(&b.output().bias),
        },
    })
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("documents always serialize");
    s.push('\n');
    s
}
