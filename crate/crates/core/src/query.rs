//! The nine queries, their arguments and their answers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::model::{Instance, PartialAssignment, Term, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum QueryTag {
    Emc,
    Dpi,
    Eco,
    Cin,
    Ein,
    Ima,
    Iir,
    Imo,
    Mcp,
}

impl QueryTag {
    pub const ALL: [QueryTag; 9] = [
        QueryTag::Emc,
        QueryTag::Dpi,
        QueryTag::Eco,
        QueryTag::Cin,
        QueryTag::Ein,
        QueryTag::Ima,
        QueryTag::Iir,
        QueryTag::Imo,
        QueryTag::Mcp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QueryTag::Emc => "emc",
            QueryTag::Dpi => "dpi",
            QueryTag::Eco => "eco",
            QueryTag::Cin => "cin",
            QueryTag::Ein => "ein",
            QueryTag::Ima => "ima",
            QueryTag::Iir => "iir",
            QueryTag::Imo => "imo",
            QueryTag::Mcp => "mcp",
        }
    }
}

impl fmt::Display for QueryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QueryTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QueryTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown query `{s}`"))
    }
}

/// Whether IMA asks that the term hold on the whole class or on none of it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum ImaMode {
    #[default]
    Mandatory,
    Forbidden,
}

/// Direction of the flip checked by IMO: towards 1 or towards 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum ImoMode {
    #[default]
    Monotone,
    Antimonotone,
}

/// A query with its arguments. `limit` caps enumerations; `None` means all.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Query {
    Emc {
        instance: Instance,
        limit: Option<usize>,
    },
    Dpi {
        instance: Instance,
        order: Option<Vec<Var>>,
    },
    Eco {
        instance: Instance,
        limit: Option<usize>,
    },
    Cin {
        class: bool,
    },
    Ein {
        class: bool,
        limit: Option<usize>,
    },
    Ima {
        term: Term,
        class: bool,
        mode: ImaMode,
    },
    Iir {
        feature: Var,
        class: bool,
    },
    Imo {
        feature: Var,
        class: bool,
        mode: ImoMode,
    },
    Mcp {
        instance: Instance,
    },
}

impl Query {
    pub fn tag(&self) -> QueryTag {
        match self {
            Query::Emc { .. } => QueryTag::Emc,
            Query::Dpi { .. } => QueryTag::Dpi,
            Query::Eco { .. } => QueryTag::Eco,
            Query::Cin { .. } => QueryTag::Cin,
            Query::Ein { .. } => QueryTag::Ein,
            Query::Ima { .. } => QueryTag::Ima,
            Query::Iir { .. } => QueryTag::Iir,
            Query::Imo { .. } => QueryTag::Imo,
            Query::Mcp { .. } => QueryTag::Mcp,
        }
    }

    pub fn instance(&self) -> Option<&Instance> {
        match self {
            Query::Emc { instance, .. }
            | Query::Dpi { instance, .. }
            | Query::Eco { instance, .. }
            | Query::Mcp { instance } => Some(instance),
            _ => None,
        }
    }

    /// Checks argument shapes against a classifier over `n` features.
    pub fn check(&self, n: usize) -> crate::Result<()> {
        use crate::Error;
        if let Some(x) = self.instance() {
            if x.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.n(),
                });
            }
        }
        match self {
            Query::Dpi {
                order: Some(order), ..
            } => check_order(order, n),
            Query::Ima { term, .. } => {
                if !term.is_satisfiable() {
                    let var = term.literals()[0].var;
                    return Err(Error::ContradictoryTerm(var));
                }
                match term.max_var() {
                    Some(v) if v.get() > n => Err(Error::FeatureOutOfRange { var: v.get(), n }),
                    _ => Ok(()),
                }
            }
            Query::Iir { feature, .. } | Query::Imo { feature, .. } if feature.get() > n => {
                Err(Error::FeatureOutOfRange {
                    var: feature.get(),
                    n,
                })
            }
            _ => Ok(()),
        }
    }
}

/// An elimination order must be a permutation of `1..=n`.
pub(crate) fn check_order(order: &[Var], n: usize) -> crate::Result<()> {
    let mut seen = vec![false; n];
    for v in order {
        if v.get() > n || std::mem::replace(&mut seen[v.idx()], true) {
            return Err(crate::Error::InvalidOrder { n });
        }
    }
    if order.len() != n {
        return Err(crate::Error::InvalidOrder { n });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QueryAnswer {
    /// EMC, ECO, EIN. Sorted ascending as binary integers.
    Instances(Vec<Instance>),
    /// DPI.
    Assignment(PartialAssignment),
    /// CIN.
    Count(BigUint),
    /// IMA, IIR, IMO.
    Bit(bool),
    /// MCP.
    Distance(usize),
    /// ECO when the opposite class is empty.
    Absent,
}

impl QueryAnswer {
    /// Canonical form for comparisons: instance sets sorted.
    pub fn normalized(mut self) -> QueryAnswer {
        if let QueryAnswer::Instances(v) = &mut self {
            v.sort();
            v.dedup();
        }
        self
    }
}
