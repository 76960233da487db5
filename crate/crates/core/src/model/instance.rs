use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{Literal, Term};

/// A feature index. Features are numbered from 1, as `x1 … xn`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(usize);

impl Var {
    /// Panics on 0.
    pub fn new(index: usize) -> Var {
        assert!(index >= 1, "feature indices are 1-based");
        Var(index)
    }

    pub fn try_new(index: usize) -> Option<Var> {
        (index >= 1).then_some(Var(index))
    }

    /// The 1-based index.
    pub fn get(self) -> usize {
        self.0
    }

    /// Position in a 0-based bit vector.
    pub fn idx(self) -> usize {
        self.0 - 1
    }

    pub fn from_idx(idx: usize) -> Var {
        Var(idx + 1)
    }

    /// All features `x1 … xn` in ascending order.
    pub fn range(n: usize) -> impl Iterator<Item = Var> + Clone {
        (1..=n).map(Var)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A point of the Boolean hypercube over `n` features.
///
/// Instances order as binary integers with `x1` the least significant bit,
/// which is also the order in which the oracle reports enumerations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Instance {
    bits: Vec<bool>,
}

impl Instance {
    pub fn new(bits: Vec<bool>) -> Instance {
        Instance { bits }
    }

    pub fn zeros(n: usize) -> Instance {
        Instance::new(vec![false; n])
    }

    pub fn ones(n: usize) -> Instance {
        Instance::new(vec![true; n])
    }

    /// Decodes `index` with feature `x1` as the least significant bit.
    pub fn from_index(n: usize, index: u64) -> Instance {
        assert!(n <= 64, "index encoding is limited to 64 features");
        Instance::new((0..n).map(|i| index >> i & 1 == 1).collect())
    }

    /// Inverse of [`Instance::from_index`]. Panics above 64 features.
    pub fn to_index(&self) -> u64 {
        assert!(self.n() <= 64, "index encoding is limited to 64 features");
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, var: Var) -> bool {
        self.bits[var.idx()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.bits[var.idx()] = value;
    }

    /// Copy of `self` with `var` set to `value`.
    pub fn with(&self, var: Var, value: bool) -> Instance {
        let mut out = self.clone();
        out.set(var, value);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn hamming(&self, other: &Instance) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// `self` has a 1 only where `other` does.
    pub fn ones_within(&self, other: &Instance) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// The full term `ℓ1 ∧ … ∧ ℓn` this instance denotes.
    pub fn to_assignment(&self) -> PartialAssignment {
        PartialAssignment::from_instance(self)
    }

    /// Duplicating map into `{−1,1}^(2n)`: coordinates `2i+1` and `2i+2` are
    /// both `2·x_{i+1} − 1`.
    pub fn transl(&self) -> Vec<i8> {
        self.bits
            .iter()
            .flat_map(|&b| {
                let s = if b { 1 } else { -1 };
                [s, s]
            })
            .collect()
    }

    /// Plain `{0,1} → {−1,1}` map without duplication.
    pub fn signed(&self) -> Vec<i8> {
        self.bits.iter().map(|&b| if b { 1 } else { -1 }).collect()
    }
}

impl Ord for Instance {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for Instance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Bitstring with `x1` leftmost: `"1101"` is `x1=1, x2=1, x3=0, x4=1`.
impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Instance> {
        if s.is_empty() {
            return Err(Error::InstanceSyntax(s.to_string()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InstanceSyntax(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Instance::new)
    }
}

/// A map from features to bits; unassigned features are free.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PartialAssignment {
    entries: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> PartialAssignment {
        PartialAssignment::default()
    }

    pub fn from_instance(x: &Instance) -> PartialAssignment {
        Var::range(x.n()).map(|v| (v, x.get(v))).collect()
    }

    pub fn insert(&mut self, var: Var, value: bool) -> Option<bool> {
        self.entries.insert(var, value)
    }

    pub fn remove(&mut self, var: Var) -> Option<bool> {
        self.entries.remove(&var)
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.entries.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.entries.iter().map(|(&v, &b)| (v, b))
    }

    pub fn max_var(&self) -> Option<Var> {
        self.entries.keys().next_back().copied()
    }

    /// `x` agrees with every assigned feature.
    pub fn is_coherent_with(&self, x: &Instance) -> bool {
        self.iter().all(|(v, b)| v.get() <= x.n() && x.get(v) == b)
    }

    pub fn to_term(&self) -> Term {
        Term::new(self.iter().map(|(v, b)| Literal::new(v, b)))
            .expect("an assignment never holds both polarities")
    }

    /// Dense view over `n` features, indexed by [`Var::idx`].
    pub fn to_dense(&self, n: usize) -> Vec<Option<bool>> {
        let mut dense = vec![None; n];
        for (v, b) in self.iter() {
            if v.idx() < n {
                dense[v.idx()] = Some(b);
            }
        }
        dense
    }
}

impl FromIterator<(Var, bool)> for PartialAssignment {
    fn from_iter<I: IntoIterator<Item = (Var, bool)>>(iter: I) -> Self {
        PartialAssignment {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, b)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}={}", b as u8)?;
        }
        write!(f, "}}")
    }
}
