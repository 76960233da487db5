use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Instance;

/// A threshold unit: fires when `Σ w_j·o_j + b ≥ 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Neuron {
    pub weights: Vec<BigRational>,
    pub bias: BigRational,
}

impl Neuron {
    pub fn new(weights: Vec<BigRational>, bias: BigRational) -> Neuron {
        Neuron { weights, bias }
    }

    pub fn from_ints(weights: &[i64], bias: i64) -> Neuron {
        Neuron::new(
            weights
                .iter()
                .map(|&w| BigRational::from_integer(w.into()))
                .collect(),
            BigRational::from_integer(bias.into()),
        )
    }

    fn fires(&self, inputs: &[bool]) -> bool {
        let z = self
            .weights
            .iter()
            .zip(inputs)
            .filter(|(_, &o)| o)
            .fold(self.bias.clone(), |acc, (w, _)| acc + w);
        !z.is_negative()
    }
}

/// A Boolean multilayer perceptron. `layers` lists the non-input layers; the
/// input layer is the `n` features themselves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mlp {
    n: usize,
    layers: Vec<Vec<Neuron>>,
}

impl Mlp {
    pub fn new(n: usize, layers: Vec<Vec<Neuron>>) -> Mlp {
        Mlp { n, layers }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Vec<Neuron>] {
        &self.layers
    }

    /// Neuron count including the input layer.
    pub fn size(&self) -> usize {
        self.n + self.layers.iter().map(Vec::len).sum::<usize>()
    }

    pub fn evaluate(&self, x: &Instance) -> bool {
        let mut signal = x.bits().to_vec();
        for layer in &self.layers {
            signal = layer.iter().map(|neuron| neuron.fires(&signal)).collect();
        }
        signal[0]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BatchNorm {
    pub alpha: BigRational,
    pub mu: BigRational,
    pub nu: BigRational,
    pub gamma: BigRational,
}

impl BatchNorm {
    /// `α = ν = 1`, `μ = γ = 0`.
    pub fn identity() -> BatchNorm {
        BatchNorm {
            alpha: BigRational::from_integer(1.into()),
            mu: BigRational::zero(),
            nu: BigRational::from_integer(1.into()),
            gamma: BigRational::zero(),
        }
    }

    fn apply(&self, y: &BigRational) -> BigRational {
        &self.alpha * ((y - &self.mu) / &self.nu) + &self.gamma
    }
}

/// LIN → BN → BIN over `{−1,1}` vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BnnBlock {
    pub weights: Vec<Vec<i8>>,
    pub bias: Vec<BigRational>,
    pub norm: Vec<BatchNorm>,
}

impl BnnBlock {
    pub fn inputs(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    pub fn outputs(&self) -> usize {
        self.weights.len()
    }

    fn apply(&self, x: &[i8]) -> Vec<i8> {
        self.weights
            .iter()
            .zip(&self.bias)
            .zip(&self.norm)
            .map(|((row, b), bn)| {
                let y = BigRational::from_integer(dot(row, x).into()) + b;
                if bn.apply(&y).is_negative() {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }
}

/// LIN followed by ARGMAX over two scores.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BnnOutput {
    pub weights: Vec<Vec<i8>>,
    pub bias: Vec<BigRational>,
}

/// How a Boolean instance is presented to the network.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum BnnInput {
    /// `transl`: each feature duplicated, `2n` inputs.
    #[default]
    Duplicated,
    /// One `2x − 1` input per feature.
    Signed,
}

/// A binarized neural network with two output classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bnn {
    n_in: usize,
    input: BnnInput,
    blocks: Vec<BnnBlock>,
    output: BnnOutput,
}

impl Bnn {
    pub fn new(n_in: usize, input: BnnInput, blocks: Vec<BnnBlock>, output: BnnOutput) -> Bnn {
        Bnn {
            n_in,
            input,
            blocks,
            output,
        }
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn input(&self) -> BnnInput {
        self.input
    }

    /// Number of Boolean features.
    pub fn n(&self) -> usize {
        match self.input {
            BnnInput::Duplicated => self.n_in / 2,
            BnnInput::Signed => self.n_in,
        }
    }

    pub fn blocks(&self) -> &[BnnBlock] {
        &self.blocks
    }

    pub fn output(&self) -> &BnnOutput {
        &self.output
    }

    pub fn size(&self) -> usize {
        self.n_in
            + self.blocks.iter().map(BnnBlock::outputs).sum::<usize>()
            + self.output.weights.len()
    }

    pub fn encode(&self, x: &Instance) -> Vec<i8> {
        match self.input {
            BnnInput::Duplicated => x.transl(),
            BnnInput::Signed => x.signed(),
        }
    }

    /// Output label in `{1, 2}`. Equal scores give 1.
    pub fn classify(&self, input: &[i8]) -> usize {
        let mut h = input.to_vec();
        for block in &self.blocks {
            h = block.apply(&h);
        }
        let score = |row: usize| {
            BigRational::from_integer(dot(&self.output.weights[row], &h).into())
                + &self.output.bias[row]
        };
        if score(1) > score(0) {
            2
        } else {
            1
        }
    }

    /// Class 2 is the positive class.
    pub fn evaluate(&self, x: &Instance) -> bool {
        self.classify(&self.encode(x)) == 2
    }
}

fn dot(row: &[i8], x: &[i8]) -> i64 {
    row.iter().zip(x).map(|(&a, &b)| a as i64 * b as i64).sum()
}
