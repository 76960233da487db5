use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `Σ c_j·s_j ≥ t` over integer coefficients, for signals in `{−1, 0, 1}`.
///
/// Built from a rational affine form by clearing denominators, which keeps
/// the comparison exact.
#[derive(Clone, Debug)]
pub(crate) enum LinearThreshold {
    Small {
        coeffs: Vec<i64>,
        threshold: i64,
    },
    Big {
        coeffs: Vec<BigInt>,
        threshold: BigInt,
    },
}

const SMALL_LIMIT: i64 = 1 << 62;

impl LinearThreshold {
    /// `Σ w_j·s_j + bias ≥ 0`, or `> 0` when `strict`.
    pub(crate) fn new(weights: &[BigRational], bias: &BigRational, strict: bool) -> Self {
        let scale = weights
            .iter()
            .chain([bias])
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scaled = |r: &BigRational| (r * &scale).to_integer();
        let coeffs: Vec<BigInt> = weights.iter().map(scaled).collect();
        let mut threshold = -scaled(bias);
        if strict {
            threshold += 1;
        }

        let magnitude = coeffs.iter().fold(threshold.abs(), |acc, c| acc + c.abs());
        if magnitude < BigInt::from(SMALL_LIMIT) {
            LinearThreshold::Small {
                coeffs: coeffs.iter().map(|c| c.to_i64().unwrap()).collect(),
                threshold: threshold.to_i64().unwrap(),
            }
        } else {
            LinearThreshold::Big { coeffs, threshold }
        }
    }

    pub(crate) fn fires(&self, signals: impl IntoIterator<Item = i64>) -> bool {
        match self {
            LinearThreshold::Small { coeffs, threshold } => {
                let sum: i64 = coeffs.iter().zip(signals).map(|(c, s)| c * s).sum();
                sum >= *threshold
            }
            LinearThreshold::Big { coeffs, threshold } => {
                let sum = coeffs
                    .iter()
                    .zip(signals)
                    .fold(BigInt::zero(), |acc, (c, s)| acc + c * s);
                sum >= *threshold
            }
        }
    }
}
