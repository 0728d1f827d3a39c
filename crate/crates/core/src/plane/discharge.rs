//! Euler-formula edge bounds from caps on the number of 3-faces.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("3-face coefficient {0} is not below 2, the bound diverges")]
pub struct DivergentBound(pub Rational);

/// Largest edge count of a connected plane graph on `n` vertices whose
/// 3-faces satisfy `f3 ≤ c·e + d`.
///
/// From `2e = Σ i·f_i ≥ 3f3 + 4(f − f3)` and `f = e + 2 − n` one gets
/// `(2 − c)·e ≤ 4n − 8 + d`.
pub fn discharge_bound(n: i128, c: Rational, d: Rational) -> Result<Rational, DivergentBound> {
    let slack = Rational::from_integer(2) - c;
    if slack <= Rational::zero() {
        return Err(DivergentBound(c));
    }
    Ok((Rational::from_integer(4 * n - 8) + d) / slack)
}

/// Serialized form `{num, den}` so reports never carry floats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: i128,
    pub den: i128,
}

impl From<Rational> for ExactRational {
    fn from(r: Rational) -> Self {
        ExactRational {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<ExactRational> for Rational {
    fn from(r: ExactRational) -> Self {
        Rational::new(r.num, r.den)
    }
}
