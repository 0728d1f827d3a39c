//! Exact counting behind the large-n threshold for C3∪C5.
//!
//! With `f(n) = (4n + 15097)/15555` and `α = f(n) − 1`, the discharging
//! bound `(5/8)(4n + 1037α + 22)` collapses to `(8n − 16)/3`.
//! Setting aside 15 blocks and two copies of the 10 + 5 + 1 special ones, the
//! blocks through a fixed vertex pair number `(f(n) − 47)/10`, which is at
//! least 3 exactly from the threshold on.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::plane::{discharge_bound, ExactRational, Rational};

const DENOM: i128 = 15555;
const RESERVED: i128 = 15 + 2 * (10 + 5 + 1);
const PER_BLOCK: i128 = 10;
const NEEDED: i128 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: u64,
    pub alpha: ExactRational,
    pub f_n: ExactRational,
    pub pair_blocks: ExactRational,
    pub threshold_ok: bool,
    /// `(5/8)(4n + 1037α + 22)`.
    pub edge_bound: ExactRational,
    /// Whether `edge_bound` equals `(8n − 16)/3` and the discharging bound at
    /// `c = 2/5, d = 1037α + 30`.
    pub edge_bound_identity: bool,
}

fn f_n(n: i128) -> Rational {
    Rational::new(4 * n + 15097, DENOM)
}

fn pair_blocks(n: i128) -> Rational {
    (f_n(n) - Rational::from_integer(RESERVED)) / Rational::from_integer(PER_BLOCK)
}

pub fn census(n: u64) -> CensusRecord {
    let ni = n as i128;
    let f = f_n(ni);
    let alpha = f - Rational::one();
    let pairs = pair_blocks(ni);
    let q = |a: i128, b: i128| Rational::new(a, b);
    let edge_bound = q(5, 8) * (q(4 * ni, 1) + q(1037, 1) * alpha + q(22, 1));
    let discharged = discharge_bound(ni, q(2, 5), q(1037, 1) * alpha + q(30, 1)).expect("2/5 < 2");
    CensusRecord {
        n,
        alpha: alpha.into(),
        f_n: f.into(),
        pair_blocks: pairs.into(),
        threshold_ok: pairs >= Rational::from_integer(NEEDED),
        edge_bound: edge_bound.into(),
        edge_bound_identity: edge_bound == q(8 * ni - 16, 3) && edge_bound == discharged,
    }
}

/// Least `n` with at least three pair blocks, by bisection on the monotone
/// exact predicate.
pub fn census_threshold() -> u64 {
    let ok = |n: u64| pair_blocks(n as i128) >= Rational::from_integer(NEEDED);
    let (mut lo, mut hi) = (1u64, 1u64);
    while !ok(hi) {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}
