//! Closed forms from the literature and comparison with the oracle.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::extremal::ex_planar_with;
use super::{OracleError, SearchConfig};
use crate::constructions::extremal_formula;
use crate::cycles::CyclePattern;

#[derive(Debug, Clone)]
pub struct KnownFormula {
    pub name: &'static str,
    /// Smallest n the closed form is claimed for.
    pub n0: usize,
    pub statement: &'static str,
    applies: fn(&CyclePattern) -> bool,
    eval: fn(usize) -> usize,
}

impl KnownFormula {
    pub fn applies_to(&self, p: &CyclePattern) -> bool {
        (self.applies)(p)
    }

    /// The closed form, or `None` below `n0`.
    pub fn value(&self, n: usize) -> Option<usize> {
        (n >= self.n0).then(|| (self.eval)(n))
    }
}

fn exactly(p: &CyclePattern, lens: &[usize]) -> bool {
    p.wildcard_count() == 0 && p.exact_lengths() == lens
}

pub fn registry() -> Vec<KnownFormula> {
    vec![
        KnownFormula {
            name: "2C3",
            n0: 6,
            statement: "ex_P(n, 2C3) = ⌈5n/2⌉ − 5 for n ≥ 6",
            applies: |p| exactly(p, &[3, 3]),
            eval: |n| (5 * n).div_ceil(2) - 5,
        },
        KnownFormula {
            name: "C3+C4",
            n0: 20,
            statement: "ex_P(n, C3∪C4) = ⌊5n/2⌋ − 4 for n ≥ 20",
            applies: |p| exactly(p, &[3, 4]),
            eval: |n| 5 * n / 2 - 4,
        },
        KnownFormula {
            name: "2C4",
            n0: 2661,
            statement: "ex_P(n, 2C4) = 19n/7 − 6 if 7 | n, else ⌊(19n − 34)/7⌋, for n ≥ 2661",
            applies: |p| exactly(p, &[4, 4]),
            eval: |n| if n % 7 == 0 { 19 * n / 7 - 6 } else { (19 * n - 34) / 7 },
        },
        KnownFormula {
            name: "2C",
            n0: 5,
            statement: "ex_P(n, 2C) = 2n − 1",
            applies: |p| p.exact_lengths().is_empty() && p.wildcard_count() == 2,
            eval: |n| 2 * n - 1,
        },
        KnownFormula {
            name: "tC",
            n0: 3,
            statement: "ex_P(n, tC) = 3n − 6 for t ≥ 3",
            applies: |p| p.exact_lengths().is_empty() && p.wildcard_count() >= 3,
            eval: |n| 3 * n - 6,
        },
        KnownFormula {
            name: "C5",
            n0: 11,
            statement: "ex_P(n, C5) = ⌊(12n − 33)/5⌋ for n ≥ 11",
            applies: |p| exactly(p, &[5]),
            eval: |n| (12 * n - 33) / 5,
        },
        KnownFormula {
            name: "C3+C5",
            n0: 295660,
            statement: "ex_P(n, C3∪C5) = ⌊(8n − 13)/3⌋ for n ≥ 295660",
            applies: |p| exactly(p, &[3, 5]),
            eval: extremal_formula,
        },
    ]
}

pub fn formula_for(p: &CyclePattern) -> Option<KnownFormula> {
    registry().into_iter().find(|f| f.applies_to(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareStatus {
    Match,
    Mismatch,
    /// No closed form applies; the construction lower bound holds.
    LowerBoundOk,
    LowerBoundViolated,
    /// Neither a closed form nor a construction applies.
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n: usize,
    pub oracle: usize,
    pub formula: Option<usize>,
    pub construction_lower: Option<usize>,
    pub status: CompareStatus,
}

/// Oracle values next to the closed form (where claimed) and the C3∪C5
/// construction count (where it exists).
pub fn compare_known(ns: RangeInclusive<usize>, p: &CyclePattern, cfg: &SearchConfig) -> Result<Vec<CompareRow>, OracleError> {
    let formula = formula_for(p);
    let mut rows = Vec::new();
    for n in ns {
        let oracle = ex_planar_with(n, p, cfg)?.max_edges;
        let value = formula.as_ref().and_then(|f| f.value(n));
        let construction_lower = (exactly(p, &[3, 5]) && n >= 7).then(|| extremal_formula(n));
        let status = match (value, construction_lower) {
            (Some(v), _) if v == oracle => CompareStatus::Match,
            (Some(_), _) => CompareStatus::Mismatch,
            (None, Some(lb)) if oracle >= lb => CompareStatus::LowerBoundOk,
            (None, Some(_)) => CompareStatus::LowerBoundViolated,
            (None, None) => CompareStatus::Unchecked,
        };
        rows.push(CompareRow {
            n,
            oracle,
            formula: value,
            construction_lower,
            status,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> CyclePattern {
        s.parse().unwrap()
    }

    #[test]
    fn registry_values() {
        let f = formula_for(&pat("2C3")).unwrap();
        assert_eq!([6, 7, 8].map(|n| f.value(n).unwrap()), [10, 13, 15]);
        assert_eq!(f.value(5), None);
        assert_eq!(formula_for(&pat("5C")).unwrap().value(9), Some(21));
        assert_eq!(formula_for(&pat("C5")).unwrap().value(11), Some(19));
        assert_eq!(formula_for(&pat("2C4")).unwrap().value(2667), Some(19 * 381 - 6));
        assert_eq!(formula_for(&pat("C3+C5")).unwrap().value(295660), Some(788422));
        assert!(formula_for(&pat("C3+C6")).is_none());
    }

    #[test]
    fn two_triangles_against_oracle() {
        let rows = compare_known(6..=8, &pat("2C3"), &SearchConfig::default()).unwrap();
        let status: Vec<_> = rows.iter().map(|r| r.status).collect();
        assert_eq!(status, [CompareStatus::Mismatch, CompareStatus::Match, CompareStatus::Match]);
        assert_eq!((rows[0].oracle, rows[0].formula), (11, Some(10)));
    }
}
