//! Maximal-minor unimodularity and small-order total unimodularity.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::hnf::rank;
use super::matrix::{bareiss_big, bareiss_i128, IntMatrix, Label};
use crate::error::{Error, Result};

/// Hard cap on the number of determinants an exhaustive check may request.
pub const MINOR_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// A square submatrix whose determinant is outside `{−1, 0, +1}`.
#[derive(Clone, Debug)]
pub struct MinorViolation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub row_labels: Vec<Label>,
    pub col_labels: Vec<Label>,
    pub determinant: BigInt,
    pub submatrix: IntMatrix,
}

#[derive(Clone, Debug)]
pub enum UnimodularVerdict {
    /// Every maximal minor lies in `{−1, 0, +1}`.
    Unimodular { minors: u128 },
    /// Sampling found no counterexample.
    NoCounterexample { sampled: usize },
    Violation(Box<MinorViolation>),
    RankDeficient { rank: usize },
}

impl UnimodularVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, UnimodularVerdict::Unimodular { .. } | UnimodularVerdict::NoCounterexample { .. })
    }
}

#[derive(Clone, Debug)]
pub enum TuVerdict {
    PassUpToOrder { order: usize, submatrices: u128 },
    Violation(Box<MinorViolation>),
}

impl TuVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, TuVerdict::PassUpToOrder { .. })
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub(crate) fn unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        loop {
            let rest = binomial(n - next - 1, k - slot - 1);
            if rank < rest {
                out.push(next);
                next += 1;
                break;
            }
            rank -= rest;
            next += 1;
        }
    }
    out
}

struct Dense {
    cols: usize,
    small: Option<Vec<i64>>,
    matrix: IntMatrix,
}

impl Dense {
    fn new(m: &IntMatrix) -> Self {
        Dense { cols: m.cols(), small: m.small_entries(), matrix: m.clone() }
    }

    fn det(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        let k = rows.len();
        if let Some(small) = &self.small {
            let mut buf = Vec::with_capacity(k * k);
            for &r in rows {
                buf.extend(cols.iter().map(|&c| small[r * self.cols + c]));
            }
            if let Some(d) = bareiss_i128(&buf, k) {
                return BigInt::from(d);
            }
        }
        let mut buf = Vec::with_capacity(k * k);
        for &r in rows {
            buf.extend(cols.iter().map(|&c| self.matrix.get(r, c).clone()));
        }
        bareiss_big(buf, k)
    }

    fn violation(&self, rows: Vec<usize>, cols: Vec<usize>, determinant: BigInt) -> Box<MinorViolation> {
        let m = &self.matrix;
        Box::new(MinorViolation {
            row_labels: rows.iter().map(|&r| m.row_labels()[r]).collect(),
            col_labels: cols.iter().map(|&c| m.col_labels()[c]).collect(),
            submatrix: m.submatrix(&rows, &cols),
            rows,
            cols,
            determinant,
        })
    }
}

fn bad(d: &BigInt) -> bool {
    d.abs() > BigInt::from(1)
}

/// Checks every (or a seeded sample of) maximal `rows × rows` minor of a
/// full-row-rank matrix.
pub fn is_unimodular_full_row_rank(m: &IntMatrix, mode: MinorMode) -> Result<UnimodularVerdict> {
    let (r, c) = (m.rows(), m.cols());
    let rk = rank(m);
    if rk < r {
        return Ok(UnimodularVerdict::RankDeficient { rank: rk });
    }
    let dense = Dense::new(m);
    let all_rows: Vec<usize> = (0..r).collect();
    let total = binomial(c, r);
    match mode {
        MinorMode::Exhaustive => {
            if total > MINOR_LIMIT {
                return Err(Error::Budget { points: total, budget: MINOR_LIMIT });
            }
            let hit = (0..total.to_u64().expect("bounded by limit")).into_par_iter().find_map_first(|k| {
                let cols = unrank(c, r, k as u128);
                let d = dense.det(&all_rows, &cols);
                bad(&d).then_some((cols, d))
            });
            Ok(match hit {
                Some((cols, d)) => UnimodularVerdict::Violation(dense.violation(all_rows, cols, d)),
                None => UnimodularVerdict::Unimodular { minors: total },
            })
        }
        MinorMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let mut cols = sample(&mut rng, c, r).into_vec();
                cols.sort_unstable();
                let d = dense.det(&all_rows, &cols);
                if bad(&d) {
                    return Ok(UnimodularVerdict::Violation(dense.violation(all_rows, cols, d)));
                }
            }
            Ok(UnimodularVerdict::NoCounterexample { sampled: count })
        }
    }
}

/// Checks all square submatrices of order `1..=max_order`, in order of
/// size, then row subset, then column subset; reports the first violation.
pub fn is_totally_unimodular_small(m: &IntMatrix, max_order: usize) -> Result<TuVerdict> {
    let (r, c) = (m.rows(), m.cols());
    let top = max_order.min(r).min(c);
    let total: u128 = (1..=top).map(|k| binomial(r, k) * binomial(c, k)).sum();
    if total > MINOR_LIMIT {
        return Err(Error::Budget { points: total, budget: MINOR_LIMIT });
    }
    let dense = Dense::new(m);
    for k in 1..=top {
        let row_sets = binomial(r, k) as u64;
        let col_sets = binomial(c, k);
        let hit = (0..row_sets).into_par_iter().find_map_first(|rr| {
            let rows = unrank(r, k, rr as u128);
            (0..col_sets).find_map(|cc| {
                let cols = unrank(c, k, cc);
                let d = dense.det(&rows, &cols);
                bad(&d).then(|| (rows.clone(), cols, d))
            })
        });
        if let Some((rows, cols, d)) = hit {
            return Ok(TuVerdict::Violation(dense.violation(rows, cols, d)));
        }
    }
    Ok(TuVerdict::PassUpToOrder { order: top, submatrices: total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::index_labels;
    use crate::exactlin::structure::{build_matrix_a, build_matrix_b, build_matrix_e};
    use crate::setfam::GroundSet;

    fn g3() -> GroundSet {
        GroundSet::standard(3).unwrap()
    }

    #[test]
    fn unranking_is_lexicographic() {
        let all: Vec<Vec<usize>> = (0..binomial(5, 3)).map(|k| unrank(5, 3, k)).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn a_and_b_unimodular_at_three() {
        for m in [build_matrix_a(&g3()), build_matrix_b(&g3())] {
            match is_unimodular_full_row_rank(&m, MinorMode::Exhaustive).unwrap() {
                UnimodularVerdict::Unimodular { minors } => assert_eq!(minors, 792),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn a_not_totally_unimodular() {
        let a = build_matrix_a(&g3());
        let TuVerdict::Violation(v) = is_totally_unimodular_small(&a, 7).unwrap() else {
            panic!("expected a violation");
        };
        assert!(v.determinant.abs() >= BigInt::from(2));
        assert_eq!(v.submatrix.determinant().unwrap(), v.determinant);
    }

    #[test]
    fn e_totally_unimodular_at_three() {
        let e = build_matrix_e(&g3());
        assert!(is_totally_unimodular_small(&e, 7).unwrap().passed());
    }

    #[test]
    fn zero_matrix_and_refusals() {
        let z = IntMatrix::zeros(index_labels(3), index_labels(4), None);
        assert!(is_totally_unimodular_small(&z, 3).unwrap().passed());
        let a4 = build_matrix_a(&GroundSet::standard(4).unwrap());
        assert!(matches!(
            is_unimodular_full_row_rank(&a4, MinorMode::Exhaustive),
            Err(Error::Budget { .. })
        ));
        let sampled = is_unimodular_full_row_rank(&a4, MinorMode::Sampled { count: 200, seed: 1 }).unwrap();
        assert!(sampled.passed());
        let low = IntMatrix::from_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(
            is_unimodular_full_row_rank(&low, MinorMode::Exhaustive).unwrap(),
            UnimodularVerdict::RankDeficient { rank: 1 }
        ));
        let two = IntMatrix::from_rows(&[vec![2, 1]]).unwrap();
        assert!(!is_unimodular_full_row_rank(&two, MinorMode::Exhaustive).unwrap().passed());
    }
}
