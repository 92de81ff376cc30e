//! Exact Phase-I simplex deciding `∃ x ≥ 0 : M x = b`.

use num_traits::{Signed, Zero};

use super::matrix::{mul_vector, IntMatrix, RatVector};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Some `x ≥ 0` with `M x = b`, or `None` when the system is infeasible.
/// Bland's rule on both the entering and the leaving variable.
pub fn feasible_nonneg_solution(m: &IntMatrix, b: &RatVector) -> Result<Option<RatVector>> {
    let (rows, cols) = (m.rows(), m.cols());
    if b.len() != rows {
        return Err(Error::Dimension(format!("{rows} rows vs right-hand side of {}", b.len())));
    }
    // columns: originals, then one artificial per row, then the rhs
    let width = cols + rows + 1;
    let rhs = width - 1;
    let mut t = vec![vec![Rational::zero(); width]; rows];
    for r in 0..rows {
        let flip = b.entries()[r].is_negative();
        for c in 0..cols {
            let v = Rational::from_integer(m.get(r, c).clone());
            t[r][c] = if flip { -v } else { v };
        }
        t[r][cols + r] = Rational::from_integer(1.into());
        t[r][rhs] = if flip { -b.entries()[r].clone() } else { b.entries()[r].clone() };
    }
    let mut basis: Vec<usize> = (cols..cols + rows).collect();
    // reduced costs of minimising the artificial sum
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for c in (0..cols).chain([rhs]) {
            cost[c] -= &row[c];
        }
    }

    while let Some(enter) = (0..cols + rows).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..rows {
            if !t[r][enter].is_positive() {
                continue;
            }
            let ratio = &t[r][rhs] / &t[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // phase I is bounded below by zero
        let (lr, _) = leave.expect("phase I objective is bounded");
        pivot(&mut t, &mut cost, lr, enter);
        basis[lr] = enter;
    }

    if !cost[rhs].is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &v) in basis.iter().enumerate() {
        if v < cols {
            x[v] = t[r][rhs].clone();
        }
    }
    debug_assert_eq!(mul_vector(m, &x)?, b.entries());
    Ok(Some(RatVector::new(x, m.col_labels().to_vec(), m.ground())?))
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], pr: usize, pc: usize) {
    let p = t[pr][pc].clone();
    for v in t[pr].iter_mut() {
        *v /= &p;
    }
    let prow = t[pr].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == pr || row[pc].is_zero() {
            continue;
        }
        let f = row[pc].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    let f = cost[pc].clone();
    for (v, pv) in cost.iter_mut().zip(&prow) {
        if !pv.is_zero() {
            *v -= &f * pv;
        }
    }
}
