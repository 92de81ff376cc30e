//! Column-style Hermite normal form under unimodular column operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Replaces columns `p`, `q` by `x·p + y·q` and `s·p + t·q`.
fn combine(m: &mut IntMatrix, p: usize, q: usize, [x, y, s, t]: [&BigInt; 4]) {
    for r in 0..m.rows() {
        let (a, b) = (m.get(r, p).clone(), m.get(r, q).clone());
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m.set(r, p, x * &a + y * &b);
        m.set(r, q, s * &a + t * &b);
    }
}

fn add_multiple(m: &mut IntMatrix, target: usize, source: usize, k: &BigInt) {
    for r in 0..m.rows() {
        let v = m.get(r, source);
        if !v.is_zero() {
            let nv = m.get(r, target) + k * v;
            m.set(r, target, nv);
        }
    }
}

fn negate(m: &mut IntMatrix, c: usize) {
    for r in 0..m.rows() {
        let v = -m.get(r, c);
        m.set(r, c, v);
    }
}

/// Returns `(H, U)` with `H = M·U`, `U` unimodular and `H` lower
/// staircase: each pivot row has a positive pivot, zeros to its right and
/// entries in `[0, pivot)` to its left.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.col_labels().to_vec(), m.ground());
    let mut p = 0;
    for r in 0..m.rows() {
        if p == m.cols() {
            break;
        }
        for j in p + 1..m.cols() {
            let b = h.get(r, j).clone();
            if b.is_zero() {
                continue;
            }
            let a = h.get(r, p).clone();
            let eg = a.extended_gcd(&b);
            let (s, t) = (-(&b / &eg.gcd), &a / &eg.gcd);
            let ops = [&eg.x, &eg.y, &s, &t];
            combine(&mut h, p, j, ops);
            combine(&mut u, p, j, ops);
        }
        if h.get(r, p).is_zero() {
            continue;
        }
        if h.get(r, p).is_negative() {
            negate(&mut h, p);
            negate(&mut u, p);
        }
        let pivot = h.get(r, p).clone();
        for k in 0..p {
            let q = h.get(r, k).div_floor(&pivot);
            if !q.is_zero() {
                add_multiple(&mut h, k, p, &-&q);
                add_multiple(&mut u, k, p, &-q);
            }
        }
        p += 1;
    }
    (h, u)
}

/// Number of pivots in the Hermite normal form.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.cols()).filter(|&c| (0..h.rows()).any(|r| !h.get(r, c).is_zero())).count()
}

/// `H` equals `[I 0]`.
pub fn is_identity_then_zero(h: &IntMatrix) -> bool {
    h.rows() <= h.cols()
        && (0..h.rows()).all(|r| {
            (0..h.cols()).all(|c| {
                let v = h.get(r, c);
                if r == c { *v == BigInt::from(1) } else { v.is_zero() }
            })
        })
}
