//! The concrete matrices relating η-vectors, standard imsets and
//! characteristic imsets.

use num_traits::{One, Zero};

use super::matrix::{IntMatrix, Label, RatVector};
use crate::encode::{eta_pairs, StandardImset};
use crate::error::Result;
use crate::rational::{rat, Rational};
use crate::setfam::{GroundSet, Subset};

fn set_labels(ground: &GroundSet) -> Vec<Label> {
    ground.subsets_min(1).map(Label::Set).collect()
}

fn pair_labels(ground: &GroundSet) -> Vec<Label> {
    eta_pairs(ground).map(|(i, b)| Label::Pair(i, b)).collect()
}

fn as_set(l: &Label) -> Subset {
    match l {
        Label::Set(s) => *s,
        _ => unreachable!("expected a set label"),
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 { 1 } else { -1 }
}

/// `a[T,(i|B)] = δ_{{i}∪B}(T) − δ_B(T)` for `|T| ≥ 2`, `δ_{{i}}(T)` for `|T| = 1`.
pub fn build_matrix_a(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), pair_labels(ground), Some(ground), |r, c| {
        let t = as_set(r);
        let Label::Pair(i, b) = *c else { unreachable!() };
        if t.len() == 1 {
            (t == Subset::singleton(i)) as i64
        } else {
            (t == b.with(i)) as i64 - (t == b) as i64
        }
    })
}

/// `b_u[T] = 1` on singletons, `δ_N(T) − u(T)` otherwise.
pub fn build_b_u(u: &StandardImset) -> RatVector {
    let ground = u.ground();
    let labels = set_labels(ground);
    let entries = labels
        .iter()
        .map(|l| {
            let t = as_set(l);
            if t.len() == 1 {
                Rational::one()
            } else {
                rat((t == ground.full()) as i64 - u.get(t))
            }
        })
        .collect();
    RatVector::new(entries, labels, Some(ground)).expect("labels match entries")
}

/// `b[S,(i|B)] = δ(i ∈ S & S∖{i} ⊆ B)`.
pub fn build_matrix_b(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), pair_labels(ground), Some(ground), |r, c| {
        let s = as_set(r);
        let Label::Pair(i, b) = *c else { unreachable!() };
        (s.contains(i) && s.without(i).is_subset_of(b)) as i64
    })
}

/// `c[S,T] = δ(S ⊆ T)` for `|S| ≥ 2`, `δ(S = T)` for `|S| = 1`.
pub fn build_matrix_c(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), set_labels(ground), Some(ground), |r, c| {
        let (s, t) = (as_set(r), as_set(c));
        if s.len() >= 2 { s.is_subset_of(t) as i64 } else { (s == t) as i64 }
    })
}

/// Inverse of [`build_matrix_c`].
pub fn build_matrix_d(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), set_labels(ground), Some(ground), |r, c| {
        let (t, s) = (as_set(r), as_set(c));
        if t.len() >= 2 {
            if t.is_subset_of(s) { sign(s.difference(t).len()) } else { 0 }
        } else {
            (t == s) as i64
        }
    })
}

/// `B̄[S,R] = δ(S ⊆ R)` over non-empty `S, R`.
pub fn build_matrix_b_bar(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), set_labels(ground), Some(ground), |r, c| {
        as_set(r).is_subset_of(as_set(c)) as i64
    })
}

/// `f[R,U] = δ(R ⊆ U)·(−1)^{|U∖R|}`, the inverse of `B̄`.
pub fn build_matrix_f(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), set_labels(ground), Some(ground), |r, c| {
        let (r, u) = (as_set(r), as_set(c));
        if r.is_subset_of(u) { sign(u.difference(r).len()) } else { 0 }
    })
}

/// Column labels of `E`: every non-empty set `R`, then `(C:B)` for every
/// original pair `(i|B)` with `B ≠ ∅`, in η order.
pub fn matrix_e_columns(ground: &GroundSet) -> Vec<Label> {
    let mut cols = set_labels(ground);
    cols.extend(
        eta_pairs(ground)
            .filter(|(_, b)| !b.is_empty())
            .map(|(i, b)| Label::Step(b.with(i), b)),
    );
    cols
}

/// For each column `(i|B)` of `B`, the index of its re-labelled column in `E`.
pub fn original_columns_in_e(ground: &GroundSet) -> Vec<usize> {
    let cols = matrix_e_columns(ground);
    eta_pairs(ground)
        .map(|(i, b)| {
            let target = if b.is_empty() { Label::Set(Subset::singleton(i)) } else { Label::Step(b.with(i), b) };
            cols.iter().position(|l| *l == target).expect("every pair has a column")
        })
        .collect()
}

fn e_entry(t: Option<Subset>, col: &Label) -> i64 {
    match (t, col) {
        (Some(t), Label::Set(r)) => (t == *r) as i64,
        (Some(t), Label::Step(c, b)) => (t == *c) as i64 - (t == *b) as i64,
        (None, Label::Set(_)) => -1,
        (None, _) => 0,
        _ => unreachable!(),
    }
}

/// `e[T,R] = δ(T = R)`, `e[T,(C:B)] = δ(T = C) − δ(T = B)`.
pub fn build_matrix_e(ground: &GroundSet) -> IntMatrix {
    IntMatrix::from_fn(set_labels(ground), matrix_e_columns(ground), Some(ground), |r, c| {
        e_entry(Some(as_set(r)), c)
    })
}

/// `E` with the dummy row `∅` prepended: `−1` under each set column, `0`
/// under each `(C:B)` column.
pub fn build_matrix_e_with_dummy(ground: &GroundSet) -> IntMatrix {
    let mut rows = vec![Label::Set(Subset::EMPTY)];
    rows.extend(set_labels(ground));
    IntMatrix::from_fn(rows, matrix_e_columns(ground), Some(ground), |r, c| {
        let t = as_set(r);
        e_entry((!t.is_empty()).then_some(t), c)
    })
}

/// Every column holds exactly one `+1`, one `−1`, and zeros elsewhere.
pub fn has_incidence_columns(m: &IntMatrix) -> bool {
    (0..m.cols()).all(|c| {
        let col = m.column(c);
        let plus = col.iter().filter(|v| v.is_one()).count();
        let minus = col.iter().filter(|v| **v == -num_bigint::BigInt::one()).count();
        let zero = col.iter().filter(|v| v.is_zero()).count();
        plus == 1 && minus == 1 && zero + 2 == col.len()
    })
}

/// `B̄·E` restricted to the original columns, labelled like `B`.
pub fn b_from_factorization(ground: &GroundSet) -> Result<IntMatrix> {
    let product = build_matrix_b_bar(ground).mul(&build_matrix_e(ground))?;
    let picked = product.select_columns(&original_columns_in_e(ground));
    picked.with_labels(set_labels(ground), pair_labels(ground))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::enumerate_dags;
    use crate::encode::{char_from_eta, empty_graph_imset, eta_of, standard_imset_of};
    use crate::exactlin::matrix::mul_vector;

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    fn col(m: &IntMatrix, l: Label) -> Vec<i64> {
        m.column(m.col_index(&l).unwrap()).iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    fn delta(ground: &GroundSet, sets: &[(&str, i64)]) -> Vec<i64> {
        let mut v = vec![0; ground.size() - 1];
        for (s, k) in sets {
            v[ground.parse(s).unwrap().index() - 1] += k;
        }
        v
    }

    #[test]
    fn shape_and_columns_of_a() {
        let g3 = g(3);
        let a = build_matrix_a(&g3);
        assert_eq!((a.rows(), a.cols()), (7, 12));
        for i in 0..3 {
            let name = g3.labels()[i].clone();
            assert_eq!(col(&a, Label::Pair(i, Subset::EMPTY)), delta(&g3, &[(&name, 1)]));
            for j in (0..3).filter(|&j| j != i) {
                let pair = Subset::singleton(i).with(j);
                let expect = delta(&g3, &[(&name, 1), (&g3.format(pair), 1)]);
                assert_eq!(col(&a, Label::Pair(i, Subset::singleton(j))), expect);
            }
        }
    }

    #[test]
    fn b_u_values() {
        let g3 = g(3);
        let zero = build_b_u(&StandardImset::zero(&g3));
        for (l, v) in zero.labels().iter().zip(zero.entries()) {
            let t = as_set(l);
            let expect = (t.len() == 1 || t == g3.full()) as i64;
            assert_eq!(*v, rat(expect));
        }
        let empty = build_b_u(&empty_graph_imset(&g3));
        for (l, v) in empty.labels().iter().zip(empty.entries()) {
            assert_eq!(*v, rat((as_set(l).len() == 1) as i64));
        }
    }

    #[test]
    fn dag_codes_solve_a_and_b() {
        let g3 = g(3);
        let (a, b) = (build_matrix_a(&g3), build_matrix_b(&g3));
        for dag in enumerate_dags(&g3, false).unwrap() {
            let eta = eta_of(&dag);
            let x: Vec<Rational> = eta.values().iter().map(|v| rat(*v)).collect();
            let bu = build_b_u(&standard_imset_of(&dag).unwrap());
            assert_eq!(mul_vector(&a, &x).unwrap(), bu.entries());
            let c = char_from_eta(&eta);
            let expect: Vec<Rational> = g3.subsets_min(1).map(|s| rat(c.get(s))).collect();
            assert_eq!(mul_vector(&b, &x).unwrap(), expect);
        }
    }

    #[test]
    fn singleton_rows_of_b() {
        let g3 = g(3);
        let b = build_matrix_b(&g3);
        for i in 0..3 {
            let r = b.row_index(&Label::Set(Subset::singleton(i))).unwrap();
            for (k, l) in b.col_labels().iter().enumerate() {
                let Label::Pair(j, _) = *l else { unreachable!() };
                assert_eq!(*b.get(r, k), num_bigint::BigInt::from((j == i) as i64));
            }
        }
    }

    #[test]
    fn product_identities() {
        for n in 3..=4 {
            let gn = g(n);
            let ca = build_matrix_c(&gn).mul(&build_matrix_a(&gn)).unwrap();
            assert!(ca.same_entries(&build_matrix_b(&gn)));
            assert!(build_matrix_c(&gn).mul(&build_matrix_d(&gn)).unwrap().is_identity());
            assert!(build_matrix_b_bar(&gn).mul(&build_matrix_f(&gn)).unwrap().is_identity());
            assert!(has_incidence_columns(&build_matrix_e_with_dummy(&gn)));
            assert!(b_from_factorization(&gn).unwrap().same_entries(&build_matrix_b(&gn)));
        }
        let g5 = g(5);
        assert!(build_matrix_c(&g5).mul(&build_matrix_d(&g5)).unwrap().is_identity());
    }

    #[test]
    fn c_is_unimodular_square() {
        for n in 3..=4 {
            let d = build_matrix_c(&g(n)).determinant().unwrap();
            assert!(d == num_bigint::BigInt::one() || d == -num_bigint::BigInt::one());
        }
    }

    #[test]
    fn e_without_dummy_fails_incidence_check() {
        assert!(!has_incidence_columns(&build_matrix_e(&g(3))));
    }
}
