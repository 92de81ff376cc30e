//! Double description for the cone of standardized supermodular functions,
//! in coordinates `m(S)`, `|S| ≥ 2`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::setfam::{GroundSet, Subset};

/// The elementary exchange rows `m(C∪ij) + m(C) − m(C∪i) − m(C∪j) ≥ 0`
/// over the `𝒫₂(N)` coordinates, in ascending bitmask order.
pub(crate) fn exchange_rows(ground: &GroundSet) -> Vec<Vec<i64>> {
    let coords: Vec<Subset> = ground.subsets_min(2).collect();
    let pos = |s: Subset| coords.iter().position(|t| *t == s);
    let n = ground.n();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for c in ground.full().without(i).without(j).subsets() {
                let mut row = vec![0i64; coords.len()];
                for (s, v) in [(c.with(i).with(j), 1), (c, 1), (c.with(i), -1), (c.with(j), -1)] {
                    if let Some(k) = pos(s) {
                        row[k] += v;
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

fn dot(a: &[i64], x: &[i64]) -> i64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

fn normalise(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// Rank of a set of integer rows, by exact elimination.
pub(crate) fn rank_of(rows: &[&[i64]]) -> usize {
    let mut basis: Vec<Vec<Ratio<i128>>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut v: Vec<Ratio<i128>> = r.iter().map(|x| Ratio::from_integer(*x as i128)).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if v[p] != Ratio::from_integer(0) {
                let f = v[p] / b[p];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| *x != Ratio::from_integer(0)) {
            basis.push(v);
            pivots.push(p);
        }
    }
    basis.len()
}

/// Inverse of a square invertible integer matrix, scaled column-wise to
/// coprime integers; returns the columns.
fn inverse_columns(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = m.len();
    let zero = Ratio::from_integer(0i128);
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut v: Vec<Ratio<i128>> = row.iter().map(|x| Ratio::from_integer(*x as i128)).collect();
            v.extend((0..d).map(|c| Ratio::from_integer((c == r) as i128)));
            v
        })
        .collect();
    for col in 0..d {
        let p = (col..d).find(|&r| a[r][col] != zero).expect("initial rows are independent");
        a.swap(col, p);
        let piv = a[col][col];
        for x in &mut a[col] {
            *x /= piv;
        }
        for r in 0..d {
            if r != col && a[r][col] != zero {
                let f = a[r][col];
                let src = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&src) {
                    *x -= f * y;
                }
            }
        }
    }
    (0..d)
        .map(|c| {
            let col: Vec<Ratio<i128>> = (0..d).map(|r| a[r][d + c]).collect();
            let l = col.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
            normalise(col.iter().map(|x| (x * l).to_integer() as i64).collect())
        })
        .collect()
}

/// Extreme rays of `{x : A x ≥ 0}` for a pointed cone, as coprime integer
/// vectors sorted ascending.
pub(crate) fn cone_rays(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = rows[0].len();
    assert!(rows.len() <= 128, "zero sets are tracked in a u128");
    // pick d independent rows to start from a simplicial cone
    let mut initial: Vec<usize> = Vec::new();
    for k in 0..rows.len() {
        let mut trial: Vec<&[i64]> = initial.iter().map(|&i| rows[i].as_slice()).collect();
        trial.push(&rows[k]);
        if rank_of(&trial) == trial.len() {
            initial.push(k);
            if initial.len() == d {
                break;
            }
        }
    }
    assert_eq!(initial.len(), d, "cone is not pointed");
    let start: Vec<Vec<i64>> = initial.iter().map(|&k| rows[k].clone()).collect();
    let mut rays = inverse_columns(&start);
    let mut processed: Vec<usize> = initial.clone();
    let zero_set = |x: &[i64], done: &[usize]| -> u128 {
        done.iter().enumerate().filter(|(_, &k)| dot(&rows[k], x) == 0).fold(0u128, |acc, (b, _)| acc | 1 << b)
    };

    for k in (0..rows.len()).filter(|k| !initial.contains(k)) {
        let a = &rows[k];
        let vals: Vec<i64> = rays.iter().map(|r| dot(a, r)).collect();
        let zs: Vec<u128> = rays.iter().map(|r| zero_set(r, &processed)).collect();
        let mut next: Vec<Vec<i64>> = rays.iter().zip(&vals).filter(|(_, v)| **v >= 0).map(|(r, _)| r.clone()).collect();
        for p in (0..rays.len()).filter(|&p| vals[p] > 0) {
            for q in (0..rays.len()).filter(|&q| vals[q] < 0) {
                let common = zs[p] & zs[q];
                if (common.count_ones() as usize) + 2 < d {
                    continue;
                }
                let blocked = (0..rays.len()).any(|r| r != p && r != q && zs[r] & common == common);
                if blocked {
                    continue;
                }
                let (vp, vq) = (vals[p], -vals[q]);
                let z: Vec<i64> = rays[p].iter().zip(&rays[q]).map(|(x, y)| vp * y + vq * x).collect();
                next.push(normalise(z));
            }
        }
        processed.push(k);
        rays = next;
    }
    rays.sort();
    rays.dedup();
    rays
}

/// Extreme rays of the standardized supermodular cone over `𝒫₂(N)`.
pub fn extreme_rays(ground: &GroundSet) -> Vec<Vec<i64>> {
    cone_rays(&exchange_rows(ground))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    /// One-dimensional kernel of `rows`, or `None` when it is larger.
    /// Gauss-Jordan over `i128` with rows kept gcd-reduced.
    fn kernel_line(rows: &[&[i64]], d: usize) -> Option<Vec<i64>> {
        let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(p) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
            m.swap(row, p);
            for r in 0..m.len() {
                if r != row && m[r][col] != 0 {
                    let (a, b) = (m[row][col], m[r][col]);
                    let lhs: Vec<i128> = m[row].clone();
                    for (x, y) in m[r].iter_mut().zip(&lhs) {
                        *x = *x * a - *y * b;
                    }
                    let g = m[r].iter().fold(0i128, |acc, x| acc.gcd(x));
                    if g > 1 {
                        m[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if pivots.len() != d - 1 {
            return None;
        }
        let free = (0..d).find(|c| !pivots.contains(c)).expect("one free column");
        let l = pivots.iter().enumerate().fold(1i128, |acc, (i, &c)| acc.lcm(&m[i][c]));
        let mut v = vec![0i128; d];
        v[free] = l;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -m[i][free] * (l / m[i][c]);
        }
        let g = v.iter().fold(0i128, |acc, x| acc.gcd(x));
        Some(v.into_iter().map(|x| (x / g) as i64).collect())
    }

    /// Every rank-(d−1) choice of d−1 rows pins a line; keep the feasible
    /// directions. Slow and independent of the incremental method.
    fn brute_force_rays(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let d = rows[0].len();
        let m = rows.len();
        let k = d - 1;
        let total = crate::exactlin::unimodular::binomial(m, k) as u64;
        let mut found: Vec<Vec<i64>> = (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let pick = crate::exactlin::unimodular::unrank(m, k, idx as u128);
                let chosen: Vec<&[i64]> = pick.iter().map(|&r| rows[r].as_slice()).collect();
                let v = kernel_line(&chosen, d)?;
                let sign = if rows.iter().all(|r| dot(r, &v) >= 0) {
                    1
                } else if rows.iter().all(|r| dot(r, &v) <= 0) {
                    -1
                } else {
                    return None;
                };
                Some(normalise(v.into_iter().map(|x| x * sign).collect()))
            })
            .collect();
        found.sort();
        found.dedup();
        found
    }

    fn active_rank(rows: &[Vec<i64>], x: &[i64]) -> usize {
        let active: Vec<&[i64]> = rows.iter().filter(|r| dot(r, x) == 0).map(|r| r.as_slice()).collect();
        rank_of(&active)
    }

    #[test]
    fn three_variables_give_five_rays() {
        let g3 = GroundSet::standard(3).unwrap();
        let rows = exchange_rows(&g3);
        assert_eq!(rows.len(), 6);
        let rays = extreme_rays(&g3);
        assert_eq!(rays, brute_force_rays(&rows));
        assert_eq!(rays.len(), 5);
    }

    #[test]
    fn four_variables_match_brute_force() {
        let g4 = GroundSet::standard(4).unwrap();
        let rows = exchange_rows(&g4);
        assert_eq!((rows.len(), rows[0].len()), (24, 11));
        let rays = extreme_rays(&g4);
        assert_eq!(rays, brute_force_rays(&rows));
        for r in &rays {
            assert!(rows.iter().all(|a| dot(a, r) >= 0));
            assert_eq!(active_rank(&rows, r), 10);
        }
    }

    #[test]
    fn kernel_of_small_systems() {
        assert_eq!(kernel_line(&[&[1, 0, -1], &[0, 1, -1]], 3), Some(vec![1, 1, 1]));
        assert_eq!(kernel_line(&[&[2, 4, 0], &[0, 3, 6]], 3), Some(vec![4, -2, 1]));
        assert_eq!(kernel_line(&[&[1, 1, 1], &[2, 2, 2]], 3), None);
    }

    #[test]
    fn small_cone() {
        // the positive quadrant plus a cut: x ≥ 0, y ≥ 0
        let rays = cone_rays(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rays, vec![vec![0, 1], vec![1, 0]]);
    }
}
