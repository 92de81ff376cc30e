use num_traits::Zero;

use super::{Family, Framework, LinearConstraint, Sense};
use crate::encode::{eta_index, eta_pairs};
use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::setfam::{superset_closure, union_closure_class, Antichain, GroundSet, Subset};

fn parity(k: usize) -> i64 {
    if k % 2 == 0 { 1 } else { -1 }
}

fn row(
    ground: &GroundSet,
    framework: Framework,
    terms: Vec<(usize, Rational)>,
    sense: Sense,
    rhs: Rational,
    tag: String,
) -> LinearConstraint {
    LinearConstraint::new(ground, framework, terms, sense, rhs, tag).expect("indices generated in range")
}

/// η-framework rows: `η ≥ 0`, one block sum per node, and a cluster row
/// `Σ_{i∈C} Σ_{D⊆N∖C} η(i|D) ≥ 1` per `|C| ≥ 2`.
pub fn eta_system(ground: &GroundSet, families: &[Family]) -> Vec<LinearConstraint> {
    let n = ground.n();
    let mut out = Vec::new();
    for family in families {
        match family {
            Family::Nonneg => out.extend(eta_pairs(ground).map(|(i, b)| {
                let tag = format!("nonneg:{}", crate::encode::format_eta_key(ground, i, b));
                row(ground, Framework::Eta, vec![(eta_index(n, i, b), rat(1))], Sense::Ge, rat(0), tag)
            })),
            Family::Equality => out.extend((0..n).map(|i| {
                let terms = eta_pairs(ground).filter(|(j, _)| *j == i).map(|(j, b)| (eta_index(n, j, b), rat(1)));
                let tag = format!("equality:{}", ground.labels()[i]);
                row(ground, Framework::Eta, terms.collect(), Sense::Eq, rat(1), tag)
            })),
            Family::Cluster => out.extend(ground.subsets_min(2).map(|c| {
                let outside = ground.full().difference(c);
                let terms = c
                    .elements()
                    .flat_map(|i| outside.subsets().map(move |d| (eta_index(n, i, d), rat(1))))
                    .collect();
                row(ground, Framework::Eta, terms, Sense::Ge, rat(1), format!("cluster:{}", ground.format_compact(c)))
            })),
            _ => {}
        }
    }
    out
}

/// `Σ_T u(T) = 0` and `Σ_{T∋j} u(T) = 0` for every `j`.
pub fn u_equality_system(ground: &GroundSet) -> Vec<LinearConstraint> {
    let all: Vec<(usize, Rational)> = ground.subsets().map(|t| (t.index(), rat(1))).collect();
    let mut out = vec![row(ground, Framework::U, all, Sense::Eq, rat(0), "equality:total".into())];
    for j in 0..ground.n() {
        let terms = ground.subsets().filter(|t| t.contains(j)).map(|t| (t.index(), rat(1))).collect();
        out.push(row(ground, Framework::U, terms, Sense::Eq, rat(0), format!("equality:{}", ground.labels()[j])));
    }
    out
}

/// `Σ_{T∈𝒜} u(T) ≤ 1` for the superset closure `𝒜` of the antichain.
pub fn specific_constraint(antichain: &Antichain) -> LinearConstraint {
    let ground = antichain.ground();
    let terms = superset_closure(antichain).iter().map(|t| (t.index(), rat(1))).collect();
    row(ground, Framework::U, terms, Sense::Le, rat(1), format!("specific:{}", antichain.tag()))
}

/// κ-coefficients of an antichain, dense over all subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaCoefficients {
    antichain: Antichain,
    values: Vec<i64>,
}

impl KappaCoefficients {
    pub fn antichain(&self) -> &Antichain {
        &self.antichain
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> i64 {
        self.values[s.index()]
    }

    /// Non-zero entries in ascending bitmask order.
    pub fn support(&self) -> Vec<(Subset, i64)> {
        self.antichain
            .ground()
            .subsets()
            .filter(|s| self.values[s.index()] != 0)
            .map(|s| (s, self.values[s.index()]))
            .collect()
    }
}

/// `κ(S) = 1 − Σ_{T∈𝒞(ℐ), T⊂S} κ(T)` on the union closure `𝒞(ℐ)`, zero
/// elsewhere; members are visited by cardinality, then bitmask.
pub fn kappa_coefficients(antichain: &Antichain) -> KappaCoefficients {
    let ground = antichain.ground();
    let mut members: Vec<Subset> = union_closure_class(antichain).iter().collect();
    members.sort_by_key(|s| (s.len(), s.bits()));
    let mut values = vec![0i64; ground.size()];
    for (pos, &s) in members.iter().enumerate() {
        let below: i64 = members[..pos].iter().filter(|t| t.is_proper_subset_of(s)).map(|t| values[t.index()]).sum();
        values[s.index()] = 1 - below;
    }
    KappaCoefficients { antichain: antichain.clone(), values }
}

/// `0 ≤ Σ_S κ(S)·c(S)` with the `|S| ≤ 1` terms folded into the constant
/// (`c = 1` there). Stored as `Σ_{|S|≥2} κ(S)c(S) ≥ −Σ_{|S|≤1} κ(S)`.
pub fn char_specific_constraint(antichain: &Antichain) -> LinearConstraint {
    let ground = antichain.ground();
    let kappa = kappa_coefficients(antichain);
    let mut constant = 0;
    let mut terms = Vec::new();
    for (s, k) in kappa.support() {
        if s.len() <= 1 {
            constant += k;
        } else {
            terms.push((s.index(), rat(k)));
        }
    }
    row(ground, Framework::C, terms, Sense::Ge, rat(-constant), format!("kappa-specific:{}", antichain.tag()))
}

/// `Σ_{T: |C∩T| ≥ 2} u(T)·(|C∩T| − 1) ≥ 0`.
pub fn cluster_constraint_u(ground: &GroundSet, c: Subset) -> Result<LinearConstraint> {
    ground.check(c)?;
    if c.len() < 2 {
        return Err(Error::TooSmall);
    }
    let terms = ground
        .subsets()
        .filter_map(|t| {
            let k = c.intersection(t).len();
            (k >= 2).then(|| (t.index(), rat(k as i64 - 1)))
        })
        .collect();
    Ok(row(ground, Framework::U, terms, Sense::Ge, rat(0), format!("cluster-u:{}", ground.format_compact(c))))
}

/// `|C| − 1 − Σ_{S⊆C, |S|≥2} c(S)·(−1)^{|S|} ≥ 0`.
pub fn cluster_constraint_c(ground: &GroundSet, c: Subset) -> Result<LinearConstraint> {
    ground.check(c)?;
    if c.len() < 2 {
        return Err(Error::TooSmall);
    }
    let terms = c.subsets().filter(|s| s.len() >= 2).map(|s| (s.index(), rat(-parity(s.len())))).collect();
    let rhs = rat(1 - c.len() as i64);
    Ok(row(ground, Framework::C, terms, Sense::Ge, rhs, format!("cluster-c:{}", ground.format_compact(c))))
}

/// Rewrites a u-row in c-coordinates through
/// `u(T) = Σ_{S⊇T} (−1)^{|S∖T|}(1 − c(S))` with `c = 1` on `|S| ≤ 1`.
/// The tag is kept.
pub fn u_row_to_c(r: &LinearConstraint) -> LinearConstraint {
    assert_eq!(r.framework(), Framework::U, "u_row_to_c expects a u-row");
    let ground = r.ground();
    let mut a = vec![Rational::zero(); ground.size()];
    for (k, v) in r.coefficients() {
        a[*k] = v.clone();
    }
    // subset Möbius: â(S) = Σ_{T⊆S} (−1)^{|S∖T|} a(T)
    for bit in 0..ground.n() {
        for s in 0..a.len() {
            if s & (1 << bit) != 0 {
                let lower = a[s ^ (1 << bit)].clone();
                a[s] -= lower;
            }
        }
    }
    let mut constant = Rational::zero();
    let mut terms = Vec::new();
    for s in ground.subsets_min(2) {
        let v = &a[s.index()];
        if !v.is_zero() {
            constant += v;
            terms.push((s.index(), -v.clone()));
        }
    }
    row(ground, Framework::C, terms, r.sense(), r.rhs() - constant, r.tag().to_string())
}

/// `κ(S) = Σ_{T∈𝒜, T⊆S} (−1)^{|S∖T|}` over the superset closure; the
/// closed-form counterpart of the recursion, kept for cross-checks.
pub fn kappa_alternating(antichain: &Antichain) -> Vec<i64> {
    let ground = antichain.ground();
    let class = superset_closure(antichain);
    ground
        .subsets()
        .map(|s| class.iter().filter(|t| t.is_subset_of(s)).map(|t| parity(s.difference(t).len())).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::ConstraintSystem;
    use crate::digraph::{enumerate_dags, enumerate_digraphs, DirectedGraph};
    use crate::encode::{
        char_from_eta, characteristic_of, eta_of, standard_imset_of, u_from_characteristic, u_from_eta,
        CharacteristicImset,
    };
    use crate::setfam::enumerate_antichains;

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    fn ac(ground: &GroundSet, sets: &[&str]) -> Antichain {
        Antichain::parse(ground, sets).unwrap()
    }

    #[test]
    fn eta_rows_at_three() {
        let g3 = g(3);
        assert_eq!(eta_system(&g3, &[Family::Cluster]).len(), 4);
        let all = eta_system(&g3, &[Family::Nonneg, Family::Equality, Family::Cluster]);
        assert_eq!(all.len(), 19);
        let ab = all.iter().find(|r| r.tag() == "cluster:ab").unwrap();
        assert_eq!(ab.render(), "eta(a|∅) + eta(a|c) + eta(b|∅) + eta(b|c) >= 1");
    }

    #[test]
    fn eta_rows_decide_acyclicity() {
        let g3 = g(3);
        let sys = ConstraintSystem::new(
            &g3,
            Framework::Eta,
            eta_system(&g3, &[Family::Nonneg, Family::Equality, Family::Cluster]),
        )
        .unwrap();
        for graph in enumerate_digraphs(&g3, false).unwrap() {
            assert_eq!(sys.satisfied_by_i64(eta_of(&graph).values()), graph.is_acyclic());
        }
        let cyclic = DirectedGraph::from_labelled_arrows(&g3, &[("c", "b"), ("a", "b"), ("b", "a")]).unwrap();
        let bad = sys.first_violation_i64(eta_of(&cyclic).values()).unwrap();
        assert_eq!(bad.family(), "cluster");
    }

    #[test]
    fn equalities() {
        let g3 = g(3);
        let rows = u_equality_system(&g3);
        assert_eq!(rows.len(), 4);
        let mut delta_n = vec![0i64; 8];
        delta_n[7] = 1;
        assert!(!rows[0].holds_i64(&delta_n));
        for n in 2..=4 {
            let gn = g(n);
            let rows = u_equality_system(&gn);
            for dag in enumerate_dags(&gn, false).unwrap() {
                let u = standard_imset_of(&dag).unwrap();
                assert!(rows.iter().all(|r| r.holds_i64(u.values())));
            }
        }
    }

    #[test]
    fn specific_rows() {
        let g3 = g(3);
        let r = specific_constraint(&ac(&g3, &["ab", "ac", "bc"]));
        assert_eq!(r.render(), "u(a,b) + u(a,c) + u(b,c) + u(a,b,c) <= 1");
        assert_eq!(r.tag(), "specific:ab,ac,bc");
        assert_eq!(specific_constraint(&ac(&g3, &["abc"])).render(), "u(a,b,c) <= 1");
        let rows: Vec<_> = enumerate_antichains(&g3, false).unwrap().map(|a| specific_constraint(&a)).collect();
        assert_eq!(rows.len(), 18);
        for dag in enumerate_dags(&g3, false).unwrap() {
            let u = standard_imset_of(&dag).unwrap();
            assert!(rows.iter().all(|r| r.holds_i64(u.values())));
        }
    }

    #[test]
    fn kappa_tables() {
        let g3 = g(3);
        let table = |sets: &[&str]| -> Vec<(String, i64)> {
            kappa_coefficients(&ac(&g3, sets)).support().into_iter().map(|(s, k)| (g3.format_compact(s), k)).collect()
        };
        let own = |v: &[(&str, i64)]| -> Vec<(String, i64)> { v.iter().map(|(s, k)| (s.to_string(), *k)).collect() };
        assert_eq!(table(&["ab", "ac", "bc"]), own(&[("ab", 1), ("ac", 1), ("bc", 1), ("abc", -2)]));
        assert_eq!(table(&["c", "ab"]), own(&[("ab", 1), ("c", 1), ("abc", -1)]));
        assert_eq!(
            table(&["a", "b", "c"]),
            own(&[("a", 1), ("b", 1), ("ab", -1), ("c", 1), ("ac", -1), ("bc", -1), ("abc", 1)])
        );
    }

    #[test]
    fn kappa_recursion_matches_alternating_sum() {
        for n in 2..=4 {
            let gn = g(n);
            for a in enumerate_antichains(&gn, false).unwrap() {
                let k = kappa_coefficients(&a);
                assert_eq!(k.values(), kappa_alternating(&a).as_slice(), "{}", a.tag());
                assert_eq!(k.values().iter().sum::<i64>(), 1);
                for s in superset_closure(&a).iter() {
                    assert_eq!(s.subsets().map(|t| k.get(t)).sum::<i64>(), 1);
                }
                for s in a.sets() {
                    assert_eq!(k.get(*s), 1);
                }
            }
        }
    }

    #[test]
    fn char_specific_rows() {
        let g3 = g(3);
        let r = |sets: &[&str]| char_specific_constraint(&ac(&g3, sets));
        assert_eq!(r(&["a", "b"]).render(), "-c(a,b) >= -2");
        assert_eq!(r(&["c", "ab"]).render(), "c(a,b) - c(a,b,c) >= -1");
        let vacuous = r(&["c"]);
        assert!(vacuous.is_vacuous());
        assert_eq!(vacuous.render(), "0 >= -1");
    }

    fn box_points(ground: &GroundSet) -> Vec<CharacteristicImset> {
        let coords: Vec<Subset> = ground.subsets_min(2).collect();
        let bounds: Vec<i64> = coords.iter().map(|s| 1 << (s.len() - 2)).collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; coords.len()];
        loop {
            out.push(CharacteristicImset::from_p2(ground, &cur).unwrap());
            let mut k = 0;
            while k < cur.len() && cur[k] == bounds[k] {
                cur[k] = 0;
                k += 1;
            }
            if k == cur.len() {
                return out;
            }
            cur[k] += 1;
        }
    }

    #[test]
    fn specific_rows_translate_between_frameworks() {
        let g3 = g(3);
        let points = box_points(&g3);
        for a in enumerate_antichains(&g3, false).unwrap() {
            let (ur, cr) = (specific_constraint(&a), char_specific_constraint(&a));
            let translated = u_row_to_c(&ur);
            for c in &points {
                let u = u_from_characteristic(c);
                let expect = ur.holds_i64(u.values());
                assert_eq!(cr.holds_i64(c.dense()), expect);
                assert_eq!(translated.holds_i64(c.dense()), expect);
            }
        }
        // sampled at four variables
        use rand::{Rng, SeedableRng};
        let g4 = g(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let antichains: Vec<Antichain> = enumerate_antichains(&g4, false).unwrap().collect();
        for _ in 0..3000 {
            let a = &antichains[rng.gen_range(0..antichains.len())];
            let p2: Vec<i64> = g4.subsets_min(2).map(|s| rng.gen_range(0..=(1i64 << (s.len() - 2)))).collect();
            let c = CharacteristicImset::from_p2(&g4, &p2).unwrap();
            let u = u_from_characteristic(&c);
            assert_eq!(specific_constraint(a).holds_i64(u.values()), char_specific_constraint(a).holds_i64(c.dense()));
        }
    }

    #[test]
    fn cluster_rows() {
        let g3 = g(3);
        let u = |s: &str| cluster_constraint_u(&g3, g3.parse(s).unwrap()).unwrap().render();
        let c = |s: &str| cluster_constraint_c(&g3, g3.parse(s).unwrap()).unwrap().render();
        assert_eq!(u("ab"), "u(a,b) + u(a,b,c) >= 0");
        assert_eq!(u("abc"), "u(a,b) + u(a,c) + u(b,c) + 2·u(a,b,c) >= 0");
        assert_eq!(c("ab"), "-c(a,b) >= -1");
        assert_eq!(c("abc"), "-c(a,b) - c(a,c) - c(b,c) + c(a,b,c) >= -2");
        assert!(matches!(cluster_constraint_u(&g3, g3.parse("a").unwrap()), Err(Error::TooSmall)));
        assert!(matches!(cluster_constraint_c(&g3, Subset::EMPTY), Err(Error::TooSmall)));
        let frac: Vec<Rational> = {
            let mut v = vec![rat(1); 8];
            v[7] = crate::rational::ratio(3, 2);
            v
        };
        for s in ["ab", "abc"] {
            assert!(cluster_constraint_c(&g3, g3.parse(s).unwrap()).unwrap().holds(&frac));
        }
        for n in 2..=4 {
            let gn = g(n);
            for dag in enumerate_dags(&gn, false).unwrap() {
                let u = standard_imset_of(&dag).unwrap();
                let ch = characteristic_of(&u).unwrap();
                for cset in gn.subsets_min(2) {
                    assert!(cluster_constraint_u(&gn, cset).unwrap().holds_i64(u.values()));
                    assert!(cluster_constraint_c(&gn, cset).unwrap().holds_i64(ch.dense()));
                }
            }
        }
    }

    #[test]
    fn three_cluster_forms_agree_on_every_digraph() {
        let g3 = g(3);
        for graph in enumerate_digraphs(&g3, false).unwrap() {
            let eta = eta_of(&graph);
            let (u, c) = (u_from_eta(&eta), char_from_eta(&eta));
            let eta_rows = eta_system(&g3, &[Family::Cluster]);
            for cset in g3.subsets_min(2) {
                let tag = format!("cluster:{}", g3.format_compact(cset));
                let r1 = eta_rows.iter().find(|r| r.tag() == tag).unwrap().lhs_i64(eta.values()) - rat(1);
                let r2 = cluster_constraint_u(&g3, cset).unwrap().lhs_i64(u.values());
                let c3 = cluster_constraint_c(&g3, cset).unwrap();
                let r3 = c3.lhs_i64(c.dense()) - c3.rhs();
                assert_eq!(r1, r2);
                assert_eq!(r2, r3);
            }
        }
    }
}
