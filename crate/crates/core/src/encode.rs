//! The three vector encodings of directed graphs (η-vectors, standard imsets,
//! characteristic imsets) and the maps between them.

use crate::digraph::DirectedGraph;
use crate::error::{Error, Result};
use crate::setfam::{superset_mobius, superset_sum, GroundSet, Subset};

/// Dense position of the pair `(i|B)`: blocks by node, then `B` with bit `i`
/// squeezed out, ascending.
pub fn eta_index(n: usize, i: usize, b: Subset) -> usize {
    debug_assert!(!b.contains(i));
    let bits = b.bits();
    let low = bits & ((1 << i) - 1);
    let high = (bits >> (i + 1)) << i;
    (i << (n - 1)) | (low | high) as usize
}

/// Inverse of [`eta_index`].
pub fn eta_pair(n: usize, index: usize) -> (usize, Subset) {
    let i = index >> (n - 1);
    let packed = (index & ((1 << (n - 1)) - 1)) as u32;
    let low = packed & ((1 << i) - 1);
    let high = (packed >> i) << (i + 1);
    (i, Subset::from_bits(low | high))
}

/// Number of `(i|B)` pairs, `n·2^{n-1}`.
pub fn eta_len(n: usize) -> usize {
    n << (n - 1)
}

/// All `(i|B)` pairs in dense order.
pub fn eta_pairs(ground: &GroundSet) -> impl Iterator<Item = (usize, Subset)> {
    let n = ground.n();
    (0..eta_len(n)).map(move |k| eta_pair(n, k))
}

/// `"i|B"` with `B` comma-joined, `∅` when empty.
pub fn format_eta_key(ground: &GroundSet, i: usize, b: Subset) -> String {
    format!("{}|{}", ground.labels()[i], ground.format(b))
}

pub fn parse_eta_key(ground: &GroundSet, key: &str) -> Result<(usize, Subset)> {
    let (head, tail) = key
        .split_once('|')
        .ok_or_else(|| Error::Parse(format!("eta key {key:?} lacks '|'")))?;
    let i = ground.position(head.trim())?;
    let b = ground.parse(tail)?;
    if b.contains(i) {
        return Err(Error::Parse(format!("eta key {key:?}: node is among its own parents")));
    }
    Ok((i, b))
}

/// η: one entry per pair `(i|B)`, `B ⊆ N∖{i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaVector {
    ground: GroundSet,
    values: Vec<i64>,
}

impl EtaVector {
    pub fn zero(ground: &GroundSet) -> Self {
        EtaVector { ground: ground.clone(), values: vec![0; eta_len(ground.n())] }
    }

    pub fn from_values(ground: &GroundSet, values: Vec<i64>) -> Result<Self> {
        if values.len() != eta_len(ground.n()) {
            return Err(Error::Dimension(format!(
                "eta vector needs {} entries, got {}",
                eta_len(ground.n()),
                values.len()
            )));
        }
        Ok(EtaVector { ground: ground.clone(), values })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: usize, b: Subset) -> i64 {
        self.values[eta_index(self.ground.n(), i, b)]
    }

    pub fn set(&mut self, i: usize, b: Subset, value: i64) {
        let k = eta_index(self.ground.n(), i, b);
        self.values[k] = value;
    }

    /// Non-zero entries as `((i, B), value)`.
    pub fn support(&self) -> Vec<((usize, Subset), i64)> {
        let n = self.ground.n();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(k, v)| (eta_pair(n, k), *v))
            .collect()
    }

    /// `Σ_B η(j|B) = 1` for every node `j`.
    pub fn satisfies_block_sums(&self) -> bool {
        let block = 1 << (self.ground.n() - 1);
        self.values.chunks(block).all(|c| c.iter().sum::<i64>() == 1)
    }
}

/// An integer vector over all subsets of `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardImset {
    ground: GroundSet,
    values: Vec<i64>,
}

impl StandardImset {
    pub fn zero(ground: &GroundSet) -> Self {
        StandardImset { ground: ground.clone(), values: vec![0; ground.size()] }
    }

    pub fn from_values(ground: &GroundSet, values: Vec<i64>) -> Result<Self> {
        if values.len() != ground.size() {
            return Err(Error::Dimension(format!(
                "imset needs {} entries, got {}",
                ground.size(),
                values.len()
            )));
        }
        Ok(StandardImset { ground: ground.clone(), values })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> i64 {
        self.values[s.index()]
    }

    pub fn set(&mut self, s: Subset, value: i64) {
        self.values[s.index()] = value;
    }

    pub fn add_basic(&mut self, s: Subset, coeff: i64) {
        self.values[s.index()] += coeff;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }

    /// `Σ_T u(T) = 0` and `Σ_{T∋j} u(T) = 0` for every `j`.
    pub fn is_standardized(&self) -> bool {
        if self.values.iter().sum::<i64>() != 0 {
            return false;
        }
        (0..self.ground.n()).all(|j| {
            self.ground
                .subsets()
                .filter(|t| t.contains(j))
                .map(|t| self.get(t))
                .sum::<i64>()
                == 0
        })
    }

    pub fn scaled_sub(&mut self, other: &StandardImset, coeff: i64) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a -= coeff * b;
        }
    }
}

/// Superset sums of a standard imset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Portrait {
    ground: GroundSet,
    values: Vec<i64>,
}

impl Portrait {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> i64 {
        self.values[s.index()]
    }
}

/// Characteristic imset, stored densely over all subsets. Entries for
/// `|S| ≤ 1` are `1` for genuine characteristic imsets; the η-route keeps
/// whatever the linear map produces there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacteristicImset {
    ground: GroundSet,
    values: Vec<i64>,
}

impl CharacteristicImset {
    /// Builds from entries over `𝒫₂(N)` listed in ascending bitmask order;
    /// entries for `|S| ≤ 1` are set to `1`.
    pub fn from_p2(ground: &GroundSet, p2_values: &[i64]) -> Result<Self> {
        let coords: Vec<Subset> = ground.subsets_min(2).collect();
        if coords.len() != p2_values.len() {
            return Err(Error::Dimension(format!(
                "characteristic imset needs {} entries, got {}",
                coords.len(),
                p2_values.len()
            )));
        }
        let mut values = vec![1; ground.size()];
        for (s, v) in coords.iter().zip(p2_values) {
            values[s.index()] = *v;
        }
        Ok(CharacteristicImset { ground: ground.clone(), values })
    }

    /// Dense constructor; entries for `|S| ≤ 1` are overwritten with `1`.
    pub fn from_dense(ground: &GroundSet, mut values: Vec<i64>) -> Result<Self> {
        if values.len() != ground.size() {
            return Err(Error::Dimension(format!(
                "characteristic imset needs {} entries, got {}",
                ground.size(),
                values.len()
            )));
        }
        for s in ground.subsets().filter(|s| s.len() <= 1) {
            values[s.index()] = 1;
        }
        Ok(CharacteristicImset { ground: ground.clone(), values })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// All `2^n` entries.
    pub fn dense(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> i64 {
        self.values[s.index()]
    }

    /// Entries over `𝒫₂(N)` in ascending bitmask order.
    pub fn p2_values(&self) -> Vec<i64> {
        self.ground.subsets_min(2).map(|s| self.get(s)).collect()
    }

    pub fn is_zero_one(&self) -> bool {
        self.ground.subsets_min(2).all(|s| matches!(self.get(s), 0 | 1))
    }
}

/// `δ_A`.
pub fn basic_vector(ground: &GroundSet, a: Subset) -> Result<StandardImset> {
    ground.check(a)?;
    let mut u = StandardImset::zero(ground);
    u.set(a, 1);
    Ok(u)
}

/// `δ_C − δ_{A∪C} − δ_{B∪C} + δ_{A∪B∪C}` for pairwise disjoint `A, B, C`.
pub fn semi_elementary_imset(
    ground: &GroundSet,
    a: Subset,
    b: Subset,
    c: Subset,
) -> Result<StandardImset> {
    for s in [a, b, c] {
        ground.check(s)?;
    }
    if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
        return Err(Error::Overlap);
    }
    let mut u = StandardImset::zero(ground);
    u.add_basic(c, 1);
    u.add_basic(a.union(c), -1);
    u.add_basic(b.union(c), -1);
    u.add_basic(a.union(b).union(c), 1);
    Ok(u)
}

/// `η_G(i|B) = 1` iff `B = pa_G(i)`.
pub fn eta_of(graph: &DirectedGraph) -> EtaVector {
    let mut eta = EtaVector::zero(graph.ground());
    for (i, pa) in graph.parents().iter().enumerate() {
        eta.set(i, *pa, 1);
    }
    eta
}

/// `u_G = δ_N − δ_∅ + Σ_i (δ_{pa(i)} − δ_{{i}∪pa(i)})`; acyclic graphs only.
pub fn standard_imset_of(graph: &DirectedGraph) -> Result<StandardImset> {
    if !graph.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let ground = graph.ground();
    let mut u = StandardImset::zero(ground);
    u.add_basic(ground.full(), 1);
    u.add_basic(Subset::EMPTY, -1);
    for (i, pa) in graph.parents().iter().enumerate() {
        u.add_basic(*pa, 1);
        u.add_basic(pa.with(i), -1);
    }
    Ok(u)
}

/// The affine η → u map, defined for every η.
pub fn u_from_eta(eta: &EtaVector) -> StandardImset {
    let ground = eta.ground();
    let n = ground.n();
    let mut u = StandardImset::zero(ground);
    u.add_basic(ground.full(), 1);
    u.add_basic(Subset::EMPTY, -1);
    for (k, v) in eta.values().iter().enumerate() {
        if *v != 0 {
            let (i, b) = eta_pair(n, k);
            u.add_basic(b, *v);
            u.add_basic(b.with(i), -*v);
        }
    }
    u
}

/// `p(S) = Σ_{T ⊇ S} u(T)`.
pub fn portrait_of(u: &StandardImset) -> Portrait {
    let mut values = u.values.clone();
    superset_sum(&mut values);
    Portrait { ground: u.ground.clone(), values }
}

/// `c(S) = 1 − p(S)`; rejects imsets violating the standardization equalities.
pub fn characteristic_of(u: &StandardImset) -> Result<CharacteristicImset> {
    if !u.is_standardized() {
        return Err(Error::NotStandardized);
    }
    let p = portrait_of(u);
    let values = p.values.iter().map(|v| 1 - v).collect();
    Ok(CharacteristicImset { ground: u.ground.clone(), values })
}

/// `u(T) = Σ_{S ⊇ T} (−1)^{|S∖T|} (1 − c(S))`, reading `c(S) = 1` for `|S| ≤ 1`.
pub fn u_from_characteristic(c: &CharacteristicImset) -> StandardImset {
    let ground = c.ground();
    let mut values: Vec<i64> = ground
        .subsets()
        .map(|s| if s.len() <= 1 { 0 } else { 1 - c.get(s) })
        .collect();
    superset_mobius(&mut values);
    StandardImset { ground: ground.clone(), values }
}

/// `c(S) = Σ_{i∈S} Σ_{S∖{i} ⊆ B ⊆ N∖{i}} η(i|B)` for `S ≠ ∅`; `c(∅) = 1`.
pub fn char_from_eta(eta: &EtaVector) -> CharacteristicImset {
    let ground = eta.ground();
    let n = ground.n();
    // per node, subset-sum over B ⊇ D inside N∖{i}
    let block = 1usize << (n - 1);
    let mut up = eta.values().to_vec();
    for chunk in up.chunks_mut(block) {
        superset_sum(chunk);
    }
    let mut values = vec![0i64; ground.size()];
    values[0] = 1;
    for s in ground.subsets_min(1) {
        values[s.index()] = s
            .elements()
            .map(|i| up[eta_index(n, i, s.without(i))])
            .sum();
    }
    CharacteristicImset { ground: ground.clone(), values }
}

/// Markov equivalence of two acyclic graphs, decided by imset equality.
pub fn markov_equivalent(g: &DirectedGraph, h: &DirectedGraph) -> Result<bool> {
    Ok(standard_imset_of(g)? == standard_imset_of(h)?)
}

/// Standard imset of the empty graph: `δ_N + (n−1)δ_∅ − Σ_i δ_{i}`.
pub fn empty_graph_imset(ground: &GroundSet) -> StandardImset {
    let mut u = StandardImset::zero(ground);
    u.add_basic(ground.full(), 1);
    u.add_basic(Subset::EMPTY, ground.n() as i64 - 1);
    for i in 0..ground.n() {
        u.add_basic(Subset::singleton(i), -1);
    }
    u
}

/// Renders entries as `(key, value)` with zero entries dropped.
pub fn imset_entries(ground: &GroundSet, values: &[i64], min_card: usize) -> Vec<(String, i64)> {
    ground
        .subsets_min(min_card)
        .filter(|s| values[s.index()] != 0)
        .map(|s| (ground.format(s), values[s.index()]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{enumerate_dags, enumerate_digraphs};

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    fn s(ground: &GroundSet, text: &str) -> Subset {
        ground.parse(text).unwrap()
    }

    fn imset(ground: &GroundSet, entries: &[(&str, i64)]) -> StandardImset {
        let mut u = StandardImset::zero(ground);
        for (k, v) in entries {
            u.add_basic(s(ground, k), *v);
        }
        u
    }

    fn example_one() -> DirectedGraph {
        DirectedGraph::from_labelled_arrows(&g(3), &[("b", "a"), ("a", "b"), ("c", "b")]).unwrap()
    }

    fn complete_dag() -> DirectedGraph {
        DirectedGraph::from_labelled_arrows(&g(3), &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
    }

    fn a_to_b() -> DirectedGraph {
        DirectedGraph::from_labelled_arrows(&g(3), &[("a", "b")]).unwrap()
    }

    #[test]
    fn eta_index_round_trip() {
        for n in 2..=6 {
            for k in 0..eta_len(n) {
                let (i, b) = eta_pair(n, k);
                assert!(!b.contains(i));
                assert!(b.index() < 1 << n);
                assert_eq!(eta_index(n, i, b), k);
            }
        }
    }

    #[test]
    fn basic_vectors() {
        let n3 = g(3);
        let d0 = basic_vector(&n3, Subset::EMPTY).unwrap();
        assert_eq!(d0.values().iter().filter(|v| **v != 0).count(), 1);
        assert_eq!(basic_vector(&n3, n3.full()).unwrap().get(n3.full()), 1);
        assert_eq!(basic_vector(&n3, s(&n3, "ab")).unwrap().values().iter().sum::<i64>(), 1);
    }

    #[test]
    fn semi_elementary_examples() {
        let n2 = g(2);
        let u = semi_elementary_imset(&n2, Subset::singleton(0), Subset::singleton(1), Subset::EMPTY)
            .unwrap();
        assert_eq!(u.values(), &[1, -1, -1, 1]);
        let n3 = g(3);
        assert!(semi_elementary_imset(&n3, Subset::EMPTY, s(&n3, "b"), s(&n3, "c")).unwrap().is_zero());
        assert!(matches!(
            semi_elementary_imset(&n3, s(&n3, "a"), s(&n3, "ab"), Subset::EMPTY),
            Err(Error::Overlap)
        ));
    }

    #[test]
    fn semi_elementary_imsets_are_standardized() {
        let n3 = g(3);
        for a in n3.subsets() {
            for b in n3.subsets().filter(|b| b.is_disjoint(a)) {
                for c in n3.subsets().filter(|c| c.is_disjoint(a.union(b))) {
                    assert!(semi_elementary_imset(&n3, a, b, c).unwrap().is_standardized());
                }
            }
        }
    }

    #[test]
    fn eta_example_one() {
        let n3 = g(3);
        let eta = eta_of(&example_one());
        let ones: Vec<_> = eta.support().into_iter().map(|(p, _)| p).collect();
        assert_eq!(ones, vec![(0, s(&n3, "b")), (1, s(&n3, "ac")), (2, Subset::EMPTY)]);
        let empty = eta_of(&DirectedGraph::empty(&n3));
        assert!(empty.support().iter().all(|((_, b), v)| b.is_empty() && *v == 1));
        assert!(eta.satisfies_block_sums());
    }

    #[test]
    fn standard_imset_examples() {
        let n3 = g(3);
        assert!(standard_imset_of(&complete_dag()).unwrap().is_zero());
        assert_eq!(
            standard_imset_of(&DirectedGraph::empty(&n3)).unwrap(),
            imset(&n3, &[("abc", 1), ("∅", 2), ("a", -1), ("b", -1), ("c", -1)])
        );
        assert_eq!(
            standard_imset_of(&a_to_b()).unwrap(),
            imset(&n3, &[("abc", 1), ("∅", 1), ("ab", -1), ("c", -1)])
        );
        assert!(matches!(standard_imset_of(&example_one()), Err(Error::Cyclic)));
        assert_eq!(empty_graph_imset(&n3), standard_imset_of(&DirectedGraph::empty(&n3)).unwrap());
    }

    #[test]
    fn eta_route_matches_definition() {
        let n3 = g(3);
        assert_eq!(u_from_eta(&eta_of(&DirectedGraph::empty(&n3))), empty_graph_imset(&n3));
        for n in 2..=4 {
            for dag in enumerate_dags(&g(n), false).unwrap() {
                assert_eq!(u_from_eta(&eta_of(&dag)), standard_imset_of(&dag).unwrap());
            }
        }
        let cyclic = u_from_eta(&eta_of(&example_one()));
        assert!(cyclic.is_standardized());
        // δ_abc − δ_∅ + (δ_b − δ_ab) + (δ_ac − δ_abc) + (δ_∅ − δ_c)
        assert_eq!(cyclic, imset(&n3, &[("b", 1), ("ab", -1), ("ac", 1), ("c", -1)]));
    }

    #[test]
    fn portrait_examples() {
        let n3 = g(3);
        assert!(portrait_of(&StandardImset::zero(&n3)).values().iter().all(|v| *v == 0));
        assert!(portrait_of(&basic_vector(&n3, n3.full()).unwrap()).values().iter().all(|v| *v == 1));
        let p = portrait_of(&standard_imset_of(&a_to_b()).unwrap());
        assert_eq!(p.get(s(&n3, "ab")), 0);
        assert_eq!(p.get(s(&n3, "ac")), 1);
        assert_eq!(p.get(s(&n3, "bc")), 1);
        assert_eq!(p.get(s(&n3, "abc")), 1);
    }

    #[test]
    fn characteristic_examples() {
        let n3 = g(3);
        let c = characteristic_of(&standard_imset_of(&complete_dag()).unwrap()).unwrap();
        assert_eq!(c.p2_values(), vec![1, 1, 1, 1]);
        let c = characteristic_of(&empty_graph_imset(&n3)).unwrap();
        assert_eq!(c.p2_values(), vec![0, 0, 0, 0]);
        let c = characteristic_of(&standard_imset_of(&a_to_b()).unwrap()).unwrap();
        assert_eq!(c.p2_values(), vec![1, 0, 0, 0]);
        assert!(matches!(
            characteristic_of(&basic_vector(&n3, n3.full()).unwrap()),
            Err(Error::NotStandardized)
        ));
    }

    #[test]
    fn inverse_examples() {
        let n3 = g(3);
        assert!(u_from_characteristic(&CharacteristicImset::from_p2(&n3, &[1, 1, 1, 1]).unwrap()).is_zero());
        assert_eq!(
            u_from_characteristic(&CharacteristicImset::from_p2(&n3, &[0, 0, 0, 0]).unwrap()),
            empty_graph_imset(&n3)
        );
        for dag in enumerate_dags(&n3, false).unwrap() {
            let u = standard_imset_of(&dag).unwrap();
            assert_eq!(u_from_characteristic(&characteristic_of(&u).unwrap()), u);
        }
    }

    #[test]
    fn quasi_characteristic_example_one() {
        let n3 = g(3);
        let c = char_from_eta(&eta_of(&example_one()));
        assert_eq!(c.get(s(&n3, "ab")), 2);
        assert_eq!(c.get(s(&n3, "ac")), 0);
        assert_eq!(c.get(s(&n3, "bc")), 1);
        assert_eq!(c.get(s(&n3, "abc")), 1);
        assert_eq!(char_from_eta(&eta_of(&complete_dag())).p2_values(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn char_from_eta_counts_super_terminal_nodes() {
        for n in 2..=3 {
            let ground = g(n);
            for graph in enumerate_digraphs(&ground, false).unwrap() {
                let c = char_from_eta(&eta_of(&graph));
                for t in ground.subsets_min(2) {
                    assert_eq!(c.get(t), graph.super_terminal_count(t).unwrap() as i64);
                }
            }
        }
    }

    #[test]
    fn char_from_eta_commutes_for_dags() {
        for n in 2..=4 {
            for dag in enumerate_dags(&g(n), false).unwrap() {
                let direct = char_from_eta(&eta_of(&dag));
                let via_u = characteristic_of(&standard_imset_of(&dag).unwrap()).unwrap();
                assert_eq!(direct, via_u);
                assert!(direct.is_zero_one());
            }
        }
    }

    #[test]
    fn markov_equivalence_examples() {
        let n3 = g(3);
        let ab = a_to_b();
        let ba = DirectedGraph::from_labelled_arrows(&n3, &[("b", "a")]).unwrap();
        assert!(markov_equivalent(&ab, &ba).unwrap());
        assert!(!markov_equivalent(&ab, &DirectedGraph::empty(&n3)).unwrap());
        assert!(markov_equivalent(&ab, &example_one()).is_err());
    }
}
