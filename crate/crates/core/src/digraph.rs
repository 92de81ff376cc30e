//! Directed graphs over the variables, stored as parent sets.

use crate::error::{Error, Result};
use crate::setfam::{GroundSet, Subset};

/// A loop-free directed graph; `parents[i]` is the set of `j` with `j → i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    ground: GroundSet,
    parents: Vec<Subset>,
}

impl DirectedGraph {
    pub fn new(ground: &GroundSet, parents: Vec<Subset>) -> Result<Self> {
        if parents.len() != ground.n() {
            return Err(Error::InvalidGraph(format!(
                "expected {} parent sets, got {}",
                ground.n(),
                parents.len()
            )));
        }
        for (i, pa) in parents.iter().enumerate() {
            ground.check(*pa)?;
            if pa.contains(i) {
                return Err(Error::InvalidGraph(format!("loop at {}", ground.labels()[i])));
            }
        }
        Ok(DirectedGraph { ground: ground.clone(), parents })
    }

    pub fn empty(ground: &GroundSet) -> Self {
        DirectedGraph { ground: ground.clone(), parents: vec![Subset::EMPTY; ground.n()] }
    }

    /// Builds a graph from arrows `(j, i)` meaning `j → i`.
    pub fn from_arrows(ground: &GroundSet, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut parents = vec![Subset::EMPTY; ground.n()];
        for &(j, i) in arrows {
            if i >= ground.n() || j >= ground.n() {
                return Err(Error::InvalidGraph(format!("node index out of range in {j}→{i}")));
            }
            parents[i] = parents[i].with(j);
        }
        DirectedGraph::new(ground, parents)
    }

    /// Arrows given by label pairs `("j", "i")` meaning `j → i`.
    pub fn from_labelled_arrows<S: AsRef<str>>(ground: &GroundSet, arrows: &[(S, S)]) -> Result<Self> {
        let idx = arrows
            .iter()
            .map(|(j, i)| Ok((ground.position(j.as_ref())?, ground.position(i.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        DirectedGraph::from_arrows(ground, &idx)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn parents(&self) -> &[Subset] {
        &self.parents
    }

    pub fn parents_of(&self, i: usize) -> Subset {
        self.parents[i]
    }

    pub fn has_arrow(&self, from: usize, to: usize) -> bool {
        self.parents[to].contains(from)
    }

    /// Arrows `(j, i)` for `j → i`, ordered by head then tail.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(i, pa)| pa.elements().map(move |j| (j, i)))
            .collect()
    }

    pub fn arrow_count(&self) -> usize {
        self.parents.iter().map(|p| p.len()).sum()
    }

    pub fn is_acyclic(&self) -> bool {
        peels_completely(&self.parents, self.ground.full())
    }

    /// Number of `i ∈ s` with `s ∖ {i} ⊆ pa(i)`.
    pub fn super_terminal_count(&self, s: Subset) -> Result<usize> {
        self.ground.check(s)?;
        if s.len() < 2 {
            return Err(Error::TooSmall);
        }
        Ok(s.elements().filter(|&i| s.without(i).is_subset_of(self.parents[i])).count())
    }
}

/// Repeatedly removes a node of `nodes` without parents inside `nodes`.
fn peels_completely(parents: &[Subset], nodes: Subset) -> bool {
    let mut remaining = nodes;
    while !remaining.is_empty() {
        match remaining.elements().find(|&i| parents[i].is_disjoint(remaining)) {
            Some(i) => remaining = remaining.without(i),
            None => return false,
        }
    }
    true
}

fn parent_candidates(ground: &GroundSet) -> Vec<Vec<Subset>> {
    (0..ground.n()).map(|i| ground.full().without(i).subsets().collect()).collect()
}

/// Streams all `2^{n(n-1)}` directed graphs, lexicographic in
/// `(parents[0], parents[1], ...)` with the last node varying fastest.
pub struct Digraphs {
    ground: GroundSet,
    cands: Vec<Vec<Subset>>,
    counter: u64,
    total: u64,
}

impl Iterator for Digraphs {
    type Item = DirectedGraph;

    fn next(&mut self) -> Option<DirectedGraph> {
        if self.counter >= self.total {
            return None;
        }
        let n = self.ground.n();
        let per = (n - 1) as u32;
        let mut parents = vec![Subset::EMPTY; n];
        for (i, pa) in parents.iter_mut().enumerate() {
            let shift = per * (n - 1 - i) as u32;
            let digit = (self.counter >> shift) & ((1 << per) - 1);
            *pa = self.cands[i][digit as usize];
        }
        self.counter += 1;
        Some(DirectedGraph { ground: self.ground.clone(), parents })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.counter) as usize;
        (left, Some(left))
    }
}

/// All directed graphs over `ground`. Refused for `n ≥ 5` without `force`.
pub fn enumerate_digraphs(ground: &GroundSet, force: bool) -> Result<Digraphs> {
    let n = ground.n();
    if n >= 5 && !force {
        return Err(Error::TooLarge { what: "digraph enumeration", n });
    }
    Ok(Digraphs {
        ground: ground.clone(),
        cands: parent_candidates(ground),
        counter: 0,
        total: 1u64 << (n * (n - 1)),
    })
}

/// Streams acyclic graphs in the same order as [`Digraphs`], extending parent
/// assignments node by node and pruning as soon as a cycle closes.
pub struct Dags {
    ground: GroundSet,
    cands: Vec<Vec<Subset>>,
    choice: Vec<usize>,
    level: usize,
    done: bool,
}

impl Dags {
    fn prefix_acyclic(&self, k: usize) -> bool {
        let parents: Vec<Subset> = (0..=k).map(|i| self.cands[i][self.choice[i]]).collect();
        peels_completely(&parents, Subset::from_bits((1u32 << (k + 1)) - 1))
    }
}

impl Iterator for Dags {
    type Item = DirectedGraph;

    fn next(&mut self) -> Option<DirectedGraph> {
        let last = self.ground.n() - 1;
        while !self.done {
            let k = self.level;
            if self.choice[k] == self.cands[k].len() {
                if k == 0 {
                    self.done = true;
                    break;
                }
                self.level -= 1;
                self.choice[k - 1] += 1;
                continue;
            }
            if !self.prefix_acyclic(k) {
                self.choice[k] += 1;
            } else if k == last {
                let parents = (0..=last).map(|i| self.cands[i][self.choice[i]]).collect();
                self.choice[k] += 1;
                return Some(DirectedGraph { ground: self.ground.clone(), parents });
            } else {
                self.level += 1;
                self.choice[k + 1] = 0;
            }
        }
        None
    }
}

/// All acyclic directed graphs over `ground`. Refused for `n ≥ 6` without `force`.
pub fn enumerate_dags(ground: &GroundSet, force: bool) -> Result<Dags> {
    let n = ground.n();
    if n >= 6 && !force {
        return Err(Error::TooLarge { what: "DAG enumeration", n });
    }
    Ok(Dags {
        ground: ground.clone(),
        cands: parent_candidates(ground),
        choice: vec![0; n],
        level: 0,
        done: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    /// a ⇄ b ← c
    fn example_one() -> DirectedGraph {
        let n3 = g(3);
        DirectedGraph::from_labelled_arrows(&n3, &[("b", "a"), ("a", "b"), ("c", "b")]).unwrap()
    }

    /// DFS with colours; a grey-to-grey edge is a back edge.
    fn has_cycle_dfs(graph: &DirectedGraph) -> bool {
        fn visit(graph: &DirectedGraph, v: usize, colour: &mut [u8]) -> bool {
            colour[v] = 1;
            let n = graph.ground().n();
            for w in 0..n {
                if graph.has_arrow(v, w) {
                    if colour[w] == 1 || (colour[w] == 0 && visit(graph, w, colour)) {
                        return true;
                    }
                }
            }
            colour[v] = 2;
            false
        }
        let n = graph.ground().n();
        let mut colour = vec![0u8; n];
        (0..n).any(|v| colour[v] == 0 && visit(graph, v, &mut colour))
    }

    #[test]
    fn acyclicity_examples() {
        assert!(!example_one().is_acyclic());
        assert!(DirectedGraph::empty(&g(3)).is_acyclic());
        let total = DirectedGraph::from_labelled_arrows(&g(3), &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(total.is_acyclic());
    }

    #[test]
    fn loops_rejected() {
        let n3 = g(3);
        assert!(DirectedGraph::from_arrows(&n3, &[(1, 1)]).is_err());
        assert!(DirectedGraph::new(&n3, vec![Subset::EMPTY; 2]).is_err());
    }

    #[test]
    fn acyclicity_agrees_with_dfs() {
        for n in 2..=3 {
            for graph in enumerate_digraphs(&g(n), false).unwrap() {
                assert_eq!(graph.is_acyclic(), !has_cycle_dfs(&graph), "{:?}", graph.arrows());
            }
        }
    }

    #[test]
    fn digraph_counts() {
        assert_eq!(enumerate_digraphs(&g(2), false).unwrap().count(), 4);
        assert_eq!(enumerate_digraphs(&g(3), false).unwrap().count(), 64);
        assert!(enumerate_digraphs(&g(5), false).is_err());
        for graph in enumerate_digraphs(&g(3), false).unwrap() {
            for (i, pa) in graph.parents().iter().enumerate() {
                assert!(!pa.contains(i));
            }
        }
        let mut all: Vec<_> = enumerate_digraphs(&g(3), false).unwrap().collect();
        all.dedup();
        assert_eq!(all.len(), 64);
    }

    #[test]
    fn dags_equal_filtered_digraphs() {
        for n in 2..=4 {
            let filtered: Vec<_> =
                enumerate_digraphs(&g(n), false).unwrap().filter(|d| d.is_acyclic()).collect();
            let dags: Vec<_> = enumerate_dags(&g(n), false).unwrap().collect();
            assert_eq!(dags, filtered, "n={n}");
        }
    }

    #[test]
    fn dag_counts() {
        assert_eq!(enumerate_dags(&g(3), false).unwrap().count(), 25);
        assert_eq!(enumerate_dags(&g(4), false).unwrap().count(), 543);
        assert_eq!(enumerate_dags(&g(5), false).unwrap().count(), 29_281);
        assert!(enumerate_dags(&g(6), false).is_err());
    }

    #[test]
    fn dag_count_n5_matches_parent_set_recursion() {
        // Robinson's recurrence: inclusion–exclusion over the set of source nodes.
        fn count(n: u64) -> i64 {
            let mut a = vec![1i64];
            let binom = |n: u64, k: u64| -> i64 {
                (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
            };
            for m in 1..=n {
                let mut total = 0i64;
                for k in 1..=m {
                    let sign = if k % 2 == 1 { 1 } else { -1 };
                    total += sign * binom(m, k) * (1i64 << (k * (m - k))) * a[(m - k) as usize];
                }
                a.push(total);
            }
            a[n as usize]
        }
        assert_eq!(count(3), 25);
        assert_eq!(count(4), 543);
        assert_eq!(count(5), 29_281);
    }

    #[test]
    fn super_terminal_examples() {
        let n3 = g(3);
        let ex1 = example_one();
        assert_eq!(ex1.super_terminal_count(n3.parse("ab").unwrap()).unwrap(), 2);
        assert_eq!(ex1.super_terminal_count(n3.parse("ac").unwrap()).unwrap(), 0);
        assert!(ex1.super_terminal_count(n3.parse("a").unwrap()).is_err());
    }

    #[test]
    fn acyclic_graphs_have_at_most_one_super_terminal_node() {
        for n in 2..=4 {
            let ground = g(n);
            for dag in enumerate_dags(&ground, false).unwrap() {
                for s in ground.subsets_min(2) {
                    assert!(dag.super_terminal_count(s).unwrap() <= 1);
                }
            }
        }
    }
}
