//! Subsets of the variable set as bitmasks, classes of subsets, antichains and
//! the superset-sum transforms used throughout the encodings.

use std::fmt;
use std::ops::{AddAssign, SubAssign};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARIABLES: usize = 6;

/// Key used for the empty set in every textual format.
pub const EMPTY_KEY: &str = "∅";

/// A subset of the ground set; variable `i` is bit `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        Subset(elems.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_proper_subset_of(self, other: Subset) -> bool {
        self.is_subset_of(other) && self.0 != other.0
    }

    #[inline]
    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub const fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    #[inline]
    pub const fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in ascending bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == mask { None } else { Some(((out | !mask).wrapping_add(1)) & mask) };
            Some(Subset(out))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#b})", self.0)
    }
}

/// The finite set `N` of variables with their labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("GroundSet").field(&self.labels).finish()
    }
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if !(2..=MAX_VARIABLES).contains(&labels.len()) {
            return Err(Error::GroundSize(labels.len()));
        }
        for (k, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(',') || l.contains('|') || l == EMPTY_KEY {
                return Err(Error::Parse(format!("unusable variable label {l:?}")));
            }
            if labels[..k].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels: labels.into() })
    }

    /// Ground set labelled `a, b, c, ...`.
    pub fn standard(n: usize) -> Result<Self> {
        if !(2..=MAX_VARIABLES).contains(&n) {
            return Err(Error::GroundSize(n));
        }
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `2^n`.
    #[inline]
    pub fn size(&self) -> usize {
        1 << self.n()
    }

    #[inline]
    pub fn full(&self) -> Subset {
        Subset((1u32 << self.n()) - 1)
    }

    /// All subsets in ascending bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        (0..self.size() as u32).map(Subset)
    }

    /// Subsets of cardinality at least `min_card`, ascending.
    pub fn subsets_min(&self, min_card: usize) -> impl Iterator<Item = Subset> {
        self.subsets().filter(move |s| s.len() >= min_card)
    }

    pub fn check(&self, s: Subset) -> Result<Subset> {
        if s.index() < self.size() {
            Ok(s)
        } else {
            Err(Error::SubsetOutOfRange { bits: s.bits(), n: self.n() })
        }
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn subset_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        labels
            .iter()
            .try_fold(Subset::EMPTY, |acc, l| Ok(acc.with(self.position(l.as_ref())?)))
    }

    /// Sorted labels joined by commas, `∅` for the empty set.
    pub fn format(&self, s: Subset) -> String {
        if s.is_empty() {
            return EMPTY_KEY.to_string();
        }
        s.elements().map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(",")
    }

    /// Compact form: labels concatenated (`ab`), `∅` for the empty set.
    pub fn format_compact(&self, s: Subset) -> String {
        if s.is_empty() {
            return EMPTY_KEY.to_string();
        }
        s.elements().map(|i| self.labels[i].as_str()).collect()
    }

    /// Parses `"a,b"`, `"∅"` or the empty string. When every label is a single
    /// character the compact form `"ab"` is accepted as well.
    pub fn parse(&self, text: &str) -> Result<Subset> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_KEY || text == "{}" {
            return Ok(Subset::EMPTY);
        }
        let text = text.trim_start_matches('{').trim_end_matches('}');
        if text.contains(',') || self.labels.iter().any(|l| l == text) {
            let parts: Vec<&str> = text.split(',').map(str::trim).collect();
            return self.subset_of(&parts);
        }
        if self.labels.iter().all(|l| l.chars().count() == 1) {
            let parts: Vec<String> = text.chars().map(|c| c.to_string()).collect();
            return self.subset_of(&parts);
        }
        Err(Error::UnknownLabel(text.to_string()))
    }
}

/// A set of subsets in canonical (ascending bitmask) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetClass {
    ground: GroundSet,
    members: Vec<Subset>,
}

impl SetClass {
    pub fn new<I: IntoIterator<Item = Subset>>(ground: &GroundSet, members: I) -> Result<Self> {
        let mut members: Vec<Subset> = members
            .into_iter()
            .map(|s| ground.check(s))
            .collect::<Result<_>>()?;
        members.sort_unstable();
        members.dedup();
        Ok(SetClass { ground: ground.clone(), members })
    }

    fn from_mask(ground: &GroundSet, mask: &[bool]) -> Self {
        let members = (0..mask.len())
            .filter(|&k| mask[k])
            .map(|k| Subset(k as u32))
            .collect();
        SetClass { ground: ground.clone(), members }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    /// Membership table indexed by bitmask.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.ground.size()];
        for s in &self.members {
            mask[s.index()] = true;
        }
        mask
    }

    pub fn is_superset_closed(&self) -> bool {
        let full = self.ground.full();
        let mask = self.mask();
        self.members
            .iter()
            .all(|s| full.difference(*s).elements().all(|i| mask[s.with(i).index()]))
    }

    pub fn is_subset_of(&self, other: &SetClass) -> bool {
        self.members.iter().all(|s| other.contains(*s))
    }

    pub fn format(&self) -> Vec<String> {
        self.members.iter().map(|s| self.ground.format(*s)).collect()
    }
}

/// A non-empty family of non-empty, pairwise incomparable subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl PartialOrd for GroundSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroundSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.labels.cmp(&other.labels)
    }
}

impl Antichain {
    pub fn new<I: IntoIterator<Item = Subset>>(ground: &GroundSet, sets: I) -> Result<Self> {
        let mut sets: Vec<Subset> = sets
            .into_iter()
            .map(|s| ground.check(s))
            .collect::<Result<_>>()?;
        sets.sort_unstable();
        sets.dedup();
        if sets.is_empty() {
            return Err(Error::InvalidAntichain("no sets".into()));
        }
        if sets.iter().any(|s| s.is_empty()) {
            return Err(Error::InvalidAntichain("contains the empty set".into()));
        }
        for (k, s) in sets.iter().enumerate() {
            for t in &sets[k + 1..] {
                if s.is_subset_of(*t) || t.is_subset_of(*s) {
                    return Err(Error::InvalidAntichain(format!(
                        "{} and {} are comparable",
                        ground.format(*s),
                        ground.format(*t)
                    )));
                }
            }
        }
        Ok(Antichain { ground: ground.clone(), sets })
    }

    /// Parses labels like `["a,b", "c"]`.
    pub fn parse<S: AsRef<str>>(ground: &GroundSet, sets: &[S]) -> Result<Self> {
        let subsets = sets.iter().map(|s| ground.parse(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Antichain::new(ground, subsets)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Comma-joined members separated by `;`, e.g. `ab;c`-style tags use this.
    pub fn format(&self) -> Vec<String> {
        self.sets.iter().map(|s| self.ground.format(*s)).collect()
    }

    pub fn tag(&self) -> String {
        self.sets
            .iter()
            .map(|s| self.ground.format_compact(*s))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `{A ⊆ N : |A| ≥ min_card}`.
pub fn power_class(ground: &GroundSet, min_card: usize) -> Result<SetClass> {
    if min_card > ground.n() {
        return Err(Error::Dimension(format!(
            "minimum cardinality {min_card} exceeds {}",
            ground.n()
        )));
    }
    Ok(SetClass { ground: ground.clone(), members: ground.subsets_min(min_card).collect() })
}

/// The class of all supersets of members of the antichain.
pub fn superset_closure(antichain: &Antichain) -> SetClass {
    let ground = antichain.ground();
    let members = ground
        .subsets()
        .filter(|s| antichain.sets().iter().any(|t| t.is_subset_of(*s)))
        .collect();
    SetClass { ground: ground.clone(), members }
}

/// Minimal members of a superset-closed class.
pub fn minimal_sets(class: &SetClass) -> Result<Antichain> {
    if class.is_empty() || class.members().iter().any(|s| s.is_empty()) {
        return Err(Error::InvalidAntichain(
            "class must be non-empty and consist of non-empty sets".into(),
        ));
    }
    if !class.is_superset_closed() {
        return Err(Error::NotSupersetClosed);
    }
    let mask = class.mask();
    let minimal = class
        .iter()
        .filter(|s| s.elements().all(|i| !mask[s.without(i).index()]))
        .collect::<Vec<_>>();
    Antichain::new(class.ground(), minimal)
}

/// All unions of non-empty subfamilies of the antichain.
pub fn union_closure_class(antichain: &Antichain) -> SetClass {
    let ground = antichain.ground();
    let mut mask = vec![false; ground.size()];
    for t in antichain.sets() {
        let current: Vec<usize> = (0..mask.len()).filter(|&k| mask[k]).collect();
        mask[t.index()] = true;
        for k in current {
            mask[k | t.index()] = true;
        }
    }
    SetClass::from_mask(ground, &mask)
}

/// Streams every antichain of non-empty subsets, in lexicographic order of
/// the ascending member lists.
pub struct Antichains {
    ground: GroundSet,
    candidates: Vec<Subset>,
    stack: Vec<usize>,
    done: bool,
}

impl Antichains {
    fn compatible(&self, j: usize) -> bool {
        let c = self.candidates[j];
        self.stack.iter().all(|&k| {
            let s = self.candidates[k];
            !s.is_subset_of(c) && !c.is_subset_of(s)
        })
    }

    fn find_from(&self, start: usize) -> Option<usize> {
        (start..self.candidates.len()).find(|&j| self.compatible(j))
    }
}

impl Iterator for Antichains {
    type Item = Antichain;

    fn next(&mut self) -> Option<Antichain> {
        if self.done {
            return None;
        }
        let start = self.stack.last().map_or(0, |&k| k + 1);
        if let Some(j) = self.find_from(start) {
            self.stack.push(j);
        } else {
            loop {
                let Some(k) = self.stack.pop() else {
                    self.done = true;
                    return None;
                };
                if let Some(j) = self.find_from(k + 1) {
                    self.stack.push(j);
                    break;
                }
            }
        }
        let sets = self.stack.iter().map(|&k| self.candidates[k]).collect();
        Some(Antichain { ground: self.ground.clone(), sets })
    }
}

/// Every non-empty antichain of non-empty subsets, each exactly once.
/// Refused for `n ≥ 6` unless `force` is set.
pub fn enumerate_antichains(ground: &GroundSet, force: bool) -> Result<Antichains> {
    if ground.n() >= 6 && !force {
        return Err(Error::TooLarge { what: "antichain enumeration", n: ground.n() });
    }
    Ok(Antichains {
        ground: ground.clone(),
        candidates: ground.subsets_min(1).collect(),
        stack: Vec::new(),
        done: false,
    })
}

/// In place: `v[S] <- Σ_{T ⊇ S} v[T]`.
pub fn superset_sum<T>(values: &mut [T])
where
    T: Clone + for<'a> AddAssign<&'a T>,
{
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut bit = 1;
    while bit < len {
        for s in 0..len {
            if s & bit == 0 {
                let hi = values[s | bit].clone();
                values[s] += &hi;
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`superset_sum`]: `v[T] <- Σ_{S ⊇ T} (-1)^{|S∖T|} v[S]`.
pub fn superset_mobius<T>(values: &mut [T])
where
    T: Clone + for<'a> SubAssign<&'a T>,
{
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut bit = 1;
    while bit < len {
        for s in 0..len {
            if s & bit == 0 {
                let hi = values[s | bit].clone();
                values[s] -= &hi;
            }
        }
        bit <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> GroundSet {
        GroundSet::standard(n).unwrap()
    }

    fn chain(ground: &GroundSet, sets: &[&str]) -> Antichain {
        Antichain::parse(ground, sets).unwrap()
    }

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::standard(1).is_err());
        assert!(GroundSet::standard(7).is_err());
        assert!(matches!(GroundSet::new(["x", "x"]), Err(Error::DuplicateLabel(_))));
        assert_eq!(g(6).full().bits(), 63);
    }

    #[test]
    fn parse_and_format() {
        let n3 = g(3);
        assert_eq!(n3.parse("a,b").unwrap(), Subset::from_bits(3));
        assert_eq!(n3.parse("bc").unwrap(), Subset::from_bits(6));
        assert_eq!(n3.parse("∅").unwrap(), Subset::EMPTY);
        assert_eq!(n3.format(Subset::from_bits(5)), "a,c");
        assert_eq!(n3.format_compact(Subset::from_bits(7)), "abc");
        assert!(n3.parse("d").is_err());
    }

    #[test]
    fn subsets_of_mask() {
        let s = Subset::from_bits(0b1010);
        let subs: Vec<u32> = s.subsets().map(Subset::bits).collect();
        assert_eq!(subs, vec![0, 2, 8, 10]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn power_class_sizes() {
        let n3 = g(3);
        let p2 = power_class(&n3, 2).unwrap();
        assert_eq!(p2.format(), vec!["a,b", "a,c", "b,c", "a,b,c"]);
        assert_eq!(power_class(&n3, 0).unwrap().len(), 8);
        assert_eq!(power_class(&g(5), 2).unwrap().len(), 26);
        assert!(power_class(&n3, 4).is_err());
    }

    #[test]
    fn closure_examples() {
        let n3 = g(3);
        assert_eq!(superset_closure(&chain(&n3, &["ab"])).format(), vec!["a,b", "a,b,c"]);
        assert_eq!(
            superset_closure(&chain(&n3, &["ab", "ac", "bc"])).format(),
            vec!["a,b", "a,c", "b,c", "a,b,c"]
        );
        assert_eq!(
            superset_closure(&chain(&n3, &["c"])).format(),
            vec!["c", "a,c", "b,c", "a,b,c"]
        );
    }

    #[test]
    fn minimal_sets_examples() {
        let n3 = g(3);
        let cls = SetClass::new(&n3, [n3.parse("ab").unwrap(), n3.parse("abc").unwrap()]).unwrap();
        assert_eq!(minimal_sets(&cls).unwrap().format(), vec!["a,b"]);
        let p1 = power_class(&n3, 1).unwrap();
        assert_eq!(minimal_sets(&p1).unwrap().format(), vec!["a", "b", "c"]);
        let not_closed = SetClass::new(&n3, [n3.parse("ab").unwrap()]).unwrap();
        assert!(matches!(minimal_sets(&not_closed), Err(Error::NotSupersetClosed)));
    }

    #[test]
    fn antichain_validation() {
        let n3 = g(3);
        assert!(Antichain::parse(&n3, &["a", "ab"]).is_err());
        assert!(Antichain::parse::<&str>(&n3, &[]).is_err());
        assert!(Antichain::parse(&n3, &["∅"]).is_err());
        assert!(Antichain::parse(&n3, &["a", "bc"]).is_ok());
    }

    /// Brute force: every subfamily of P1(N) that is pairwise incomparable.
    fn brute_force_antichains(ground: &GroundSet) -> Vec<Vec<Subset>> {
        let p1: Vec<Subset> = ground.subsets_min(1).collect();
        let mut out = Vec::new();
        for pick in 1u64..(1u64 << p1.len()) {
            let fam: Vec<Subset> =
                (0..p1.len()).filter(|&k| pick >> k & 1 == 1).map(|k| p1[k]).collect();
            let ok = fam.iter().enumerate().all(|(k, s)| {
                fam[k + 1..].iter().all(|t| !s.is_subset_of(*t) && !t.is_subset_of(*s))
            });
            if ok {
                out.push(fam);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn antichain_counts_match_brute_force() {
        for n in 2..=4 {
            let ground = g(n);
            let mut streamed: Vec<Vec<Subset>> = enumerate_antichains(&ground, false)
                .unwrap()
                .map(|a| a.sets().to_vec())
                .collect();
            let len = streamed.len();
            streamed.sort();
            streamed.dedup();
            assert_eq!(streamed.len(), len, "duplicates for n={n}");
            assert_eq!(streamed, brute_force_antichains(&ground), "n={n}");
        }
        assert_eq!(enumerate_antichains(&g(2), false).unwrap().count(), 4);
        assert_eq!(enumerate_antichains(&g(3), false).unwrap().count(), 18);
        assert!(enumerate_antichains(&g(6), false).is_err());
    }

    #[test]
    fn antichain_stream_is_canonical() {
        let n2 = g(2);
        let tags: Vec<String> =
            enumerate_antichains(&n2, false).unwrap().map(|a| a.tag()).collect();
        assert_eq!(tags, vec!["a", "a,b", "b", "ab"]);
    }

    #[test]
    fn closure_and_minimal_sets_are_inverse() {
        for n in 2..=4 {
            let ground = g(n);
            for a in enumerate_antichains(&ground, false).unwrap() {
                let cls = superset_closure(&a);
                assert!(cls.is_superset_closed());
                assert_eq!(minimal_sets(&cls).unwrap(), a);
            }
            // every superset-closed class of non-empty sets, found by brute force
            let p1: Vec<Subset> = ground.subsets_min(1).collect();
            if p1.len() <= 15 {
                for pick in 1u32..(1u32 << p1.len()) {
                    let cls = SetClass::new(
                        &ground,
                        (0..p1.len()).filter(|&k| pick >> k & 1 == 1).map(|k| p1[k]),
                    )
                    .unwrap();
                    if cls.is_superset_closed() {
                        assert_eq!(superset_closure(&minimal_sets(&cls).unwrap()), cls);
                    }
                }
            }
        }
    }

    #[test]
    fn union_closure_examples() {
        let n3 = g(3);
        assert_eq!(union_closure_class(&chain(&n3, &["ab", "ac"])).format(), vec!["a,b", "a,c", "a,b,c"]);
        assert_eq!(union_closure_class(&chain(&n3, &["abc"])).format(), vec!["a,b,c"]);
        assert_eq!(union_closure_class(&chain(&n3, &["a", "b", "c"])).len(), 7);
    }

    #[test]
    fn union_closure_lies_in_superset_closure() {
        for n in 2..=4 {
            for a in enumerate_antichains(&g(n), false).unwrap() {
                assert!(union_closure_class(&a).is_subset_of(&superset_closure(&a)));
            }
        }
    }

    #[test]
    fn zeta_mobius_round_trip() {
        let mut v: Vec<i64> = (0..16).map(|k| (k * 7 % 5) as i64 - 2).collect();
        let orig = v.clone();
        superset_sum(&mut v);
        for s in 0..16u32 {
            let direct: i64 = (0..16u32).filter(|t| s & !t == 0).map(|t| orig[t as usize]).sum();
            assert_eq!(v[s as usize], direct);
        }
        superset_mobius(&mut v);
        assert_eq!(v, orig);
    }
}
