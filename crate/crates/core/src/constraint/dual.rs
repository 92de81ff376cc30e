use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rational};
use crate::setfam::{superset_closure, Antichain, GroundSet, Subset};

/// Vector over the non-empty subsets, stored densely with a zero at `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVector {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl DualVector {
    pub fn zero(ground: &GroundSet) -> Self {
        DualVector { ground: ground.clone(), values: vec![Rational::zero(); ground.size()] }
    }

    /// From `2^n − 1` entries over the non-empty subsets in ascending order.
    pub fn from_entries(ground: &GroundSet, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != ground.size() - 1 {
            return Err(Error::Dimension(format!(
                "dual vector needs {} entries, got {}",
                ground.size() - 1,
                entries.len()
            )));
        }
        let mut values = vec![Rational::zero()];
        values.extend(entries);
        Ok(DualVector { ground: ground.clone(), values })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn get(&self, s: Subset) -> &Rational {
        &self.values[s.index()]
    }

    pub fn set(&mut self, s: Subset, v: Rational) {
        assert!(!s.is_empty(), "dual vectors have no ∅ entry");
        self.values[s.index()] = v;
    }

    /// Entries over the non-empty subsets.
    pub fn entries(&self) -> &[Rational] {
        &self.values[1..]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, other: &DualVector, k: &Rational) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            if !b.is_zero() {
                *a += k * b;
            }
        }
    }

    pub fn support(&self) -> Vec<Subset> {
        self.ground.subsets_min(1).filter(|s| !self.get(*s).is_zero()).collect()
    }

    /// Non-zero entries as `(set, "p/q")`.
    pub fn rendered(&self) -> Vec<(String, String)> {
        self.support().into_iter().map(|s| (self.ground.format(s), format_rational(self.get(s)))).collect()
    }
}

/// `y_𝒜(T) = δ(T∈𝒜) − |{j : {j} ∈ 𝒜, {j} ⊂ T}|` for `𝒜` the superset
/// closure of the antichain.
pub fn y_of_class(antichain: &Antichain) -> DualVector {
    let ground = antichain.ground();
    let class = superset_closure(antichain);
    let singles: Vec<Subset> = antichain.sets().iter().copied().filter(|s| s.len() == 1).collect();
    let mut y = DualVector::zero(ground);
    for t in ground.subsets_min(1) {
        let below = singles.iter().filter(|j| j.is_proper_subset_of(t)).count() as i64;
        y.values[t.index()] = rat(class.contains(t) as i64 - below);
    }
    y
}

/// First failing inequality among (a1) `y({i}) ≥ 0`, (a2) `y(S)+y({i}) ≥ 0`
/// for `|S| = 2`, (a3) `y(S)+y({i})−y(S∖{i}) ≥ 0` for `|S| ≥ 3`, `i ∈ S`.
pub fn dual_cone_violation(y: &DualVector) -> Option<String> {
    let g = &y.ground;
    for i in 0..g.n() {
        if y.get(Subset::singleton(i)).is_negative() {
            return Some(format!("y({}) < 0", g.format(Subset::singleton(i))));
        }
    }
    for s in g.subsets_min(2) {
        for i in s.elements() {
            let single = Subset::singleton(i);
            let mut v = y.get(s) + y.get(single);
            if s.len() >= 3 {
                v -= y.get(s.without(i));
            }
            if v.is_negative() {
                return Some(format!("S = {}, i = {}", g.format(s), g.labels()[i]));
            }
        }
    }
    None
}

pub fn check_dual_cone(y: &DualVector) -> bool {
    dual_cone_violation(y).is_none()
}

/// Peels `y` into `Σ λ·y_𝒜`: with `𝒜_y` the superset closure of the
/// support, `β = min y` over its minimal sets, subtract `β·y_{𝒜_y}`.
pub fn conic_decompose(y: &DualVector) -> Result<Vec<(Antichain, Rational)>> {
    if let Some(at) = dual_cone_violation(y) {
        return Err(Error::ConeViolation(at));
    }
    let mut rest = y.clone();
    let mut out = Vec::new();
    let mut previous = usize::MAX;
    while !rest.is_zero() {
        let minimal = minimal_support(&rest)?;
        let closure = superset_closure(&minimal);
        if closure.len() >= previous {
            return Err(Error::ConeViolation("class size did not decrease".into()));
        }
        previous = closure.len();
        let beta = minimal.sets().iter().map(|s| rest.get(*s).clone()).min().expect("non-empty");
        if !beta.is_positive() {
            return Err(Error::ConeViolation(format!("non-positive step {}", format_rational(&beta))));
        }
        rest.add_scaled(&y_of_class(&minimal), &-beta.clone());
        if let Some(at) = dual_cone_violation(&rest) {
            return Err(Error::ConeViolation(at));
        }
        out.push((minimal, beta));
    }
    Ok(out)
}

/// Size of the superset closure of the support.
pub fn class_size(y: &DualVector) -> usize {
    if y.is_zero() {
        return 0;
    }
    superset_closure(&minimal_support(y).expect("non-empty support")).len()
}

/// Inclusion-minimal members of the support.
fn minimal_support(y: &DualVector) -> Result<Antichain> {
    let support = y.support();
    let minimal = support.iter().copied().filter(|s| !support.iter().any(|t| t.is_proper_subset_of(*s)));
    Antichain::new(&y.ground, minimal)
}
