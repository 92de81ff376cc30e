use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{dd, Framework, LinearConstraint, Sense};
use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rational};
use crate::setfam::{GroundSet, Subset};

/// Set function over all subsets, with a display name used in row tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupermodularFunction {
    ground: GroundSet,
    values: Vec<Rational>,
    name: String,
}

impl SupermodularFunction {
    pub fn new(ground: &GroundSet, values: Vec<Rational>, name: impl Into<String>) -> Result<Self> {
        if values.len() != ground.size() {
            return Err(Error::Dimension(format!("set function needs {} values, got {}", ground.size(), values.len())));
        }
        Ok(SupermodularFunction { ground: ground.clone(), values, name: name.into() })
    }

    pub fn from_i64(ground: &GroundSet, values: &[i64], name: impl Into<String>) -> Result<Self> {
        Self::new(ground, values.iter().map(|v| rat(*v)).collect(), name)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, s: Subset) -> &Rational {
        &self.values[s.index()]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Vanishes on sets of size at most one.
    pub fn is_standardized(&self) -> bool {
        self.ground.subsets().filter(|s| s.len() <= 1).all(|s| self.get(s).is_zero())
    }

    /// `⟨m, u⟩ = Σ_T m(T)·u(T)`.
    pub fn dot(&self, u: &[i64]) -> Rational {
        self.values
            .iter()
            .zip(u)
            .filter(|(m, _)| !m.is_zero())
            .fold(Rational::zero(), |acc, (m, v)| acc + m * rat(*v))
    }

    /// Positive multiple with coprime integer entries.
    pub fn normalized(&self) -> SupermodularFunction {
        let denom = self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = self.values.iter().map(|v| (v * Rational::from_integer(denom.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let g = if g.is_zero() { BigInt::one() } else { g };
        SupermodularFunction {
            ground: self.ground.clone(),
            values: ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect(),
            name: self.name.clone(),
        }
    }

    /// Integer values, when all are integral and fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.values.iter().map(crate::rational::to_i64).collect()
    }

    /// Non-zero entries as `(set, "p/q")`.
    pub fn entries(&self) -> Vec<(String, String)> {
        self.ground
            .subsets()
            .filter(|s| !self.get(*s).is_zero())
            .map(|s| (self.ground.format(s), format_rational(self.get(s))))
            .collect()
    }
}

/// Every elementary exchange `m(C∪ij) + m(C) ≥ m(C∪i) + m(C∪j)` holds.
pub fn is_supermodular(m: &SupermodularFunction) -> bool {
    let g = m.ground();
    let n = g.n();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let rest = g.full().without(i).without(j);
            rest.subsets().all(|c| {
                let v = |s: Subset| m.get(s);
                v(c.with(i).with(j)) + v(c) >= v(c.with(i)) + v(c.with(j))
            })
        })
    })
}

/// `m_C(T) = max(0, |C∩T| − 1)`.
pub fn cluster_supermodular(ground: &GroundSet, c: Subset) -> Result<SupermodularFunction> {
    ground.check(c)?;
    if c.len() < 2 {
        return Err(Error::TooSmall);
    }
    let values: Vec<i64> = ground.subsets().map(|t| (c.intersection(t).len() as i64 - 1).max(0)).collect();
    SupermodularFunction::from_i64(ground, &values, format!("cluster-{}", ground.format_compact(c)))
}

/// `m^{S↑}(T) = δ(S ⊆ T)`.
pub fn indicator_supermodular(ground: &GroundSet, s: Subset) -> Result<SupermodularFunction> {
    ground.check(s)?;
    if s.len() < 2 {
        return Err(Error::TooSmall);
    }
    let values: Vec<i64> = ground.subsets().map(|t| s.is_subset_of(t) as i64).collect();
    SupermodularFunction::from_i64(ground, &values, format!("up-{}", ground.format_compact(s)))
}

/// The five rays for three variables: `m^{ab↑}`, `m^{ac↑}`, `m^{bc↑}`,
/// `m^{abc↑}` and `m_N`.
pub fn builtin_rays(ground: &GroundSet) -> Result<Vec<SupermodularFunction>> {
    if ground.n() != 3 {
        return Err(Error::Unsupported(format!("built-in rays exist for 3 variables, not {}", ground.n())));
    }
    let mut out: Vec<SupermodularFunction> = [0b011, 0b101, 0b110, 0b111]
        .into_iter()
        .map(|b| indicator_supermodular(ground, Subset::from_bits(b)))
        .collect::<Result<_>>()?;
    out.push(cluster_supermodular(ground, ground.full())?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RaySource {
    /// Built-in list for three variables, double description for four.
    Default,
    Builtin,
    /// Double description; five or more variables need `force`.
    Computed { force: bool },
    File(PathBuf),
}

/// Extreme rays of the standardized supermodular cone as coprime integer
/// representatives.
pub fn supermodular_rays(ground: &GroundSet, source: &RaySource) -> Result<Vec<SupermodularFunction>> {
    match source {
        RaySource::Default => match ground.n() {
            3 => builtin_rays(ground),
            4 => computed_rays(ground),
            n => Err(Error::Unsupported(format!(
                "no default ray source for {n} variables; supply a ray file"
            ))),
        },
        RaySource::Builtin => builtin_rays(ground),
        RaySource::Computed { force } => {
            if ground.n() >= 5 && !force {
                return Err(Error::TooLarge { what: "double description ray computation", n: ground.n() });
            }
            computed_rays(ground)
        }
        RaySource::File(path) => {
            let text = std::fs::read_to_string(path)?;
            let rays = crate::io::parse_ray_file(ground, &text)?;
            validate_rays(&rays)?;
            Ok(rays)
        }
    }
}

fn computed_rays(ground: &GroundSet) -> Result<Vec<SupermodularFunction>> {
    dd::extreme_rays(ground)
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let mut dense = vec![0i64; ground.size()];
            for (s, x) in ground.subsets_min(2).zip(&v) {
                dense[s.index()] = *x;
            }
            let name = recognise(ground, &dense).unwrap_or_else(|| format!("ray-{k}"));
            SupermodularFunction::from_i64(ground, &dense, name)
        })
        .collect()
}

fn recognise(ground: &GroundSet, dense: &[i64]) -> Option<String> {
    let as_ints = |m: SupermodularFunction| m.to_i64();
    for s in ground.subsets_min(2) {
        if as_ints(indicator_supermodular(ground, s).ok()?)?.as_slice() == dense {
            return Some(format!("up-{}", ground.format_compact(s)));
        }
        if as_ints(cluster_supermodular(ground, s).ok()?)?.as_slice() == dense {
            return Some(format!("cluster-{}", ground.format_compact(s)));
        }
    }
    None
}

/// Membership check for ingested rays: standardized and supermodular.
/// Extremality is not re-verified.
pub fn validate_rays(rays: &[SupermodularFunction]) -> Result<()> {
    for m in rays {
        if !m.is_standardized() {
            return Err(Error::ConeViolation(format!("ray {} is not standardized", m.name())));
        }
        if !is_supermodular(m) {
            return Err(Error::ConeViolation(format!("ray {} is not supermodular", m.name())));
        }
    }
    Ok(())
}

/// `⟨m, u⟩ ≥ 0` per ray.
pub fn nonspecific_constraints(rays: &[SupermodularFunction]) -> Result<Vec<LinearConstraint>> {
    rays.iter()
        .map(|m| {
            let terms: Vec<(usize, Rational)> =
                m.values().iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k, v.clone())).collect();
            LinearConstraint::new(m.ground(), Framework::U, terms, Sense::Ge, rat(0), format!("nonspecific:{}", m.name()))
        })
        .collect()
}

/// Representation of `m` as `Σ λ_k·rays[k]` with `λ ≥ 0`, if one exists.
pub fn conic_combination(m: &SupermodularFunction, rays: &[SupermodularFunction]) -> Result<Option<Vec<Rational>>> {
    use crate::exactlin::{feasible_nonneg_solution, index_labels, IntMatrix, RatVector};
    let ground = m.ground();
    let rows: Vec<Vec<i64>> = ground
        .subsets()
        .map(|s| {
            rays.iter()
                .map(|r| crate::rational::to_i64(r.get(s)).ok_or_else(|| Error::Unsupported("fractional ray".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let matrix = IntMatrix::from_rows(&rows)?;
    let b = RatVector::new(m.values().to_vec(), index_labels(ground.size()), None)?;
    Ok(feasible_nonneg_solution(&matrix, &b)?.map(|x| x.entries().to_vec()))
}
