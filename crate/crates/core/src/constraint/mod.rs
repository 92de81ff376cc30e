//! Linear constraint families in the η, standard-imset and
//! characteristic-imset frameworks.

pub(crate) mod dd;
mod dual;
mod families;
mod supermodular;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::encode::{eta_len, eta_pair, format_eta_key};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::setfam::{GroundSet, Subset};

pub use dd::extreme_rays;
pub use dual::{check_dual_cone, class_size, conic_decompose, dual_cone_violation, y_of_class, DualVector};
pub use families::{
    char_specific_constraint, cluster_constraint_c, cluster_constraint_u, eta_system, kappa_alternating, kappa_coefficients,
    specific_constraint, u_equality_system, u_row_to_c, KappaCoefficients,
};
pub use supermodular::{
    builtin_rays, cluster_supermodular, conic_combination, indicator_supermodular, is_supermodular, nonspecific_constraints,
    supermodular_rays, validate_rays, RaySource, SupermodularFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Framework {
    Eta,
    U,
    C,
}

impl Framework {
    /// Length of the dense coordinate vector the rows are evaluated on.
    pub fn dimension(self, ground: &GroundSet) -> usize {
        match self {
            Framework::Eta => eta_len(ground.n()),
            Framework::U | Framework::C => ground.size(),
        }
    }

    /// Whether `index` is a genuine coordinate of the framework.
    pub fn admits(self, ground: &GroundSet, index: usize) -> bool {
        match self {
            Framework::Eta => index < eta_len(ground.n()),
            Framework::U => index < ground.size(),
            Framework::C => index < ground.size() && Subset::from_bits(index as u32).len() >= 2,
        }
    }

    pub fn key(self, ground: &GroundSet, index: usize) -> String {
        match self {
            Framework::Eta => {
                let (i, b) = eta_pair(ground.n(), index);
                format_eta_key(ground, i, b)
            }
            Framework::U | Framework::C => ground.format(Subset::from_bits(index as u32)),
        }
    }

    /// Variable name for LP export: `u_ab`, `c_abc`, `eta_a_bc`, with `empty`
    /// for `∅`.
    pub fn lp_name(self, ground: &GroundSet, index: usize) -> String {
        let compact = |s: Subset| if s.is_empty() { "empty".to_string() } else { ground.format_compact(s) };
        match self {
            Framework::Eta => {
                let (i, b) = eta_pair(ground.n(), index);
                format!("eta_{}_{}", ground.labels()[i], compact(b))
            }
            Framework::U => format!("u_{}", compact(Subset::from_bits(index as u32))),
            Framework::C => format!("c_{}", compact(Subset::from_bits(index as u32))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Framework::Eta => "eta",
            Framework::U => "u",
            Framework::C => "c",
        }
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Framework {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta" => Ok(Framework::Eta),
            "u" => Ok(Framework::U),
            "c" => Ok(Framework::C),
            _ => Err(Error::Parse(format!("unknown framework {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }

    fn holds<T: PartialOrd>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Sense::Ge => lhs >= rhs,
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

/// One row `Σ coeff·x sense rhs` over a framework's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    framework: Framework,
    ground: GroundSet,
    coefficients: Vec<(usize, Rational)>,
    sense: Sense,
    rhs: Rational,
    tag: String,
}

impl LinearConstraint {
    /// Builds a row; zero coefficients are dropped and repeated indices summed.
    pub fn new<I>(ground: &GroundSet, framework: Framework, terms: I, sense: Sense, rhs: Rational, tag: String) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut coefficients: Vec<(usize, Rational)> = Vec::new();
        let mut all: Vec<(usize, Rational)> = terms.into_iter().collect();
        all.sort_by_key(|(k, _)| *k);
        for (k, v) in all {
            if !framework.admits(ground, k) {
                return Err(Error::Dimension(format!("index {k} is not a {framework} coordinate")));
            }
            match coefficients.last_mut() {
                Some((last, acc)) if *last == k => *acc += v,
                _ => coefficients.push((k, v)),
            }
        }
        coefficients.retain(|(_, v)| !v.is_zero());
        Ok(LinearConstraint { framework, ground: ground.clone(), coefficients, sense, rhs, tag })
    }

    pub fn framework(&self) -> Framework {
        self.framework
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn coefficients(&self) -> &[(usize, Rational)] {
        &self.coefficients
    }

    pub fn coefficient(&self, index: usize) -> Rational {
        self.coefficients
            .binary_search_by_key(&index, |(k, _)| *k)
            .map(|p| self.coefficients[p].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Family part of the tag, before the first `:`.
    pub fn family(&self) -> &str {
        self.tag.split(':').next().unwrap_or("")
    }

    /// All coefficients vanish; the row is `0 sense rhs`.
    pub fn is_vacuous(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |acc, (k, v)| acc + v * &x[*k])
    }

    pub fn lhs_i64(&self, x: &[i64]) -> Rational {
        self.coefficients
            .iter()
            .fold(Rational::zero(), |acc, (k, v)| acc + v * Rational::from_integer(x[*k].into()))
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        self.sense.holds(&self.lhs(x), &self.rhs)
    }

    pub fn holds_i64(&self, x: &[i64]) -> bool {
        self.sense.holds(&self.lhs_i64(x), &self.rhs)
    }

    /// `lhs − rhs` (negated for `≤` rows), so feasibility is `slack ≥ 0`.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        let d = self.lhs(x) - &self.rhs;
        if self.sense == Sense::Le { -d } else { d }
    }

    /// Integer form for fast scanning; `None` if any entry is fractional or
    /// too large.
    pub fn compile(&self) -> Option<CompiledRow> {
        let int = |r: &Rational| if r.is_integer() { r.to_integer().to_i64() } else { None };
        let terms = self
            .coefficients
            .iter()
            .map(|(k, v)| int(v).map(|v| (*k as u32, v)))
            .collect::<Option<Vec<_>>>()?;
        Some(CompiledRow { terms, sense: self.sense, rhs: int(&self.rhs)? })
    }

    /// `"specific:ab,ac: u(a,b) + u(a,b,c) <= 1"`-style rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (pos, (k, v)) in self.coefficients.iter().enumerate() {
            let key = self.framework.key(&self.ground, *k);
            let mag = v.abs();
            let sign = if v.is_negative() { "-" } else if pos > 0 { "+" } else { "" };
            if pos > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if pos > 0 {
                out.push(' ');
            }
            if mag != Rational::from_integer(1.into()) {
                let _ = write!(out, "{}·", format_rational(&mag));
            }
            let _ = write!(out, "{}({})", self.framework, key);
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{} {} {}", out, self.sense.symbol(), format_rational(&self.rhs))
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.tag, self.render())
    }
}

/// Integer row over dense coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledRow {
    pub terms: Vec<(u32, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl CompiledRow {
    #[inline]
    pub fn lhs(&self, x: &[i64]) -> i64 {
        self.terms.iter().map(|&(k, v)| v * x[k as usize]).sum()
    }

    #[inline]
    pub fn holds(&self, x: &[i64]) -> bool {
        self.sense.holds(&self.lhs(x), &self.rhs)
    }
}

/// The families a system can be assembled from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `η(i|B) ≥ 0`.
    Nonneg,
    /// Block sums in η; standardization rows in u.
    Equality,
    /// η cluster rows.
    Cluster,
    Specific,
    Nonspecific,
    ClusterU,
    KappaSpecific,
    ClusterC,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Nonneg => "nonneg",
            Family::Equality => "equality",
            Family::Cluster => "cluster",
            Family::Specific => "specific",
            Family::Nonspecific => "nonspecific",
            Family::ClusterU => "cluster-u",
            Family::KappaSpecific => "kappa-specific",
            Family::ClusterC => "cluster-c",
        }
    }

    pub fn allowed_in(self, framework: Framework) -> bool {
        use Family::*;
        match framework {
            Framework::Eta => matches!(self, Nonneg | Equality | Cluster),
            Framework::U => matches!(self, Equality | Specific | Nonspecific | ClusterU),
            Framework::C => matches!(self, KappaSpecific | ClusterC | Nonspecific),
        }
    }

    /// Comma-separated family names, validated against the framework.
    pub fn parse_list(text: &str, framework: Framework) -> Result<Vec<Family>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let f: Family = part.parse()?;
            if !f.allowed_in(framework) {
                return Err(Error::Parse(format!("family {part:?} is not available in framework {framework}")));
            }
            if !out.contains(&f) {
                out.push(f);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse("no constraint families given".into()));
        }
        Ok(out)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use Family::*;
        [Nonneg, Equality, Cluster, Specific, Nonspecific, ClusterU, KappaSpecific, ClusterC]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown constraint family {s:?}")))
    }
}

/// A list of rows over one framework.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    ground: GroundSet,
    framework: Framework,
    rows: Vec<LinearConstraint>,
}

impl ConstraintSystem {
    pub fn new(ground: &GroundSet, framework: Framework, rows: Vec<LinearConstraint>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.framework != framework || r.ground != *ground) {
            return Err(Error::Dimension(format!("row {} does not belong to framework {framework}", bad.tag)));
        }
        Ok(ConstraintSystem { ground: ground.clone(), framework, rows })
    }

    /// Assembles the requested families. Non-specific rows need `rays`.
    pub fn build(
        ground: &GroundSet,
        framework: Framework,
        families: &[Family],
        rays: Option<&[SupermodularFunction]>,
    ) -> Result<Self> {
        let mut rows = Vec::new();
        for &family in families {
            if !family.allowed_in(framework) {
                return Err(Error::Parse(format!(
                    "family {} is not available in framework {framework}",
                    family.name()
                )));
            }
            rows.extend(family_rows(ground, framework, family, rays)?);
        }
        ConstraintSystem::new(ground, framework, rows)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn framework(&self) -> Framework {
        self.framework
    }

    pub fn rows(&self) -> &[LinearConstraint] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn first_violation(&self, x: &[Rational]) -> Option<&LinearConstraint> {
        self.rows.iter().find(|r| !r.holds(x))
    }

    pub fn first_violation_i64(&self, x: &[i64]) -> Option<&LinearConstraint> {
        self.rows.iter().find(|r| !r.holds_i64(x))
    }

    pub fn satisfied_by_i64(&self, x: &[i64]) -> bool {
        self.first_violation_i64(x).is_none()
    }

    /// JSON document `{"framework", "labels", "rows": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let coeffs: serde_json::Map<String, serde_json::Value> = r
                    .coefficients
                    .iter()
                    .map(|(k, v)| (self.framework.key(&self.ground, *k), format_rational(v).into()))
                    .collect();
                serde_json::json!({
                    "tag": r.tag,
                    "coeffs": coeffs,
                    "sense": r.sense.symbol(),
                    "rhs": format_rational(&r.rhs),
                })
            })
            .collect();
        serde_json::json!({
            "framework": self.framework.name(),
            "labels": self.ground.labels(),
            "rows": rows,
        })
    }

    /// CPLEX-LP text: a zero objective, one named row per constraint and
    /// every variable declared free.
    pub fn to_lp(&self) -> String {
        let dim = self.framework.dimension(&self.ground);
        let mut used = vec![false; dim];
        for r in &self.rows {
            for (k, _) in &r.coefficients {
                used[*k] = true;
            }
        }
        let names: Vec<String> = (0..dim).map(|k| self.framework.lp_name(&self.ground, k)).collect();
        let mut out = String::from("\\ generated constraint system\nMinimize\n obj: 0\nSubject To\n");
        for (pos, r) in self.rows.iter().enumerate() {
            let label: String =
                r.tag.chars().map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' }).collect();
            let _ = write!(out, " r{pos}_{label}:");
            // LP has no fraction syntax, so rows are scaled to integers
            let scale = Rational::from_integer(row_scale(r));
            if r.coefficients.is_empty() {
                // LP files need at least one term; pad with a zero multiple
                let _ = write!(out, " 0 {}", names[used.iter().position(|u| *u).unwrap_or(0)]);
            }
            for (k, v) in &r.coefficients {
                let sign = if v.is_negative() { "-" } else { "+" };
                let _ = write!(out, " {sign} {} {}", (v.abs() * &scale).to_integer(), names[*k]);
            }
            let _ = writeln!(out, " {} {}", r.sense.symbol(), (&r.rhs * &scale).to_integer());
        }
        out.push_str("Bounds\n");
        for (k, name) in names.iter().enumerate() {
            if used[k] {
                let _ = writeln!(out, " {name} free");
            }
        }
        out.push_str("End\n");
        out
    }
}

/// Positive multiplier clearing every denominator of a row.
fn row_scale(r: &LinearConstraint) -> num_bigint::BigInt {
    use num_integer::Integer;
    r.coefficients
        .iter()
        .map(|(_, v)| v.denom().clone())
        .chain([r.rhs.denom().clone()])
        .fold(num_bigint::BigInt::from(1), |acc, d| acc.lcm(&d))
}

fn family_rows(
    ground: &GroundSet,
    framework: Framework,
    family: Family,
    rays: Option<&[SupermodularFunction]>,
) -> Result<Vec<LinearConstraint>> {
    use crate::setfam::enumerate_antichains;
    Ok(match (framework, family) {
        (Framework::Eta, f) => eta_system(ground, &[f]),
        (Framework::U, Family::Equality) => u_equality_system(ground),
        (Framework::U, Family::Specific) => {
            enumerate_antichains(ground, true)?.map(|a| specific_constraint(&a)).collect()
        }
        (Framework::C, Family::KappaSpecific) => {
            enumerate_antichains(ground, true)?.map(|a| char_specific_constraint(&a)).collect()
        }
        (Framework::U, Family::ClusterU) => {
            ground.subsets_min(2).map(cluster_constraint_u_for(ground)).collect::<Result<_>>()?
        }
        (Framework::C, Family::ClusterC) => {
            ground.subsets_min(2).map(cluster_constraint_c_for(ground)).collect::<Result<_>>()?
        }
        (_, Family::Nonspecific) => {
            let rays = match rays {
                Some(r) => r.to_vec(),
                None => supermodular_rays(ground, &RaySource::Default)?,
            };
            let rows = nonspecific_constraints(&rays)?;
            if framework == Framework::C {
                rows.iter().map(u_row_to_c).collect()
            } else {
                rows
            }
        }
        (fw, f) => {
            return Err(Error::Parse(format!("family {} is not available in framework {fw}", f.name())));
        }
    })
}

fn cluster_constraint_u_for(ground: &GroundSet) -> impl Fn(Subset) -> Result<LinearConstraint> + '_ {
    move |c| cluster_constraint_u(ground, c)
}

fn cluster_constraint_c_for(ground: &GroundSet) -> impl Fn(Subset) -> Result<LinearConstraint> + '_ {
    move |c| cluster_constraint_c(ground, c)
}
