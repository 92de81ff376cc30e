//! Experiment drivers: equivalence-class censuses, lattice scans inside the
//! relaxations, matrix and Farkas certificates, and the worked examples.

mod census;
mod examples;
mod scan;

use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::constraint::{Framework, LinearConstraint, Sense};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::setfam::{GroundSet, Subset};

pub use census::{census, census_equivalence_classes, robinson_dag_count, Census, KNOWN_CLASS_COUNTS};
pub use examples::{example5_image_check, example8_fractional_check, run_example, EXAMPLE_IDS};
pub use scan::{
    farkas_check, lattice_scan, matrix_certificates, relaxation_comparison, soundness_check, ScanOptions, ScanResult,
    DEFAULT_BUDGET,
};

/// One named pass/fail line inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Outcome of one experiment. Wall time is kept out of the serialized form
/// so that equal parameters give byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub experiment: String,
    pub parameters: Map<String, Value>,
    pub counts: Map<String, Value>,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Value>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    started: Option<Instant>,
}

impl VerificationReport {
    pub fn new(experiment: impl Into<String>) -> Self {
        VerificationReport {
            experiment: experiment.into(),
            parameters: Map::new(),
            counts: Map::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            passed: true,
            elapsed: Duration::ZERO,
            started: Some(Instant::now()),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    pub fn count(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.counts.insert(key.into(), value.into());
        self
    }

    /// Records a check; any failing check fails the report.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail });
        passed
    }

    pub fn witness(&mut self, w: Value) -> &mut Self {
        self.witnesses.push(w);
        self
    }

    /// Folds another report in as prefixed checks.
    pub fn absorb(&mut self, other: &VerificationReport) {
        for c in &other.checks {
            self.check(format!("{}: {}", other.experiment, c.name), c.passed, c.detail.clone());
        }
        self.witnesses.extend(other.witnesses.iter().cloned());
    }

    pub fn finish(mut self) -> Self {
        if let Some(t) = self.started.take() {
            self.elapsed = t.elapsed();
        }
        self
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Which standard box to scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxKind {
    /// `0 ≤ c(S) ≤ 2^{|S|−2}`.
    Default,
    /// `{0,1}` on every coordinate.
    ZeroOne,
}

impl FromStr for BoxKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(BoxKind::Default),
            "01" => Ok(BoxKind::ZeroOne),
            _ => Err(Error::Parse(format!("unknown box {s:?}; expected 01 or default"))),
        }
    }
}

impl BoxKind {
    pub fn name(self) -> &'static str {
        match self {
            BoxKind::Default => "default",
            BoxKind::ZeroOne => "01",
        }
    }
}

/// Integer bounds on the characteristic coordinates `c(S)`, `|S| ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBox {
    ground: GroundSet,
    coords: Vec<Subset>,
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl EnumerationBox {
    pub fn new(ground: &GroundSet, lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        let coords: Vec<Subset> = ground.subsets_min(2).collect();
        if lower.len() != coords.len() || upper.len() != coords.len() {
            return Err(Error::Dimension(format!("box needs {} bounds per side", coords.len())));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::Dimension("box has a lower bound above its upper bound".into()));
        }
        Ok(EnumerationBox { ground: ground.clone(), coords, lower, upper })
    }

    /// `0 ≤ c(S) ≤ 2^{|S|−2}`, a bound implied by the cluster and
    /// κ-specific rows themselves.
    pub fn default_for(ground: &GroundSet) -> Self {
        let upper = ground.subsets_min(2).map(|s| 1i64 << (s.len() - 2)).collect();
        Self::new(ground, vec![0; ground.size() - ground.n() - 1], upper).expect("consistent bounds")
    }

    pub fn zero_one(ground: &GroundSet) -> Self {
        let d = ground.size() - ground.n() - 1;
        Self::new(ground, vec![0; d], vec![1; d]).expect("consistent bounds")
    }

    pub fn of_kind(ground: &GroundSet, kind: BoxKind) -> Self {
        match kind {
            BoxKind::Default => Self::default_for(ground),
            BoxKind::ZeroOne => Self::zero_one(ground),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// The coordinates, ascending by bitmask.
    pub fn coords(&self) -> &[Subset] {
        &self.coords
    }

    pub fn volume(&self) -> u128 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| (u - l + 1) as u128).product()
    }

    /// The `index`-th point in lexicographic order (first coordinate most
    /// significant).
    pub fn point(&self, mut index: u128) -> Vec<i64> {
        let mut out = vec![0; self.coords.len()];
        for k in (0..self.coords.len()).rev() {
            let radix = (self.upper[k] - self.lower[k] + 1) as u128;
            out[k] = self.lower[k] + (index % radix) as i64;
            index /= radix;
        }
        out
    }

    pub fn contains(&self, p2: &[i64]) -> bool {
        p2.len() == self.coords.len() && p2.iter().zip(self.lower.iter().zip(&self.upper)).all(|(x, (l, u))| l <= x && x <= u)
    }

    pub fn describe(&self) -> Value {
        let bounds: Map<String, Value> = self
            .coords
            .iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(s, (l, u))| (self.ground.format(*s), serde_json::json!([l, u])))
            .collect();
        Value::Object(bounds)
    }
}

/// `{"a,b": 1, ...}` for a point over `𝒫₂(N)`.
pub(crate) fn point_json(ground: &GroundSet, p2: &[i64]) -> Value {
    Value::Object(ground.subsets_min(2).zip(p2).map(|(s, v)| (ground.format(s), (*v).into())).collect())
}

/// Dense characteristic vector: `1` on `|S| ≤ 1`, the given values above.
pub(crate) fn dense_from_p2(ground: &GroundSet, p2: &[i64]) -> Vec<i64> {
    let mut dense = vec![1i64; ground.size()];
    for (s, v) in ground.subsets_min(2).zip(p2) {
        dense[s.index()] = *v;
    }
    dense
}

/// A row as `Σ a·x ≥ b` (or `=`), keyed by coordinate name; `≤` rows are
/// negated. Lets rows built different ways be compared.
pub(crate) type RowForm = (Vec<(String, String)>, bool, String);

pub(crate) fn row_form(r: &LinearConstraint) -> RowForm {
    let flip = r.sense() == Sense::Le;
    let sign = |v: &Rational| if flip { -v.clone() } else { v.clone() };
    let coeffs = r
        .coefficients()
        .iter()
        .map(|(k, v)| (r.framework().key(r.ground(), *k), format_rational(&sign(v))))
        .collect();
    (coeffs, r.sense() == Sense::Eq, format_rational(&sign(r.rhs())))
}

/// Builds the row form of `Σ coeff·x(key) ≥ rhs` from set names.
pub(crate) fn expected_form(ground: &GroundSet, framework: Framework, terms: &[(&str, i64)], rhs: i64) -> Result<RowForm> {
    let mut idx: Vec<(usize, i64)> = terms
        .iter()
        .map(|(k, v)| {
            let index = match framework {
                Framework::Eta => {
                    let (i, b) = crate::encode::parse_eta_key(ground, k)?;
                    crate::encode::eta_index(ground.n(), i, b)
                }
                _ => ground.parse(k)?.index(),
            };
            Ok((index, *v))
        })
        .collect::<Result<_>>()?;
    idx.sort();
    let coeffs = idx.into_iter().map(|(k, v)| (framework.key(ground, k), v.to_string())).collect();
    Ok((coeffs, false, rhs.to_string()))
}
