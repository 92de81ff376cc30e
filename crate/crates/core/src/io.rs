//! JSON forms of graphs, imsets, rays, dual vectors and witnesses.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::constraint::{DualVector, SupermodularFunction};
use crate::digraph::DirectedGraph;
use crate::encode::{eta_index, eta_len, format_eta_key, parse_eta_key, CharacteristicImset, EtaVector, StandardImset};
use crate::error::{Error, Result};
use crate::exactlin::RatVector;
use crate::rational::{format_rational, parse_rational, rat, to_i64, Rational};
use crate::setfam::GroundSet;

/// `{"labels": [...], "edges": [["j", "i"], ...]}` where `["j","i"]` is the
/// arrow `j → i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub labels: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn from_graph(g: &DirectedGraph) -> Self {
        let labels = g.ground().labels().to_vec();
        let edges = g.arrows().into_iter().map(|(j, i)| (labels[j].clone(), labels[i].clone())).collect();
        GraphJson { labels, edges }
    }

    pub fn to_graph(&self) -> Result<DirectedGraph> {
        let ground = GroundSet::new(self.labels.iter().cloned())?;
        DirectedGraph::from_labelled_arrows(&ground, &self.edges)
    }
}

pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    serde_json::from_str::<GraphJson>(text)?.to_graph()
}

pub fn graph_to_json(g: &DirectedGraph) -> Value {
    serde_json::to_value(GraphJson::from_graph(g)).expect("plain data serializes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImsetKind {
    Standard,
    Characteristic,
    Eta,
}

/// An encoding read from or written to imset JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Imset {
    Standard(StandardImset),
    Characteristic(CharacteristicImset),
    Eta(EtaVector),
}

impl Imset {
    pub fn kind(&self) -> ImsetKind {
        match self {
            Imset::Standard(_) => ImsetKind::Standard,
            Imset::Characteristic(_) => ImsetKind::Characteristic,
            Imset::Eta(_) => ImsetKind::Eta,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        match self {
            Imset::Standard(u) => u.ground(),
            Imset::Characteristic(c) => c.ground(),
            Imset::Eta(e) => e.ground(),
        }
    }

    /// `{"labels", "kind", "entries"}`, zero entries omitted. Characteristic
    /// imsets list `|S| ≥ 2` only.
    pub fn to_json(&self) -> Value {
        let g = self.ground();
        let mut entries = Map::new();
        match self {
            Imset::Standard(u) => {
                for s in g.subsets().filter(|s| u.get(*s) != 0) {
                    entries.insert(g.format(s), u.get(s).into());
                }
            }
            Imset::Characteristic(c) => {
                for s in g.subsets_min(2).filter(|s| c.get(*s) != 0) {
                    entries.insert(g.format(s), c.get(s).into());
                }
            }
            Imset::Eta(e) => {
                for ((i, b), v) in e.support() {
                    entries.insert(format_eta_key(g, i, b), v.into());
                }
            }
        }
        serde_json::json!({ "labels": g.labels(), "kind": self.kind(), "entries": entries })
    }

    pub fn parse(text: &str) -> Result<Imset> {
        #[derive(Deserialize)]
        struct Raw {
            labels: Vec<String>,
            kind: ImsetKind,
            entries: Map<String, Value>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let g = GroundSet::new(raw.labels)?;
        Ok(match raw.kind {
            ImsetKind::Standard => {
                let mut v = vec![0i64; g.size()];
                for (k, x) in &raw.entries {
                    v[g.parse(k)?.index()] += integer(x)?;
                }
                Imset::Standard(StandardImset::from_values(&g, v)?)
            }
            ImsetKind::Characteristic => {
                let mut v = vec![0i64; g.size()];
                for (k, x) in &raw.entries {
                    let s = g.parse(k)?;
                    if s.len() < 2 {
                        return Err(Error::Parse(format!("characteristic entry {k:?} must have two or more elements")));
                    }
                    v[s.index()] += integer(x)?;
                }
                Imset::Characteristic(CharacteristicImset::from_dense(&g, v)?)
            }
            ImsetKind::Eta => {
                let mut v = vec![0i64; eta_len(g.n())];
                for (k, x) in &raw.entries {
                    let (i, b) = parse_eta_key(&g, k)?;
                    v[eta_index(g.n(), i, b)] += integer(x)?;
                }
                Imset::Eta(EtaVector::from_values(&g, v)?)
            }
        })
    }
}

/// A JSON integer, or a string holding an integral rational.
fn integer(v: &Value) -> Result<i64> {
    let r = rational(v)?;
    to_i64(&r).ok_or_else(|| Error::Parse(format!("expected an integer, got {v}")))
}

/// A JSON integer or a `"p/q"` string.
pub fn rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| Error::Parse(format!("expected an integer, got {n}"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

/// `[{"entries": {"a,b": 1, ...}}, ...]`; an optional `"name"` is kept.
pub fn parse_ray_file(ground: &GroundSet, text: &str) -> Result<Vec<SupermodularFunction>> {
    #[derive(Deserialize)]
    struct Raw {
        entries: Map<String, Value>,
        name: Option<String>,
    }
    let raw: Vec<Raw> = serde_json::from_str(text)?;
    raw.into_iter()
        .enumerate()
        .map(|(k, r)| {
            let mut v = vec![0i64; ground.size()];
            for (key, x) in &r.entries {
                v[ground.parse(key)?.index()] += integer(x)?;
            }
            SupermodularFunction::from_i64(ground, &v, r.name.unwrap_or_else(|| format!("ray-{k}")))
        })
        .collect()
}

pub fn rays_to_json(rays: &[SupermodularFunction]) -> Value {
    Value::Array(
        rays.iter()
            .map(|m| {
                let g = m.ground();
                let entries: Map<String, Value> = g
                    .subsets()
                    .filter_map(|s| {
                        let v = to_i64(m.get(s))?;
                        (v != 0).then(|| (g.format(s), v.into()))
                    })
                    .collect();
                serde_json::json!({ "name": m.name(), "entries": entries })
            })
            .collect(),
    )
}

/// `{"labels": [...], "entries": {"a": 1, "a,b": "-1/2"}}`; missing sets are 0.
pub fn parse_dual_vector(text: &str) -> Result<DualVector> {
    #[derive(Deserialize)]
    struct Raw {
        labels: Vec<String>,
        entries: Map<String, Value>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    let g = GroundSet::new(raw.labels)?;
    let mut y = DualVector::zero(&g);
    for (k, x) in &raw.entries {
        let s = g.parse(k)?;
        if s.is_empty() {
            return Err(Error::Parse("dual vectors have no ∅ entry".into()));
        }
        let v = y.get(s) + rational(x)?;
        y.set(s, v);
    }
    Ok(y)
}

pub fn dual_vector_to_json(y: &DualVector) -> Value {
    let entries: Map<String, Value> = y.rendered().into_iter().map(|(k, v)| (k, v.into())).collect();
    serde_json::json!({ "labels": y.ground().labels(), "entries": entries })
}

/// Witness vector with `"p/q"` entries, zeros omitted.
pub fn witness_to_json(x: &RatVector) -> Value {
    let entries: Map<String, Value> = x.rendered().into_iter().map(|(k, v)| (k, v.into())).collect();
    serde_json::json!({ "entries": entries })
}

/// `"p/q"` strings for a list of rationals.
pub fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| format_rational(r).into()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::enumerate_digraphs;
    use crate::encode::{characteristic_of, eta_of, standard_imset_of};
    use crate::setfam::Antichain;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"labels": ["a","b","c"], "edges": [["c","b"], ["a","b"], ["b","a"]]}"#;
        let g = parse_graph(text).unwrap();
        assert!(!g.is_acyclic());
        assert_eq!(parse_graph(&graph_to_json(&g).to_string()).unwrap(), g);
        let g3 = GroundSet::standard(3).unwrap();
        for graph in enumerate_digraphs(&g3, false).unwrap() {
            let back = parse_graph(&graph_to_json(&graph).to_string()).unwrap();
            assert_eq!(back.parents(), graph.parents());
        }
        assert!(parse_graph(r#"{"labels": ["a","b"], "edges": [["a","z"]]}"#).is_err());
    }

    #[test]
    fn imset_round_trip() {
        let g3 = GroundSet::standard(3).unwrap();
        let graph = DirectedGraph::from_labelled_arrows(&g3, &[("a", "b")]).unwrap();
        let u = standard_imset_of(&graph).unwrap();
        for item in [
            Imset::Standard(u.clone()),
            Imset::Characteristic(characteristic_of(&u).unwrap()),
            Imset::Eta(eta_of(&graph)),
        ] {
            let text = item.to_json().to_string();
            assert_eq!(Imset::parse(&text).unwrap(), item);
        }
        let json = Imset::Standard(u).to_json();
        assert_eq!(json["entries"]["∅"], 1);
        assert_eq!(json["entries"]["a,b,c"], 1);
    }

    #[test]
    fn rays_and_dual_vectors() {
        let g3 = GroundSet::standard(3).unwrap();
        let rays = crate::constraint::builtin_rays(&g3).unwrap();
        let back = parse_ray_file(&g3, &rays_to_json(&rays).to_string()).unwrap();
        assert_eq!(back, rays);
        let plain = parse_ray_file(&g3, r#"[{"entries": {"a,b,c": 1}}]"#).unwrap();
        assert_eq!(plain[0].name(), "ray-0");
        let y = crate::constraint::y_of_class(&Antichain::parse(&g3, &["a", "bc"]).unwrap());
        assert_eq!(parse_dual_vector(&dual_vector_to_json(&y).to_string()).unwrap(), y);
        let frac = parse_dual_vector(r#"{"labels": ["a","b"], "entries": {"a": "1/2"}}"#).unwrap();
        assert_eq!(frac.rendered(), vec![("a".to_string(), "1/2".to_string())]);
    }
}
