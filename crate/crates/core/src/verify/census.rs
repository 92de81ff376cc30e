use std::collections::BTreeSet;

use rayon::prelude::*;

use super::VerificationReport;
use crate::digraph::enumerate_dags;
use crate::encode::{characteristic_of, standard_imset_of};
use crate::error::{Error, Result};
use crate::exactlin::unimodular::binomial;
use crate::setfam::GroundSet;

/// Number of Markov equivalence classes of DAGs on `n` labelled nodes,
/// `n = 0..=5`.
pub const KNOWN_CLASS_COUNTS: [u64; 6] = [1, 1, 2, 11, 185, 8782];

/// DAGs and their distinct characteristic imsets (entries over `𝒫₂(N)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub dags: u64,
    pub classes: BTreeSet<Vec<i64>>,
}

pub fn census(ground: &GroundSet) -> Result<Census> {
    if ground.n() > 5 {
        return Err(Error::TooLarge { what: "census", n: ground.n() });
    }
    let imsets: Vec<Vec<i64>> = enumerate_dags(ground, false)?
        .par_bridge()
        .map(|g| {
            let u = standard_imset_of(&g).expect("DAG");
            characteristic_of(&u).expect("standard imsets are standardized").p2_values()
        })
        .collect();
    Ok(Census { dags: imsets.len() as u64, classes: imsets.into_iter().collect() })
}

/// `a(n) = Σ_{k=1}^{n} (−1)^{k+1} C(n,k) 2^{k(n−k)} a(n−k)`.
pub fn robinson_dag_count(n: usize) -> u128 {
    let mut a = vec![1i128];
    for m in 1..=n {
        let v: i128 = (1..=m)
            .map(|k| {
                let term = binomial(m, k) as i128 * (1i128 << (k * (m - k))) * a[m - k];
                if k % 2 == 1 { term } else { -term }
            })
            .sum();
        a.push(v);
    }
    a[n] as u128
}

pub fn census_equivalence_classes(ground: &GroundSet) -> Result<VerificationReport> {
    let n = ground.n();
    let mut report = VerificationReport::new("census");
    report.param("n", n);
    let c = census(ground)?;
    report.count("dags", c.dags).count("classes", c.classes.len());
    let expected_dags = robinson_dag_count(n);
    report.check(
        "DAG count matches the Robinson recurrence",
        c.dags as u128 == expected_dags,
        Some(format!("{} enumerated, {} expected", c.dags, expected_dags)),
    );
    let expected = KNOWN_CLASS_COUNTS[n];
    report.check(
        "class count matches the known sequence",
        c.classes.len() as u64 == expected,
        Some(format!("{} found, {} expected", c.classes.len(), expected)),
    );
    report.check(
        "every characteristic imset is 0-1",
        c.classes.iter().all(|v| v.iter().all(|x| matches!(x, 0 | 1))),
        None,
    );
    Ok(report.finish())
}
