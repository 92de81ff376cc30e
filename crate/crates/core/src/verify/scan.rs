use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{census, dense_from_p2, point_json, EnumerationBox, VerificationReport};
use crate::constraint::{
    supermodular_rays, CompiledRow, ConstraintSystem, Family, Framework, LinearConstraint, RaySource,
    SupermodularFunction,
};
use crate::encode::{u_from_characteristic, CharacteristicImset};
use crate::error::{Error, Result};
use crate::exactlin::{
    b_from_factorization, build_b_u, build_matrix_a, build_matrix_b, build_matrix_b_bar, build_matrix_c,
    build_matrix_d, build_matrix_e, build_matrix_e_with_dummy, build_matrix_f, feasible_nonneg_solution,
    has_incidence_columns, hermite_normal_form, is_identity_then_zero, is_totally_unimodular_small,
    is_unimodular_full_row_rank, mul_vector, IntMatrix, MinorMode, MinorViolation, TuVerdict, UnimodularVerdict,
};
use crate::setfam::{enumerate_antichains, GroundSet};

/// Default cap on the number of box points a scan may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Witness lists in reports are cut at this length.
const WITNESS_CAP: usize = 20;

/// Box point, rows hold, simplex feasible, witness valid.
type FarkasPoint = (Vec<i64>, bool, bool, bool);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub budget: u128,
    pub long_run: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { budget: DEFAULT_BUDGET, long_run: false }
    }
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub report: VerificationReport,
    /// Satisfying points over `𝒫₂(N)`, in box order.
    pub satisfying: Vec<Vec<i64>>,
}

/// Integer rows ordered cheap-first, with any non-integral rows kept exact.
struct Evaluator {
    framework: Framework,
    ground: GroundSet,
    compiled: Vec<(CompiledRow, usize)>,
    exact: Vec<usize>,
    rows: Vec<LinearConstraint>,
}

impl Evaluator {
    fn new(system: &ConstraintSystem) -> Self {
        let mut compiled = Vec::new();
        let mut exact = Vec::new();
        for (k, r) in system.rows().iter().enumerate() {
            match r.compile() {
                Some(c) => compiled.push((c, k)),
                None => exact.push(k),
            }
        }
        compiled.sort_by_key(|(c, _)| c.terms.len());
        Evaluator {
            framework: system.framework(),
            ground: system.ground().clone(),
            compiled,
            exact,
            rows: system.rows().to_vec(),
        }
    }

    /// The coordinates the rows read: `c` itself, or `u` obtained from it.
    fn coordinates(&self, p2: &[i64]) -> Vec<i64> {
        let dense = dense_from_p2(&self.ground, p2);
        match self.framework {
            Framework::C => dense,
            _ => {
                let c = CharacteristicImset::from_dense(&self.ground, dense).expect("dense length");
                u_from_characteristic(&c).values().to_vec()
            }
        }
    }

    fn first_violation(&self, p2: &[i64]) -> Option<&LinearConstraint> {
        let x = self.coordinates(p2);
        if let Some((_, k)) = self.compiled.iter().find(|(c, _)| !c.holds(&x)) {
            return Some(&self.rows[*k]);
        }
        self.exact.iter().map(|k| &self.rows[*k]).find(|r| !r.holds_i64(&x))
    }
}

fn scan_points(eval: &Evaluator, bx: &EnumerationBox) -> Vec<Vec<i64>> {
    let volume = bx.volume() as u64;
    (0..volume)
        .into_par_iter()
        .filter_map(|k| {
            let p = bx.point(k as u128);
            eval.first_violation(&p).is_none().then_some(p)
        })
        .collect()
}

fn check_framework(framework: Framework) -> Result<()> {
    if framework == Framework::Eta {
        return Err(Error::Unsupported("lattice scans run over characteristic coordinates; use u or c".into()));
    }
    Ok(())
}

fn families_json(families: &[Family]) -> Value {
    families.iter().map(|f| f.name()).collect::<Vec<_>>().into()
}

/// Enumerates the box, keeps the points satisfying every requested row and
/// compares them with the census. Passes iff the two sets coincide.
pub fn lattice_scan(
    ground: &GroundSet,
    framework: Framework,
    families: &[Family],
    bx: &EnumerationBox,
    rays: Option<&[SupermodularFunction]>,
    opts: &ScanOptions,
) -> Result<ScanResult> {
    check_framework(framework)?;
    let n = ground.n();
    let volume = bx.volume();
    if !opts.long_run {
        if n >= 5 {
            return Err(Error::TooLarge { what: "converse lattice scan", n });
        }
        if volume > opts.budget {
            return Err(Error::Budget { points: volume, budget: opts.budget });
        }
    }
    let mut report = VerificationReport::new("scan");
    report
        .param("n", n)
        .param("framework", framework.name())
        .param("families", families_json(families))
        .param("box", bx.describe());
    let system = ConstraintSystem::build(ground, framework, families, rays)?;
    let eval = Evaluator::new(&system);
    let satisfying = scan_points(&eval, bx);
    let census = census(ground)?;
    let found: BTreeSet<Vec<i64>> = satisfying.iter().cloned().collect();
    let inside: BTreeSet<Vec<i64>> = census.classes.iter().filter(|p| bx.contains(p)).cloned().collect();
    let extra: Vec<&Vec<i64>> = found.difference(&inside).collect();
    let missing: Vec<&Vec<i64>> = inside.difference(&found).collect();

    report
        .count("box_points", volume.to_string())
        .count("rows", system.len())
        .count("satisfying", found.len())
        .count("census_classes", census.classes.len())
        .count("census_in_box", inside.len())
        .count("matched", found.intersection(&inside).count())
        .count("extra", extra.len())
        .count("missing", missing.len());
    report.check("every census imset lies in the box", inside.len() == census.classes.len(), None);
    report.check("every census imset satisfies the rows", missing.is_empty(), None);
    report.check("no other lattice point satisfies the rows", extra.is_empty(), None);
    for p in extra.iter().take(WITNESS_CAP) {
        report.witness(json!({ "kind": "non-imset lattice point", "point": point_json(ground, p) }));
    }
    for p in missing.iter().take(WITNESS_CAP) {
        let row = eval.first_violation(p).map(|r| r.tag().to_string());
        report.witness(json!({ "kind": "imset cut off", "point": point_json(ground, p), "row": row }));
    }
    Ok(ScanResult { report: report.finish(), satisfying })
}

/// Over the default box: every lattice point of {equality, specific,
/// nonspecific} satisfies {equality, specific, cluster-u}. At three variables
/// `u(T) = (−1)^{|T|}` separates the two.
pub fn relaxation_comparison(ground: &GroundSet, rays: Option<&[SupermodularFunction]>) -> Result<VerificationReport> {
    let n = ground.n();
    if n > 4 {
        return Err(Error::TooLarge { what: "relaxation comparison", n });
    }
    let mut report = VerificationReport::new("compare-relaxations");
    report.param("n", n);
    let bx = EnumerationBox::default_for(ground);
    report.param("box", bx.describe());
    let rays = match rays {
        Some(r) => r.to_vec(),
        None => supermodular_rays(ground, &RaySource::Default)?,
    };
    let fams_ns = [Family::Equality, Family::Specific, Family::Nonspecific];
    let fams_cl = [Family::Equality, Family::Specific, Family::ClusterU];
    let ns = ConstraintSystem::build(ground, Framework::U, &fams_ns, Some(&rays))?;
    let cl = ConstraintSystem::build(ground, Framework::U, &fams_cl, None)?;
    let (ev_ns, ev_cl) = (Evaluator::new(&ns), Evaluator::new(&cl));
    let set_ns: BTreeSet<Vec<i64>> = scan_points(&ev_ns, &bx).into_iter().collect();
    let set_cl: BTreeSet<Vec<i64>> = scan_points(&ev_cl, &bx).into_iter().collect();
    let outside: Vec<&Vec<i64>> = set_ns.difference(&set_cl).collect();
    report
        .count("box_points", bx.volume().to_string())
        .count("nonspecific_rows", ns.len())
        .count("cluster_rows", cl.len())
        .count("satisfying_nonspecific", set_ns.len())
        .count("satisfying_cluster", set_cl.len())
        .count("cluster_only", set_cl.difference(&set_ns).count());
    report.check("nonspecific system lies inside the cluster system on the box", outside.is_empty(), None);
    for p in outside.iter().take(WITNESS_CAP) {
        report.witness(json!({ "kind": "containment counterexample", "point": point_json(ground, p) }));
    }
    let census = census(ground)?;
    let all_in = census.classes.iter().all(|p| set_ns.contains(p) && set_cl.contains(p));
    report.check("every census imset satisfies both systems", all_in, None);

    // u(T) = (−1)^{|T|}
    let w: Vec<i64> = ground.subsets().map(|t| if t.len() % 2 == 0 { 1 } else { -1 }).collect();
    let cluster_rows: Vec<&LinearConstraint> = cl.rows().iter().filter(|r| r.family() == "cluster-u").collect();
    let cluster_ok = cluster_rows.iter().all(|r| r.holds_i64(&w));
    let broken: Vec<String> =
        ns.rows().iter().filter(|r| r.family() == "nonspecific" && !r.holds_i64(&w)).map(|r| r.tag().to_string()).collect();
    report.witness(json!({
        "kind": "strictness witness u(T) = (-1)^|T|",
        "satisfies_cluster_rows": cluster_ok,
        "violated_nonspecific_rows": broken,
    }));
    if n == 3 {
        report.check("(-1)^|T| satisfies every cluster-u row", cluster_ok, None);
        let full = format!("nonspecific:up-{}", ground.format_compact(ground.full()));
        report.check("(-1)^|T| violates the full-set nonspecific row", broken.contains(&full), Some(full));
    }
    Ok(report.finish())
}

/// Every census imset satisfies every row of every family: u-framework
/// equality, specific, cluster-u; c-framework κ-specific and cluster-c; and
/// the nonspecific rows in both whenever rays are available.
pub fn soundness_check(ground: &GroundSet, rays: Option<&[SupermodularFunction]>) -> Result<VerificationReport> {
    let n = ground.n();
    let mut report = VerificationReport::new("soundness");
    report.param("n", n);
    let census = census(ground)?;
    let points: Vec<&Vec<i64>> = census.classes.iter().collect();
    report.count("imsets", points.len());
    let rays: Option<Vec<SupermodularFunction>> = match rays {
        Some(r) => Some(r.to_vec()),
        None if n <= 4 => Some(supermodular_rays(ground, &RaySource::Default)?),
        None => None,
    };
    report.param("nonspecific", rays.is_some());
    let mut plan: Vec<(Framework, Vec<Family>)> = vec![
        (Framework::U, vec![Family::Equality, Family::Specific, Family::ClusterU]),
        (Framework::C, vec![Family::KappaSpecific, Family::ClusterC]),
    ];
    if rays.is_some() {
        plan[0].1.push(Family::Nonspecific);
        plan[1].1.push(Family::Nonspecific);
    }
    for (fw, fams) in plan {
        for fam in fams {
            let system = ConstraintSystem::build(ground, fw, &[fam], rays.as_deref())?;
            let eval = Evaluator::new(&system);
            let bad: Vec<(&Vec<i64>, String)> = points
                .par_iter()
                .filter_map(|p| eval.first_violation(p).map(|r| (*p, r.tag().to_string())))
                .collect();
            let key = format!("{}/{}", fw.name(), fam.name());
            report.count(&format!("{key} rows"), system.len());
            report.check(format!("{key}: all imsets satisfy all rows"), bad.is_empty(), None);
            for (p, tag) in bad.iter().take(WITNESS_CAP) {
                report.witness(json!({ "kind": "violated row", "family": key, "row": tag, "point": point_json(ground, p) }));
            }
        }
    }
    Ok(report.finish())
}

/// Point by point over the box: `{η ≥ 0 : Aη = b_u}` is feasible iff `u`
/// is standardized and meets every specific row. Each feasible witness is
/// re-checked exactly.
pub fn farkas_check(ground: &GroundSet, bx: &EnumerationBox) -> Result<VerificationReport> {
    let n = ground.n();
    if bx.volume() > 100_000 {
        return Err(Error::Budget { points: bx.volume(), budget: 100_000 });
    }
    let mut report = VerificationReport::new("farkas");
    report.param("n", n).param("box", bx.describe());
    let a = build_matrix_a(ground);
    let specific: Vec<LinearConstraint> =
        enumerate_antichains(ground, true)?.map(|ac| crate::constraint::specific_constraint(&ac)).collect();
    report.count("specific_rows", specific.len());
    let outcomes: Vec<Result<FarkasPoint>> = (0..bx.volume() as u64)
        .into_par_iter()
        .map(|k| {
            let p = bx.point(k as u128);
            let c = CharacteristicImset::from_dense(ground, dense_from_p2(ground, &p))?;
            let u = u_from_characteristic(&c);
            let rows_hold = u.is_standardized() && specific.iter().all(|r| r.holds_i64(u.values()));
            let b = build_b_u(&u);
            let sol = feasible_nonneg_solution(&a, &b)?;
            let valid = match &sol {
                Some(x) => {
                    !x.entries().iter().any(Signed::is_negative) && mul_vector(&a, x.entries())? == b.entries()
                }
                None => true,
            };
            Ok((p, rows_hold, sol.is_some(), valid))
        })
        .collect();
    let outcomes: Vec<FarkasPoint> = outcomes.into_iter().collect::<Result<_>>()?;
    let feasible = outcomes.iter().filter(|o| o.2).count();
    let disagree: Vec<&FarkasPoint> = outcomes.iter().filter(|o| o.1 != o.2).collect();
    report
        .count("points", outcomes.len())
        .count("feasible", feasible)
        .count("rows_satisfied", outcomes.iter().filter(|o| o.1).count())
        .count("disagreements", disagree.len());
    report.check("feasibility agrees with the specific rows at every point", disagree.is_empty(), None);
    report.check("every feasible witness is non-negative and solves the system", outcomes.iter().all(|o| o.3), None);
    for (p, rows, feas, _) in disagree.iter().take(WITNESS_CAP) {
        report.witness(json!({ "kind": "disagreement", "point": point_json(ground, p), "rows_hold": rows, "feasible": feas }));
    }
    Ok(report.finish())
}

fn violation_json(v: &MinorViolation) -> Value {
    let g = v.submatrix.ground();
    let rows: Vec<Vec<String>> =
        (0..v.submatrix.rows()).map(|r| v.submatrix.row(r).iter().map(|x| x.to_string()).collect()).collect();
    json!({
        "kind": "square submatrix with |det| >= 2",
        "rows": v.row_labels.iter().map(|l| l.render(g)).collect::<Vec<_>>(),
        "cols": v.col_labels.iter().map(|l| l.render(g)).collect::<Vec<_>>(),
        "determinant": v.determinant.to_string(),
        "submatrix": rows,
    })
}

fn product_is(a: &IntMatrix, b: &IntMatrix, expect: impl Fn(&IntMatrix) -> bool) -> bool {
    a.mul(b).map(|p| expect(&p)).unwrap_or(false)
}

/// The matrix certificates: HNF of `A`, the factorisations, unimodularity of
/// `A` and `B`, a minor of `A` with `|det| ≥ 2`, and the incidence structure
/// of the dummy-extended `E`. Exhaustive minors only at three variables.
pub fn matrix_certificates(ground: &GroundSet) -> Result<VerificationReport> {
    let n = ground.n();
    if !(3..=4).contains(&n) {
        return Err(Error::Unsupported(format!("matrix certificates cover three or four variables, not {n}")));
    }
    let mut report = VerificationReport::new("matrix-certificates");
    report.param("n", n);
    let (a, b, c, d) = (build_matrix_a(ground), build_matrix_b(ground), build_matrix_c(ground), build_matrix_d(ground));
    report.count("a_shape", format!("{}x{}", a.rows(), a.cols()));
    let (h, u) = hermite_normal_form(&a);
    report.check("HNF(A) = [I 0]", is_identity_then_zero(&h), None);
    report.check("A·U = H", product_is(&a, &u, |p| p.same_entries(&h)), None);
    report.check("B = C·A", product_is(&c, &a, |p| p.same_entries(&b)), None);
    report.check("C·D = I", product_is(&c, &d, IntMatrix::is_identity), None);
    report.check("B̄·F = I", product_is(&build_matrix_b_bar(ground), &build_matrix_f(ground), IntMatrix::is_identity), None);
    report.check(
        "B̄·E on the original columns reproduces B",
        b_from_factorization(ground).map(|m| m.same_entries(&b)).unwrap_or(false),
        None,
    );
    report.check("dummy-extended E has one +1 and one −1 per column", has_incidence_columns(&build_matrix_e_with_dummy(ground)), None);
    let det_c = c.determinant()?;
    report.check("det C = ±1", det_c.abs() == 1.into(), Some(det_c.to_string()));

    let mode = if n == 3 { MinorMode::Exhaustive } else { MinorMode::Sampled { count: 2000, seed: 0 } };
    for (name, m) in [("A", &a), ("B", &b)] {
        let verdict = is_unimodular_full_row_rank(m, mode)?;
        let detail = match &verdict {
            UnimodularVerdict::Unimodular { minors } => {
                report.count(&format!("{name}_maximal_minors"), minors.to_string());
                format!("{minors} maximal minors")
            }
            UnimodularVerdict::NoCounterexample { sampled } => format!("{sampled} sampled minors, no counterexample"),
            UnimodularVerdict::Violation(v) => {
                report.witness(violation_json(v));
                format!("determinant {}", v.determinant)
            }
            UnimodularVerdict::RankDeficient { rank } => format!("rank {rank}"),
        };
        report.check(format!("{name} is unimodular"), verdict.passed(), Some(detail));
    }
    if n == 3 {
        match is_totally_unimodular_small(&a, a.rows())? {
            TuVerdict::Violation(v) => {
                let ok = v.determinant.abs() >= 2.into() && v.submatrix.determinant()? == v.determinant;
                report.check("A has a square submatrix with |det| ≥ 2", ok, Some(format!("determinant {}", v.determinant)));
                report.witness(violation_json(&v));
            }
            TuVerdict::PassUpToOrder { .. } => {
                report.check("A has a square submatrix with |det| ≥ 2", false, None);
            }
        }
        let e = build_matrix_e(ground);
        let tu = is_totally_unimodular_small(&e, e.rows())?;
        report.check("E is totally unimodular", tu.passed(), None);
    }
    Ok(report.finish())
}
