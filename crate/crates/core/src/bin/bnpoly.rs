//! Command-line driver. Exit codes: 0 verified, 1 verification failure,
//! 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bnpoly::constraint::{
    class_size, conic_decompose, supermodular_rays, ConstraintSystem, Family, Framework, RaySource, SupermodularFunction,
};
use bnpoly::encode::{char_from_eta, characteristic_of, eta_of, standard_imset_of, u_from_characteristic, u_from_eta};
use bnpoly::exactlin::{
    b_from_factorization, build_matrix_a, build_matrix_b, build_matrix_b_bar, build_matrix_c, build_matrix_d,
    build_matrix_e, build_matrix_e_with_dummy, build_matrix_f, has_incidence_columns, hermite_normal_form,
    is_identity_then_zero, is_totally_unimodular_small, is_unimodular_full_row_rank, IntMatrix, MinorMode, TuVerdict,
    UnimodularVerdict,
};
use bnpoly::io::{dual_vector_to_json, parse_dual_vector, parse_graph, rays_to_json, Imset, ImsetKind};
use bnpoly::rational::format_rational;
use bnpoly::verify::{
    census_equivalence_classes, farkas_check, lattice_scan, relaxation_comparison, run_example, soundness_check,
    BoxKind, EnumerationBox, ScanOptions, VerificationReport, DEFAULT_BUDGET,
};
use bnpoly::{Error, GroundSet};

#[derive(Parser)]
#[command(name = "bnpoly", version, about = "Exact encodings and LP-relaxation checks for Bayesian network structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count DAGs and Markov equivalence classes.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate lattice points of a box inside a constraint system.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        framework: Framework,
        #[arg(long)]
        families: String,
        #[arg(long = "box", default_value = "default")]
        bx: BoxKind,
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long)]
        long_run: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the satisfying points as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Containment of the nonspecific relaxation in the cluster relaxation.
    CompareRelaxations {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every census imset against every constraint family.
    Soundness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simplex feasibility against the specific rows, point by point.
    Farkas {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long = "box", default_value = "default")]
        bx: BoxKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Golden check for one worked example.
    Example {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        id: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a graph.
    Encode {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "as")]
        kind: ImsetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a constraint system.
    Constraints {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        framework: Framework,
        #[arg(long)]
        families: String,
        #[arg(long)]
        rays: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump a structural matrix as CSV, or run a check on it.
    Matrix {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        check: Option<MatrixCheck>,
        /// Sampled minors for unimodularity when exhaustive is out of budget.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest order for the total unimodularity check.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a dual-cone vector into y-vectors of superset-closed classes.
    Decompose {
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extreme rays of the standardized supermodular cone.
    Rays {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = RayMethod::Builtin)]
        method: RayMethod,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert an imset between encodings.
    Transform {
        #[arg(long)]
        from: ImsetArg,
        #[arg(long)]
        to: ImsetArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ImsetArg {
    Eta,
    #[value(alias = "u")]
    Standard,
    #[value(alias = "c")]
    Characteristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Lp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixCheck {
    Hnf,
    Unimodular,
    Tu,
    Products,
}

#[derive(Clone, Copy, ValueEnum)]
enum RayMethod {
    Builtin,
    Dd,
}

/// Result of a subcommand: a document to print and whether it verified.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(v: &Value) -> Self {
        Outcome { text: pretty(v), passed: true }
    }

    fn report(r: &VerificationReport) -> Self {
        eprintln!("{}: {} ({:.2?})", r.experiment, if r.passed { "PASS" } else { "FAIL" }, r.elapsed);
        for c in r.failed_checks() {
            eprintln!("  failed: {}{}", c.name, c.detail.as_ref().map(|d| format!(" [{d}]")).unwrap_or_default());
        }
        Outcome { text: r.to_json_string(), passed: r.passed }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes")
}

fn ground(n: usize) -> anyhow::Result<GroundSet> {
    Ok(GroundSet::standard(n)?)
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_rays(g: &GroundSet, path: &Option<PathBuf>) -> anyhow::Result<Option<Vec<SupermodularFunction>>> {
    Ok(match path {
        Some(p) => Some(supermodular_rays(g, &RaySource::File(p.clone()))?),
        None => None,
    })
}

fn matrix_of(which: Which, g: &GroundSet) -> IntMatrix {
    match which {
        Which::A => build_matrix_a(g),
        Which::B => build_matrix_b(g),
        Which::C => build_matrix_c(g),
        Which::D => build_matrix_d(g),
        Which::E => build_matrix_e(g),
        Which::F => build_matrix_f(g),
    }
}

fn matrix_check(which: Which, g: &GroundSet, check: MatrixCheck, samples: usize, seed: u64, order: Option<usize>) -> anyhow::Result<VerificationReport> {
    let m = matrix_of(which, g);
    let label = ["A", "B", "C", "D", "E", "F"][which as usize];
    let mut r = VerificationReport::new(format!("matrix-{}", label));
    r.param("n", g.n()).param("which", label).param("shape", format!("{}x{}", m.rows(), m.cols()));
    match check {
        MatrixCheck::Hnf => {
            let (h, u) = hermite_normal_form(&m);
            r.check("HNF = [I 0]", is_identity_then_zero(&h), None);
            r.check("M·U = H", m.mul(&u)?.same_entries(&h), None);
            let det = u.determinant()?;
            r.check("det U = ±1", det == 1.into() || det == (-1).into(), Some(det.to_string()));
        }
        MatrixCheck::Unimodular => {
            let verdict = match is_unimodular_full_row_rank(&m, MinorMode::Exhaustive) {
                Err(Error::Budget { .. }) => is_unimodular_full_row_rank(&m, MinorMode::Sampled { count: samples, seed })?,
                other => other?,
            };
            let detail = match &verdict {
                UnimodularVerdict::Unimodular { minors } => format!("all {minors} maximal minors"),
                UnimodularVerdict::NoCounterexample { sampled } => format!("{sampled} sampled minors, no counterexample"),
                UnimodularVerdict::Violation(v) => {
                    r.witness(violation(v));
                    format!("determinant {}", v.determinant)
                }
                UnimodularVerdict::RankDeficient { rank } => format!("rank {rank}"),
            };
            r.check("maximal minors in {-1, 0, 1}", verdict.passed(), Some(detail));
        }
        MatrixCheck::Tu => {
            let top = order.unwrap_or(m.rows().min(m.cols()));
            match is_totally_unimodular_small(&m, top)? {
                TuVerdict::PassUpToOrder { order, submatrices } => {
                    r.count("submatrices", submatrices.to_string());
                    r.check(format!("square submatrices up to order {order} in {{-1, 0, 1}}"), true, None);
                }
                TuVerdict::Violation(v) => {
                    r.witness(violation(&v));
                    r.check("square submatrices in {-1, 0, 1}", false, Some(format!("determinant {}", v.determinant)));
                }
            }
        }
        MatrixCheck::Products => {
            let (a, b, c, d) = (build_matrix_a(g), build_matrix_b(g), build_matrix_c(g), build_matrix_d(g));
            r.check("B = C·A", c.mul(&a)?.same_entries(&b), None);
            r.check("C·D = I", c.mul(&d)?.is_identity(), None);
            r.check("B̄·F = I", build_matrix_b_bar(g).mul(&build_matrix_f(g))?.is_identity(), None);
            r.check("B̄·E on the original columns = B", b_from_factorization(g)?.same_entries(&b), None);
            r.check("dummy-extended E has incidence columns", has_incidence_columns(&build_matrix_e_with_dummy(g)), None);
        }
    }
    Ok(r.finish())
}

fn violation(v: &bnpoly::exactlin::MinorViolation) -> Value {
    let g = v.submatrix.ground();
    json!({
        "rows": v.row_labels.iter().map(|l| l.render(g)).collect::<Vec<_>>(),
        "cols": v.col_labels.iter().map(|l| l.render(g)).collect::<Vec<_>>(),
        "determinant": v.determinant.to_string(),
    })
}

fn transform(from: ImsetArg, to: ImsetArg, text: &str) -> anyhow::Result<Value> {
    let item = Imset::parse(text)?;
    let kind = match from {
        ImsetArg::Eta => ImsetKind::Eta,
        ImsetArg::Standard => ImsetKind::Standard,
        ImsetArg::Characteristic => ImsetKind::Characteristic,
    };
    if item.kind() != kind {
        bail!("input is a {:?} imset, not {:?}", item.kind(), kind);
    }
    let out = match (item, to) {
        (x, t) if t == from => x,
        (Imset::Eta(e), ImsetArg::Standard) => Imset::Standard(u_from_eta(&e)),
        (Imset::Eta(e), ImsetArg::Characteristic) => Imset::Characteristic(char_from_eta(&e)),
        (Imset::Standard(u), ImsetArg::Characteristic) => Imset::Characteristic(characteristic_of(&u)?),
        (Imset::Characteristic(c), ImsetArg::Standard) => Imset::Standard(u_from_characteristic(&c)),
        (_, ImsetArg::Eta) => bail!("imsets do not determine an η-vector"),
        _ => unreachable!("all pairs covered"),
    };
    Ok(out.to_json())
}

fn run(command: Command) -> anyhow::Result<(Outcome, Option<PathBuf>, Option<(PathBuf, String)>)> {
    Ok(match command {
        Command::Census { n, out } => (Outcome::report(&census_equivalence_classes(&ground(n)?)?), out, None),
        Command::Scan { n, framework, families, bx, rays, long_run, budget, out, csv } => {
            let g = ground(n)?;
            let fams = Family::parse_list(&families, framework)?;
            let rays = load_rays(&g, &rays)?;
            let result = lattice_scan(
                &g,
                framework,
                &fams,
                &EnumerationBox::of_kind(&g, bx),
                rays.as_deref(),
                &ScanOptions { budget, long_run },
            )?;
            let table = csv.map(|path| {
                let mut w = csv::Writer::from_writer(Vec::new());
                let header: Vec<String> = g.subsets_min(2).map(|s| g.format_compact(s)).collect();
                w.write_record(&header).expect("in-memory write");
                for p in &result.satisfying {
                    w.write_record(p.iter().map(|v| v.to_string())).expect("in-memory write");
                }
                (path, String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"))
            });
            (Outcome::report(&result.report), out, table)
        }
        Command::CompareRelaxations { n, rays, out } => {
            let g = ground(n)?;
            let rays = load_rays(&g, &rays)?;
            (Outcome::report(&relaxation_comparison(&g, rays.as_deref())?), out, None)
        }
        Command::Soundness { n, rays, out } => {
            let g = ground(n)?;
            let rays = load_rays(&g, &rays)?;
            (Outcome::report(&soundness_check(&g, rays.as_deref())?), out, None)
        }
        Command::Farkas { n, bx, out } => {
            let g = ground(n)?;
            (Outcome::report(&farkas_check(&g, &EnumerationBox::of_kind(&g, bx))?), out, None)
        }
        Command::Example { id, out } => (Outcome::report(&run_example(id)?), out, None),
        Command::Encode { graph, kind, out } => {
            let g = parse_graph(&read(&graph)?)?;
            let item = match kind {
                ImsetArg::Eta => Imset::Eta(eta_of(&g)),
                ImsetArg::Standard => Imset::Standard(standard_imset_of(&g)?),
                ImsetArg::Characteristic => Imset::Characteristic(char_from_eta(&eta_of(&g))),
            };
            (Outcome::ok(&item.to_json()), out, None)
        }
        Command::Constraints { n, framework, families, rays, format, out } => {
            let g = ground(n)?;
            let fams = Family::parse_list(&families, framework)?;
            let rays = load_rays(&g, &rays)?;
            let system = ConstraintSystem::build(&g, framework, &fams, rays.as_deref())?;
            let text = match format {
                Format::Json => pretty(&system.to_json()),
                Format::Lp => system.to_lp(),
            };
            (Outcome { text, passed: true }, out, None)
        }
        Command::Matrix { which, n, check, samples, seed, order, out } => {
            let g = ground(n)?;
            match check {
                Some(c) => (Outcome::report(&matrix_check(which, &g, c, samples, seed, order)?), out, None),
                None => (Outcome { text: matrix_of(which, &g).to_csv()?, passed: true }, out, None),
            }
        }
        Command::Decompose { y, out } => {
            let y = parse_dual_vector(&read(&y)?)?;
            match conic_decompose(&y) {
                Ok(parts) => {
                    let parts: Vec<Value> = parts
                        .iter()
                        .map(|(a, l)| json!({ "antichain": a.format(), "weight": format_rational(l) }))
                        .collect();
                    let doc = json!({ "input": dual_vector_to_json(&y), "class_size": class_size(&y), "parts": parts });
                    (Outcome::ok(&doc), out, None)
                }
                Err(Error::ConeViolation(at)) => {
                    let doc = json!({ "input": dual_vector_to_json(&y), "violation": at });
                    eprintln!("decompose: FAIL (not in the dual cone at {at})");
                    (Outcome { text: pretty(&doc), passed: false }, out, None)
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Rays { n, method, force, out } => {
            let g = ground(n)?;
            let source = match method {
                RayMethod::Builtin => RaySource::Builtin,
                RayMethod::Dd => RaySource::Computed { force },
            };
            (Outcome::ok(&rays_to_json(&supermodular_rays(&g, &source)?)), out, None)
        }
        Command::Transform { from, to, input, out } => (Outcome::ok(&transform(from, to, &read(&input)?)?), out, None),
    })
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).map_err(|e| anyhow!("writing {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(outcome, out, table)| {
        match out {
            Some(path) => write(&path, &outcome.text)?,
            None => {
                use std::io::Write;
                let mut stdout = std::io::stdout().lock();
                match writeln!(stdout, "{}", outcome.text) {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                    r => r?,
                }
            }
        }
        if let Some((path, text)) = table {
            write(&path, &text)?;
        }
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
