//! Report assembly and rendering for each subcommand.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use nilcomb_core::bounds::{bound_report, graph_bounds};
use nilcomb_core::cohomology::{
    basic_betti, find_max_independent_set, independence_polynomial, is_abelian, max_abelian_subalgebra,
};
use nilcomb_core::error::Error;
use nilcomb_core::graph_tools::{brute_force_independence, trinks_polynomial};
use nilcomb_core::spectral::{graph_partition_function, heisenberg_partition_closed_form, partition_function};
use nilcomb_core::verify::{self, CheckResult, Corpus, Scope, CRITERIA};
use nilcomb_core::{
    lie::dani_mainkar, linalg::RatMatrix, BoundReport, GradedPolynomial, Graph, MetricPair, MultiPoly,
    PartitionFunction,
};

use crate::{load_algebra_file, load_graph, CliResult, Ctx, Failure, Loaded};

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialises")
}

#[derive(Serialize)]
struct Polynomial {
    coeffs: Vec<u64>,
    text: String,
}

impl From<&GradedPolynomial> for Polynomial {
    fn from(p: &GradedPolynomial) -> Self {
        Polynomial {
            coeffs: p.coeffs().to_vec(),
            text: p.to_string(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
enum AbelianOutcome {
    Found {
        dim: usize,
        coordinate_set: Option<Vec<usize>>,
    },
    SearchExhausted {
        target: usize,
        found: usize,
        explored: usize,
    },
}

#[derive(Serialize)]
struct AnalyzeReport {
    input: String,
    d: usize,
    b: usize,
    c: usize,
    independence_polynomial: Polynomial,
    alpha: usize,
    max_independent_set: Vec<usize>,
    abelian_dim: usize,
    abelian_subalgebra: AbelianOutcome,
    bounds: BoundReport,
    sandwich_holds: bool,
}

pub fn analyze(ctx: &Ctx, loaded: &Loaded) -> CliResult<String> {
    let alg = &loaded.algebra;
    let poly = independence_polynomial(alg, &ctx.limits)?;
    let alpha = poly.degree();
    let set = find_max_independent_set(alg, &ctx.limits)?;
    let abelian = match max_abelian_subalgebra(alg, &ctx.limits) {
        Ok(sub) => {
            if !is_abelian(alg, &sub.basis) {
                return Err(Failure::check("constructed subalgebra is not abelian"));
            }
            AbelianOutcome::Found {
                dim: sub.dim(),
                coordinate_set: sub.coordinate_set.map(|s| s.indices),
            }
        }
        Err(Error::AbelianSearchExhausted {
            target,
            found,
            explored,
        }) => AbelianOutcome::SearchExhausted {
            target,
            found,
            explored,
        },
        Err(e) => return Err(e.into()),
    };
    let bounds = bound_report(alg.dim() as u64, alg.b() as u64, Some(alpha as u64))?;
    let report = AnalyzeReport {
        input: loaded.label.clone(),
        d: alg.dim(),
        b: alg.b(),
        c: alg.c(),
        independence_polynomial: (&poly).into(),
        alpha,
        max_independent_set: set.indices,
        abelian_dim: alpha + alg.c(),
        abelian_subalgebra: abelian,
        sandwich_holds: bounds.sandwich_holds(),
        bounds,
    };
    if !ctx.text {
        return Ok(json(&report));
    }
    let mut out = vec![
        format!("input: {}", report.input),
        format!("d = {}, b = {}, c = {}", report.d, report.b, report.c),
        format!("I(g, t) = {}", poly),
        format!("alpha = {}", report.alpha),
        format!("max independent set: {:?}", report.max_independent_set),
        format!("alpha + d - b = {}", report.abelian_dim),
    ];
    out.push(match &report.abelian_subalgebra {
        AbelianOutcome::Found { dim, coordinate_set } => match coordinate_set {
            Some(s) => format!("abelian subalgebra: dim {dim}, coordinate set {s:?}"),
            None => format!("abelian subalgebra: dim {dim}, non-coordinate"),
        },
        AbelianOutcome::SearchExhausted { target, found, .. } => {
            format!("abelian subalgebra: none of dim {target} found (best {found})")
        }
    });
    out.push(bounds_line(&report.bounds));
    Ok(out.join("\n"))
}

fn bounds_line(r: &BoundReport) -> String {
    let alpha = r.alpha_exact.map_or("alpha".to_string(), |a| format!("alpha = {a}"));
    format!(
        "{:.4} (ceil {}) <= {} <= {:.4} (floor {})",
        r.lower, r.lower_ceil, alpha, r.upper, r.upper_floor
    )
}

#[derive(Serialize)]
struct PartitionReport<'a> {
    input: String,
    method: &'static str,
    text: String,
    #[serde(flatten)]
    z: &'a PartitionFunction,
}

fn partition_out(ctx: &Ctx, input: String, method: &'static str, z: &PartitionFunction) -> String {
    if ctx.text {
        return format!("Z(s, t) = {z}");
    }
    json(&PartitionReport {
        input,
        method,
        text: z.to_string(),
        z,
    })
}

pub fn partition_metric(ctx: &Ctx, loaded: &Loaded, gram: Option<RatMatrix>) -> CliResult<String> {
    let mp = match gram {
        Some(g) => MetricPair::new(loaded.algebra.clone(), g)?,
        None => MetricPair::canonical(loaded.algebra.clone()),
    };
    let z = partition_function(&mp, &ctx.limits, &ctx.tol)?;
    Ok(partition_out(ctx, loaded.label.clone(), "eigensolve", &z))
}

pub fn partition_graph(ctx: &Ctx, g: &Graph, path: &Path) -> CliResult<String> {
    let z = graph_partition_function(g, &ctx.limits)?;
    Ok(partition_out(ctx, path.display().to_string(), "combinatorial", &z))
}

pub fn partition_closed_form(ctx: &Ctx, n: usize) -> CliResult<String> {
    let z = heisenberg_partition_closed_form(n)?;
    Ok(partition_out(ctx, format!("h_{n}"), "closed-form", &z))
}

#[derive(Serialize)]
struct BoundsOut<'a> {
    input: Option<&'a str>,
    #[serde(flatten)]
    report: BoundReport,
    sandwich_holds: bool,
}

pub fn bounds(ctx: &Ctx, input: Option<&str>, d: u64, b: u64, alpha: Option<u64>) -> CliResult<String> {
    let report = bound_report(d, b, alpha)?;
    let holds = report.sandwich_holds();
    let out = if ctx.text {
        format!("d = {d}, b = {b}, case {:?}\n{}", report.case_tag, bounds_line(&report))
    } else {
        json(&BoundsOut {
            input,
            report,
            sandwich_holds: holds,
        })
    };
    if !holds {
        return Err(Failure::check("alpha lies outside the bounds").with_report(out));
    }
    Ok(out)
}

#[derive(Serialize)]
struct GraphReport {
    n: usize,
    edges: Vec<(usize, usize)>,
    independence_polynomial: Polynomial,
    alpha: usize,
    max_independent_set: Vec<usize>,
    lower_bound: f64,
    upper_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trinks: Option<MultiPoly>,
}

pub fn graph(ctx: &Ctx, g: &Graph, trinks: bool) -> CliResult<String> {
    let poly = brute_force_independence(g, &ctx.limits)?;
    let set = find_max_independent_set(&dani_mainkar(g), &ctx.limits)?;
    let (lower, upper) = graph_bounds(g);
    let report = GraphReport {
        n: g.vertex_count(),
        edges: g.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
        alpha: poly.degree(),
        independence_polynomial: (&poly).into(),
        max_independent_set: set.indices,
        lower_bound: lower,
        upper_bound: upper,
        trinks: trinks.then(|| trinks_polynomial(g, &ctx.limits)).transpose()?,
    };
    if !ctx.text {
        return Ok(json(&report));
    }
    let mut out = vec![
        format!("n = {}, edges = {}", report.n, report.edges.len()),
        format!("I(G, t) = {poly}"),
        format!("alpha = {}, max independent set {:?}", report.alpha, report.max_independent_set),
        format!("{lower:.4} <= alpha <= {upper:.4}"),
    ];
    if let Some(f) = &report.trinks {
        out.push(format!("F(G; q, r, s, t) = {f}"));
    }
    Ok(out.join("\n"))
}

#[derive(Serialize)]
struct VerifyReport {
    scope: Scope,
    passed: bool,
    checks: Vec<CheckResult>,
}

pub fn verify(ctx: &Ctx, scope: Scope, criterion: Option<u8>, corpus: Option<&Path>) -> CliResult<String> {
    let inputs = corpus.map(corpus_files).transpose()?;
    let suite = Corpus::for_scope(scope);
    let mut checks: Vec<CheckResult> = CRITERIA
        .iter()
        .map(|&(id, _)| id)
        .filter(|id| criterion.is_none_or(|c| c == *id))
        .map(|id| verify::run_criterion(id, &suite, &ctx.limits, &ctx.tol))
        .collect();
    if let Some(files) = inputs {
        checks.push(check_corpus(ctx, &files));
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.criterion.to_string())
        .collect();
    let out = if ctx.text {
        checks
            .iter()
            .map(|c| {
                format!(
                    "criterion {}: {} [{:.1}s] {}: {}",
                    c.criterion,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.millis as f64 / 1000.0,
                    c.name,
                    c.detail
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    } else {
        json(&VerifyReport { scope, passed, checks })
    };
    if passed {
        Ok(out)
    } else {
        Err(Failure::check(format!("failed checks: {}", failed.join(", "))).with_report(out))
    }
}

fn corpus_files(dir: &Path) -> CliResult<Vec<std::path::PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Failure::usage(format!("cannot read corpus {}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|x| x.to_str()), Some("json" | "edges")))
        .collect();
    if files.is_empty() {
        return Err(Failure::usage(format!(
            "corpus {} contains no .json or .edges inputs",
            dir.display()
        )));
    }
    files.sort();
    Ok(files)
}

/// Structural checks on user inputs: the independent set realises `α`, the bounds
/// sandwich `α`, and on graphs `b_B^k(L(G)) = s_k(G)`.
fn check_corpus(ctx: &Ctx, files: &[std::path::PathBuf]) -> CheckResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    for path in files {
        if let Err(msg) = check_input(ctx, path) {
            failures.push(format!("{}: {msg}", path.display()));
        }
    }
    CheckResult {
        criterion: 0,
        name: "input corpus",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} inputs checked", files.len())
        } else {
            format!("{} of {} inputs failed; {}", failures.len(), files.len(), failures.join("; "))
        },
        millis: start.elapsed().as_millis(),
    }
}

fn check_input(ctx: &Ctx, path: &Path) -> Result<(), String> {
    let is_graph = path.extension().is_some_and(|x| x == "edges");
    let (alg, graph) = if is_graph {
        let g = load_graph(path).map_err(|f| f.message)?;
        (dani_mainkar(&g), Some(g))
    } else {
        (load_algebra_file(path).map_err(|f| f.message)?.algebra, None)
    };
    let lim = &ctx.limits;
    let poly = independence_polynomial(&alg, lim).map_err(|e| e.to_string())?;
    let set = find_max_independent_set(&alg, lim).map_err(|e| e.to_string())?;
    if set.len() != poly.degree() {
        return Err(format!("independent set of size {} but alpha = {}", set.len(), poly.degree()));
    }
    let report = bound_report(alg.dim() as u64, alg.b() as u64, Some(poly.degree() as u64))
        .map_err(|e| e.to_string())?;
    if !report.sandwich_holds() {
        return Err(format!("alpha = {} outside the bounds", poly.degree()));
    }
    if let Some(g) = graph {
        let counts = brute_force_independence(&g, lim).map_err(|e| e.to_string())?;
        for k in 0..=alg.b() {
            let bk = basic_betti(&alg, k, lim).map_err(|e| e.to_string())? as u64;
            if bk != counts.coeff(k) {
                return Err(format!("b_B^{k} = {bk} but s_{k} = {}", counts.coeff(k)));
            }
        }
    }
    Ok(())
}
