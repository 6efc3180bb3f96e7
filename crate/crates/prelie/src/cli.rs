//! The `prelie` command line. Every command prints one JSON document on
//! stdout (search prints JSON lines) and a one-line summary on stderr.
//!
//! Exit codes: 0 pass, 1 checked and failed, 2 input error, 3 budget or
//! resource limit.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use prelie_core::brackets::{check_maurer_cartan, check_twisted_mc, d_k};
use prelie_core::cochain::{check_two_cocycle, cohomology, Cochain};
use prelie_core::deformation::{check_formal_deformation, check_linear_deformation, check_nijenhuis_element, rigidity_from_elements, DeformationSeries, TwoReadings};
use prelie_core::kcohomology::{coboundary_k, cohomology_k};
use prelie_core::ns::{check_nijenhuis, check_ns_prelie, compatible_ns_from_invertible, deformed_product, ns_from_nijenhuis, ns_from_reynolds, reynolds_from_ns, NijenhuisOperator, NsPreLie};
use prelie_core::prelie::{check_prelie, check_representation};
use prelie_core::reynolds::{check_d_reynolds, check_rcw_morphism, check_rcw_reynolds, check_weighted_reynolds, gauge_transform, induced_product, semidirect, shift_operator, star_product};
use prelie_core::scalar::{abs, sign};
use prelie_core::search::{predicate, PredicateInputs, SearchSpec, Unknown, DEFAULT_BUDGET};
use prelie_core::{Error, Field, Matrix, Report, Scalar};
use serde_json::{json, Value};

use crate::bundle::{parse_bundle, Bundle, InputError};
use crate::format::{self, actions_to_json, algebra_to_json, cochain_to_json, k_cohomology_to_json, matrix_to_json, ns_to_json, report_to_json, vector_to_json, FormatError};
use crate::parallel;

pub const BUDGET_VAR: &str = "PRELIE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "prelie", version, about = "Exact checks, constructions and searches for pre-Lie algebras and RCW Reynolds operators")]
struct Cli {
    /// Scalars for field-generic files: q, f2, f3, f5, f7, ...
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    #[command(subcommand)]
    command: Command,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify one structure in a bundle.
    Check { kind: CheckKind, bundle: PathBuf },
    /// Cohomology dimensions of the algebra with coefficients in its representation, or of an operator.
    Cohomology {
        #[arg(long = "of", value_enum)]
        of: Of,
        #[arg(long)]
        degree: usize,
        bundle: PathBuf,
    },
    /// Build a derived object and print it.
    Construct { kind: ConstructKind, bundle: PathBuf },
    /// Exhaustive search for operators or elements satisfying a predicate.
    Search(SearchArgs),
    /// Compare the RCW checker with the expanded polynomial system on every 3x3 matrix for e3·e3 = e2.
    PolynomialSystem {
        #[arg(long, value_parser = parse_field)]
        domain: Field,
        #[arg(long)]
        fix: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Deformations of an RCW Reynolds operator.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Maurer–Cartan equation for K; same as `check mc`.
    McCheck { bundle: PathBuf },
    /// Largest entry of d_K f − (−1)^(n−1) ∂_K f over a basis of n-cochains.
    DkConsistency {
        bundle: PathBuf,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Prelie,
    Rep,
    Cocycle,
    Reynolds,
    Weighted,
    DReynolds,
    Nijenhuis,
    Ns,
    Morphism,
    Mc,
    TwistedMc,
    LinearDeform,
    FormalDeform,
    NijenhuisElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Of {
    Algebra,
    Operator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Semidirect,
    Induced,
    Star,
    Gauge,
    Shift,
    NsFromNijenhuis,
    NsFromReynolds,
    ReynoldsFromNs,
    CompatibleNs,
    DeformedProduct,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// rcw-reynolds, nijenhuis, weighted-reynolds or nijenhuis-element.
    #[arg(long)]
    predicate: String,
    #[arg(long)]
    bundle: PathBuf,
    /// A prime field (all its elements) or a comma-separated list of values.
    #[arg(long, allow_hyphen_values = true)]
    domain: String,
    /// `RxC` for operators, `N` for elements.
    #[arg(long)]
    shape: Option<String>,
    /// Fixed entries, 1-based: "3,1=0;3,2=0" (or "2=1" for elements).
    #[arg(long)]
    fix: Option<String>,
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum DeformCommand {
    /// Check that K + tK₁ + … + t^N K_N is a formal deformation.
    Check {
        #[arg(long)]
        bundle: PathBuf,
        /// File with {"series": [K₁, K₂, ...]}.
        #[arg(long)]
        series: PathBuf,
        /// Truncation order; missing coefficients are zero.
        #[arg(long)]
        order: usize,
    },
    /// Check the Nijenhuis element `vectors.x`, or list all of them over F_p.
    Nijenhuis {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare Z¹_K with ∂_K of the Nijenhuis elements over F_p.
    Rigidity {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
}

/// What a command leaves behind: stdout text, stderr summary, exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Format(FormatError),
    Input(InputError),
    Core(Error),
    Usage(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn verification_report(e: &Error) -> Option<&Report> {
    match e {
        Error::NotPreLie(r)
        | Error::NotUnit(r)
        | Error::NotRepresentation(r)
        | Error::UnverifiedCocycle(r)
        | Error::UnverifiedOperator(r)
        | Error::UnverifiedNs(r)
        | Error::UnverifiedSeries(r)
        | Error::NotCocycle(r) => Some(r),
        _ => None,
    }
}

fn core_failure(e: &Error, section: Option<&str>) -> (i32, Value) {
    let code = match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Singular | Error::NotAdmissible | Error::NoSolution => 1,
        e if verification_report(e).is_some() => 1,
        _ => 2,
    };
    let mut v = json!({"kind": "Error", "message": e.to_string()});
    if code == 1 {
        v["kind"] = json!("Unverified");
    }
    if let Error::BudgetExceeded { needed, budget } = e {
        v["kind"] = json!("BudgetExceeded");
        v["needed"] = json!(needed.to_string());
        v["budget"] = json!(budget.to_string());
    }
    if let Some(s) = section {
        v["section"] = json!(s);
    }
    if let Some(r) = verification_report(e) {
        v["report"] = report_to_json(r);
    }
    (code, v)
}

impl Failure {
    fn render(&self) -> (i32, Value, String) {
        let (code, v) = match self {
            Failure::Format(FormatError::Io { path, message }) => (2, json!({"kind": "IoError", "path": path, "message": message})),
            Failure::Format(FormatError::Schema { pointer, message }) => {
                (2, json!({"kind": "SchemaError", "pointer": pointer, "message": message}))
            }
            Failure::Format(FormatError::FieldMismatch { first, second, message }) => {
                (2, json!({"kind": "FieldMismatch", "sections": [first, second], "message": message}))
            }
            Failure::Input(InputError::Missing(s)) => (2, json!({"kind": "MissingSection", "section": s, "message": format!("bundle has no {}", s)})),
            Failure::Input(InputError::Invalid { section, error }) => core_failure(error, Some(section)),
            Failure::Core(e) => core_failure(e, None),
            Failure::Usage(m) => (2, json!({"kind": "UsageError", "message": m})),
        };
        let summary = match self {
            Failure::Format(e) => e.to_string(),
            Failure::Input(e) => e.to_string(),
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        };
        (code, json!({ "error": v }), summary)
    }
}

/// Successful command output.
struct Done {
    /// One JSON document, or several lines for `search`.
    lines: Vec<Value>,
    passed: bool,
    summary: String,
}

impl Done {
    fn verdict(v: Value, passed: bool, summary: impl Into<String>) -> Self {
        Done {
            lines: vec![v],
            passed,
            summary: summary.into(),
        }
    }

    fn report(name: &str, r: &Report) -> Self {
        let failed = r.conditions.iter().filter(|c| !c.passed).count();
        let summary = if r.passed() {
            format!("{}: passed ({})", name, plural(r.conditions.len(), "condition"))
        } else {
            format!("{}: failed ({} of {}, {})", name, failed, plural(r.conditions.len(), "condition"), plural(r.violations.len(), "violation"))
        };
        Done::verdict(report_to_json(r), r.passed(), summary)
    }

    fn object(v: Value, summary: impl Into<String>) -> Self {
        Done::verdict(v, true, summary)
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("1 {}", word)
    } else {
        format!("{} {}s", n, word)
    }
}

struct Context {
    field: Option<Field>,
    budget: u128,
}

impl Context {
    fn bundle(&self, path: &Path) -> Result<Bundle, Failure> {
        Ok(parse_bundle(path, self.field)?)
    }
}

fn workers(w: Option<usize>) -> usize {
    w.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())).max(1)
}

/// Runs the tool on `args` (including the program name) with the budget
/// taken from `PRELIE_BUDGET` when set.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let budget = std::env::var(BUDGET_VAR).ok();
    run_with_budget(args, budget.as_deref())
}

pub fn run_with_budget<I, T>(args: I, budget: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let budget = match budget {
        None => Ok(DEFAULT_BUDGET),
        Some(b) => b.trim().parse::<u128>().map_err(|_| Failure::Usage(format!("{} must be a non-negative integer, got '{}'", BUDGET_VAR, b))),
    };
    let result = budget.and_then(|budget| {
        let ctx = Context { field: cli.field, budget };
        dispatch(&ctx, cli.command)
    });
    match result {
        Ok(done) => {
            let mut stdout = String::new();
            for line in &done.lines {
                let text = if done.lines.len() == 1 {
                    serde_json::to_string_pretty(line)
                } else {
                    serde_json::to_string(line)
                };
                stdout.push_str(&text.expect("values serialize"));
                stdout.push('\n');
            }
            Outcome {
                code: if done.passed { 0 } else { 1 },
                stdout,
                stderr: format!("{}\n", done.summary),
            }
        }
        Err(f) => {
            let (code, v, summary) = f.render();
            Outcome {
                code,
                stdout: format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize")),
                stderr: format!("error: {}\n", summary),
            }
        }
    }
}

fn dispatch(ctx: &Context, command: Command) -> Result<Done, Failure> {
    match command {
        Command::Check { kind, bundle } => check(kind, &ctx.bundle(&bundle)?),
        Command::Cohomology { of, degree, bundle } => cohomology_cmd(&ctx.bundle(&bundle)?, of, degree),
        Command::Construct { kind, bundle } => construct(kind, &ctx.bundle(&bundle)?),
        Command::Search(args) => search(ctx, args),
        Command::PolynomialSystem { domain, fix, workers: w } => polynomial_system(ctx, domain, fix, w),
        Command::Deform(d) => deform(ctx, d),
        Command::McCheck { bundle } => check(CheckKind::Mc, &ctx.bundle(&bundle)?),
        Command::DkConsistency { bundle, degree } => dk_consistency(&ctx.bundle(&bundle)?, degree),
    }
}

fn two_readings(name: &str, t: &TwoReadings) -> Done {
    let passed = t.literal.passed();
    let summary = format!(
        "{}: printed conditions {}, re-derived conditions {}",
        name,
        if passed { "pass" } else { "fail" },
        if t.rederived.passed() { "pass" } else { "fail" }
    );
    Done::verdict(
        json!({
            "check": name,
            "passed": passed,
            "literal": report_to_json(&t.literal),
            "rederived": report_to_json(&t.rederived),
        }),
        passed,
        summary,
    )
}

fn check(kind: CheckKind, b: &Bundle) -> Result<Done, Failure> {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let report = match kind {
        CheckKind::Prelie => check_prelie(&b.algebra_section()?.tensor),
        CheckKind::Rep => check_representation(&b.algebra()?, b.actions()?)?,
        CheckKind::Cocycle => check_two_cocycle(&b.algebra()?, b.actions()?, b.cocycle()?)?,
        CheckKind::Reynolds => check_rcw_reynolds(&b.setting()?, b.operator_k()?)?,
        CheckKind::Weighted => check_weighted_reynolds(&b.algebra()?, b.operator_k()?, b.scalar("lambda")?)?,
        CheckKind::DReynolds => check_d_reynolds(&b.algebra()?, b.operator("D")?, b.operator_k()?)?,
        CheckKind::Nijenhuis => check_nijenhuis(&b.algebra()?, b.operator("N")?)?,
        CheckKind::Ns => check_ns_prelie(b.ns()?)?,
        CheckKind::Morphism => check_rcw_morphism(&b.reynolds()?, &b.target()?.reynolds()?, b.operator("phi")?, b.operator("psi")?)?,
        CheckKind::Mc => {
            let h = b.h.clone().unwrap_or_else(|| {
                let (n, m) = (b.algebra.as_ref().map_or(0, |a| a.dim()), b.rep.as_ref().map_or(0, |r| r.dim_v));
                Cochain::zero(b.field, 2, n, m)
            });
            check_maurer_cartan(&b.algebra()?, b.actions()?, &h, b.operator_k()?)?
        }
        CheckKind::TwistedMc => check_twisted_mc(&b.reynolds()?, b.operator("Kp")?)?,
        CheckKind::LinearDeform => check_linear_deformation(&b.reynolds()?, b.operator("K1")?)?,
        CheckKind::FormalDeform => {
            let series = b.series.clone().ok_or_else(|| InputError::Missing("/series".into()))?;
            check_formal_deformation(&DeformationSeries::new(b.reynolds()?, series)?)
        }
        CheckKind::NijenhuisElement => {
            let t = check_nijenhuis_element(&b.reynolds()?, b.vector("x")?)?;
            return Ok(two_readings(&name, &t));
        }
    };
    Ok(Done::report(&name, &report))
}

fn cohomology_cmd(b: &Bundle, of: Of, degree: usize) -> Result<Done, Failure> {
    let (v, r) = match of {
        Of::Algebra => {
            let r = cohomology(&b.algebra()?, b.actions()?, degree)?;
            (format::cohomology_to_json(&r), r)
        }
        Of::Operator => {
            let r = cohomology_k(&b.reynolds()?, degree)?;
            (k_cohomology_to_json(&r), r.report)
        }
    };
    let summary = format!("H^{}: dim Z = {}, dim B = {}, dim H = {}", degree, r.dim_z, r.dim_b, r.dim_h);
    Ok(Done::verdict(v, r.squares_to_zero, summary))
}

fn bundle_json(d: &prelie_core::ReynoldsData) -> Value {
    let s = d.setting();
    json!({
        "field": s.field().to_string(),
        "algebra": algebra_to_json(s.algebra()),
        "rep": actions_to_json(s.rep().actions()),
        "H": cochain_to_json(s.cocycle()),
        "K": matrix_to_json(d.operator()),
    })
}

fn construct(kind: ConstructKind, b: &Bundle) -> Result<Done, Failure> {
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let nijenhuis = || -> Result<NijenhuisOperator, Failure> { Ok(NijenhuisOperator::new(b.algebra()?, b.operator("N")?.clone())?) };
    let v = match kind {
        ConstructKind::Semidirect => algebra_to_json(&semidirect(&b.setting()?)?.algebra),
        ConstructKind::Induced => algebra_to_json(&induced_product(&b.reynolds()?)?),
        ConstructKind::Star => algebra_to_json(&star_product(&b.algebra()?, b.operator_k()?, b.scalar("lambda")?)?),
        ConstructKind::Gauge => {
            let g = gauge_transform(&b.reynolds()?, &Cochain::from_matrix(b.operator("B")?))?;
            json!({"K": matrix_to_json(g.operator.operator()), "isomorphism": matrix_to_json(&g.isomorphism)})
        }
        ConstructKind::Shift => {
            let d = shift_operator(&b.reynolds()?, &Cochain::from_matrix(b.operator("h")?))?;
            json!({"H": cochain_to_json(d.setting().cocycle()), "K": matrix_to_json(d.operator())})
        }
        ConstructKind::NsFromNijenhuis => ns_to_json(ns_from_nijenhuis(&nijenhuis()?)?.tensors()),
        ConstructKind::NsFromReynolds => ns_to_json(ns_from_reynolds(&b.reynolds()?)?.tensors()),
        ConstructKind::ReynoldsFromNs => {
            let ns = NsPreLie::new(b.ns()?.clone()).map_err(|error| InputError::Invalid { section: "/nsprelie".into(), error })?;
            bundle_json(&reynolds_from_ns(&ns)?)
        }
        ConstructKind::CompatibleNs => ns_to_json(compatible_ns_from_invertible(&b.reynolds()?)?.tensors()),
        ConstructKind::DeformedProduct => algebra_to_json(&deformed_product(&nijenhuis()?)?),
    };
    Ok(Done::object(v, format!("construct {}: done", name)))
}

/// Parses `"r,c=v;..."` (or `"i=v;..."` for vectors), 1-based, into flat
/// row-major positions.
fn parse_fix(text: &str, unknown: Unknown, field: Field) -> Result<Vec<(usize, Scalar)>, Failure> {
    let mut out = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Failure::Usage(format!("cannot read fixed entry '{}'", part));
        let (pos, val) = part.split_once('=').ok_or_else(bad)?;
        let idx: Vec<usize> = pos.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let flat = match (unknown, idx.as_slice()) {
            (Unknown::Matrix { rows, cols }, [r, c]) if (1..=rows).contains(r) && (1..=cols).contains(c) => (r - 1) * cols + (c - 1),
            (Unknown::Vector { dim }, [i]) if (1..=dim).contains(i) => i - 1,
            _ => return Err(bad()),
        };
        let s = field.parse(val).map_err(|e| Failure::Usage(format!("fixed entry '{}': {}", part, e)))?;
        out.push((flat, s));
    }
    Ok(out)
}

fn shape_of(u: Unknown) -> String {
    match u {
        Unknown::Matrix { rows, cols } => format!("{}x{}", rows, cols),
        Unknown::Vector { dim } => format!("{}", dim),
    }
}

fn search(ctx: &Context, a: SearchArgs) -> Result<Done, Failure> {
    let domain_field = a.domain.parse::<Field>().ok().filter(|f| f.is_finite());
    let field = match (ctx.field, domain_field) {
        (Some(f), Some(d)) if f != d => {
            return Err(Failure::Usage(format!("--field {} conflicts with --domain {}", f, d)));
        }
        (Some(f), _) => Some(f),
        (None, d) => d,
    };
    let b = parse_bundle(&a.bundle, field)?;
    let inputs = PredicateInputs {
        algebra: b.algebra.as_ref().map(|_| b.algebra()).transpose()?,
        setting: b.rep.as_ref().map(|_| b.setting()).transpose()?,
        operator: b.k.clone(),
        weight: b.scalars.get("lambda").cloned(),
    };
    let pred = predicate(&a.predicate, &inputs).map_err(|e| match e {
        Error::Parse(m) => Failure::Usage(m),
        other => Failure::Core(other),
    })?;
    let unknown = pred.unknown();
    if let Some(s) = &a.shape {
        if s.trim() != shape_of(unknown) {
            return Err(Failure::Usage(format!("--shape {} does not match the unknown of {}, which is {}", s, a.predicate, shape_of(unknown))));
        }
    }
    let domain = match domain_field {
        Some(f) => f.elements().expect("finite field"),
        None => a
            .domain
            .split(',')
            .map(|s| b.field.parse(s).map_err(|e| Failure::Usage(format!("--domain: {}", e))))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let fixed = match &a.fix {
        Some(t) => parse_fix(t, unknown, b.field)?,
        None => Vec::new(),
    };
    let spec = SearchSpec::new(pred, domain, fixed)?;
    let result = parallel::search(&spec, ctx.budget, workers(a.workers))?;
    let mut lines: Vec<Value> = result
        .solutions
        .iter()
        .map(|s| match unknown {
            Unknown::Matrix { .. } => json!({"solution": matrix_to_json(&spec.as_matrix(s))}),
            Unknown::Vector { .. } => json!({"solution": vector_to_json(s)}),
        })
        .collect();
    lines.push(json!({"summary": {
        "predicate": result.predicate,
        "field": b.field.to_string(),
        "shape": shape_of(unknown),
        "candidates": result.candidates.to_string(),
        "solutions": result.solutions.len(),
    }}));
    let summary = format!("search {}: {} solutions among {} candidates", result.predicate, result.solutions.len(), result.candidates);
    Ok(Done { lines, passed: true, summary })
}

fn polynomial_system(ctx: &Context, domain: Field, fix: Option<String>, w: Option<usize>) -> Result<Done, Failure> {
    let fixed = match fix {
        Some(t) => parse_fix(&t, Unknown::Matrix { rows: 3, cols: 3 }, domain)?,
        None => Vec::new(),
    };
    let sweep = parallel::polynomial_sweep(domain, fixed, ctx.budget, workers(w))?;
    let passed = sweep.report.passed();
    let v = json!({
        "field": domain.to_string(),
        "candidates": sweep.candidates.to_string(),
        "solutions": sweep.solutions.to_string(),
        "disagreements": sweep.disagreements.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        "report": report_to_json(&sweep.report),
    });
    let summary = format!("polynomial system over {}: {} candidates, {} solutions, {} disagreements", domain, sweep.candidates, sweep.solutions, sweep.disagreements.len());
    Ok(Done::verdict(v, passed, summary))
}

fn read_series(path: &Path, field: Field) -> Result<Vec<Matrix>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let v: Value = serde_json::from_str(&text).map_err(|e| FormatError::schema("", format!("invalid JSON: {}", e)))?;
    let obj = format::object(&v, "")?;
    if let Some(k) = obj.keys().find(|k| !["series", "comment"].contains(&k.as_str())) {
        return Err(FormatError::schema(&format::child("", k), "unknown key").into());
    }
    let s = obj.get("series").ok_or_else(|| FormatError::schema("/series", "missing"))?;
    Ok(format::array(s, "/series")?
        .iter()
        .enumerate()
        .map(|(i, m)| format::matrix_from_json(m, &format::child("/series", i), field))
        .collect::<Result<Vec<_>, _>>()?)
}

fn deform(ctx: &Context, d: DeformCommand) -> Result<Done, Failure> {
    match d {
        DeformCommand::Check { bundle, series, order } => {
            let b = ctx.bundle(&bundle)?;
            let data = b.reynolds()?;
            let mut coeffs = read_series(&series, b.field)?;
            if coeffs.len() > order {
                return Err(Failure::Usage(format!("series has {} coefficients, more than --order {}", coeffs.len(), order)));
            }
            while coeffs.len() < order {
                coeffs.push(Matrix::zeros(b.field, data.dim_g(), data.dim_v()));
            }
            let r = check_formal_deformation(&DeformationSeries::new(data, coeffs)?);
            Ok(Done::report("formal-deform", &r))
        }
        DeformCommand::Nijenhuis { bundle, enumerate, workers: w } => {
            let b = ctx.bundle(&bundle)?;
            let data = b.reynolds()?;
            if !enumerate {
                return Ok(two_readings("nijenhuis-element", &check_nijenhuis_element(&data, b.vector("x")?)?));
            }
            let elems = parallel::nijenhuis_elements(&data, ctx.budget, workers(w))?;
            let summary = format!("{} Nijenhuis elements over {}", elems.len(), b.field);
            Ok(Done::object(
                json!({
                    "field": b.field.to_string(),
                    "count": elems.len(),
                    "elements": elems.iter().map(|x| vector_to_json(x)).collect::<Vec<_>>(),
                }),
                summary,
            ))
        }
        DeformCommand::Rigidity { bundle, workers: w } => {
            let b = ctx.bundle(&bundle)?;
            let data = b.reynolds()?;
            let elems = parallel::nijenhuis_elements(&data, ctx.budget, workers(w))?;
            let r = rigidity_from_elements(&data, elems)?;
            let summary = format!(
                "dim Z¹ = {}, {}, {}: condition {}",
                r.cocycle_dim,
                plural(r.nijenhuis.len(), "Nijenhuis element"),
                plural(r.image.len(), "distinct image"),
                if r.condition_holds { "holds" } else { "fails" }
            );
            Ok(Done::verdict(
                json!({
                    "field": b.field.to_string(),
                    "cocycleDim": r.cocycle_dim,
                    "nijenhuis": r.nijenhuis.iter().map(|x| vector_to_json(x)).collect::<Vec<_>>(),
                    "image": r.image.iter().map(matrix_to_json).collect::<Vec<_>>(),
                    "imageOutsideCocycles": r.image_outside_cocycles,
                    "conditionHolds": r.condition_holds,
                }),
                r.condition_holds,
                summary,
            ))
        }
    }
}

fn dk_consistency(b: &Bundle, degree: usize) -> Result<Done, Failure> {
    if degree == 0 {
        return Err(Failure::Usage("--degree must be at least 1".into()));
    }
    let data = b.reynolds()?;
    let (field, n, m) = (b.field, data.dim_v(), data.dim_g());
    let len = Cochain::space_dim(degree, n, m);
    let mut worst = field.zero();
    let mut worst_key = Field::Rational.zero();
    for idx in 0..len {
        let f = Cochain::basis_element(field, degree, n, m, idx);
        let lhs = d_k(&data, &f)?;
        let rhs = coboundary_k(&data, &f)?.scale(&sign(field, degree - 1));
        for s in lhs.sub(&rhs)?.values() {
            let key = abs(&s.lift());
            if key.as_rational() > worst_key.as_rational() {
                worst_key = key;
                worst = s.clone();
            }
        }
    }
    let passed = worst.is_zero();
    let summary = format!("d_K vs ∂_K in degree {} on {} basis cochains: max residual {}", degree, len, worst);
    Ok(Done::verdict(
        json!({"degree": degree, "cochains": len, "maxResidual": worst.to_string()}),
        passed,
        summary,
    ))
}
