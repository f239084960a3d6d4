//! `curvlie`: curvature reports, the `W⁺ = 0` classification and the
//! acceptance suite from the command line.
//!
//! Exit codes: 0 success, 2 input error, 3 verification failure, 4 solver incomplete.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvlie::curvature::{connection_koszul, Connection, CurvatureError, Orientation};
use curvlie::exactmath::RatFunc;
use curvlie::frames::{FrameError, InnerProduct, InnerProductJson, OrthoFrameAlgebra};
use curvlie::liealg::{catalog, center, derived_series, AlgebraJson, LieAlgebra, CATALOG_NAMES};
use curvlie::report::{classify, curvature_report, lee_forms_report, ClassifyOptions, ReportError};
use curvlie::solver::{Family, SolveOptions};
use curvlie::suite::{koszul_sign_flipped, run_suite, CriterionStatus, SuiteConfig};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("solver incomplete: {0}")]
    Incomplete(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Incomplete(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> CliError {
        match e {
            ReportError::Curvature(CurvatureError::RouteMismatch(..)) => CliError::Verification(e.to_string()),
            ReportError::NotLie(_) => CliError::Input(format!("not a Lie algebra: {e}")),
            ReportError::Frame(FrameError::NotPositiveDefinite(..)) => {
                CliError::Input(format!("metric is not positive definite: {e}"))
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "curvlie", version, about = "Exact curvature of left-invariant metrics on Lie groups")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; CSV is only available for numeric results.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Catalog name or path to an algebra JSON file.
    #[arg(long)]
    algebra: String,
    /// Parameter assignment `name=value`, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// `identity`, `g_k` (diag(k², 1, …, 1)) or path to a metric JSON file.
    #[arg(long, default_value = "identity")]
    metric: String,
    /// +1 or -1.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    orientation: String,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Solver step budget.
    #[arg(long, env = "CURVLIE_BUDGET")]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Connection, curvature, Ricci and Weyl halves of one metric Lie algebra.
    Curvature {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, hide = true)]
        mutate_koszul_sign: bool,
    },
    /// Solve W+ = 0 on the reduced frames and classify the solutions.
    ClassifyAsd {
        /// h3_ext, g2+g2 or g4_2; all three when omitted.
        #[arg(long)]
        family: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Include wall-clock times in the report.
        #[arg(long)]
        timing: bool,
    },
    /// List catalog algebras, or describe one.
    Catalog {
        /// Catalog name to describe; lists all names when omitted.
        #[arg(long)]
        algebra: Option<String>,
        /// Parameter assignment `name=value`, repeatable.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
    /// Run the acceptance suite.
    Verify {
        #[command(flatten)]
        budget: BudgetArgs,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
        /// Print the details of every criterion.
        #[arg(long)]
        verbose: bool,
        /// Append wall-clock times to each line.
        #[arg(long)]
        timing: bool,
        #[arg(long, hide = true)]
        mutate_koszul_sign: bool,
    },
    /// Lee forms and integrability of the three standard 2-forms.
    LeeForms {
        #[command(flatten)]
        algebra: AlgebraArgs,
    },
}

fn parse_params(raw: &[String]) -> Result<BTreeMap<String, RatFunc>, CliError> {
    let mut out = BTreeMap::new();
    for p in raw {
        let (name, value) =
            p.split_once('=').ok_or_else(|| CliError::Input(format!("parameter {p:?} is not NAME=VALUE")))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(CliError::Input(format!("bad parameter name {name:?}")));
        }
        let v: RatFunc =
            value.parse().map_err(|e| CliError::Input(format!("parameter {name}: {e}")))?;
        if out.insert(name.to_string(), v).is_some() {
            return Err(CliError::Input(format!("parameter {name} given twice")));
        }
    }
    Ok(out)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("invalid JSON in {what} {}: {e}", path.display())))
}

fn substitute_all(x: &RatFunc, params: &BTreeMap<String, RatFunc>) -> Result<RatFunc, CliError> {
    x.substitute(params).map_err(|e| CliError::Input(e.to_string()))
}

/// Algebra, metric and the parameter names either of them declares.
struct Job {
    algebra: LieAlgebra,
    metric: InnerProduct,
    orientation: Orientation,
    params: BTreeMap<String, RatFunc>,
}

fn load_algebra(name: &str, params: &BTreeMap<String, RatFunc>) -> Result<(LieAlgebra, Vec<String>), CliError> {
    if CATALOG_NAMES.contains(&name) {
        let structural: BTreeMap<String, RatFunc> =
            params.iter().filter(|(k, _)| k.as_str() == "n").map(|(k, v)| (k.clone(), v.clone())).collect();
        let symbolic = catalog(name, &structural).map_err(|e| CliError::Input(e.to_string()))?;
        let mut declared = symbolic.params().to_vec();
        if name == "a_n" {
            declared.push("n".into());
        }
        let l = catalog(name, params).map_err(|e| CliError::Input(e.to_string()))?;
        return Ok((l, declared));
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "{name:?} is neither a catalog name ({}) nor a readable file",
            CATALOG_NAMES.join(", ")
        )));
    }
    let j: AlgebraJson = read_json(path, "algebra")?;
    let l = LieAlgebra::from_json(&j).map_err(|e| CliError::Input(e.to_string()))?;
    let declared = l.params().to_vec();
    let l = l.substitute(params).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((l, declared))
}

fn load_job(a: &AlgebraArgs) -> Result<Job, CliError> {
    let params = parse_params(&a.params)?;
    let (algebra, mut declared) = load_algebra(&a.algebra, &params)?;
    let n = algebra.dim();
    let metric = match a.metric.as_str() {
        "identity" => InnerProduct::identity(n),
        "g_k" => {
            declared.push("k".into());
            let k = params.get("k").cloned().unwrap_or_else(|| RatFunc::var("k"));
            if k.is_zero() {
                return Err(CliError::Input("metric is not positive definite: k = 0".into()));
            }
            InnerProduct::g_k(n, k)
        }
        path => {
            let j: InnerProductJson = read_json(Path::new(path), "metric")?;
            let raw = InnerProduct::from_json(&j).map_err(|e| CliError::Input(e.to_string()))?;
            for x in raw.gram().entries() {
                declared.extend(x.vars());
            }
            let rows: Vec<Vec<RatFunc>> = raw
                .gram()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| substitute_all(x, &params)).collect())
                .collect::<Result<_, _>>()?;
            let j = InnerProductJson::Matrix { matrix: rows };
            InnerProduct::from_json(&j).map_err(|e| CliError::Input(format!("metric: {e}")))?
        }
    };
    if metric.dim() != n {
        return Err(CliError::Input(format!("metric has dimension {}, algebra has dimension {n}", metric.dim())));
    }
    if let Some(unknown) = params.keys().find(|k| !declared.contains(k)) {
        declared.sort();
        declared.dedup();
        return Err(CliError::Input(format!("parameter {unknown} is not declared by the algebra or metric (declared: {declared:?})")));
    }
    let orientation = match a.orientation.as_str() {
        "+1" | "1" => Orientation::Plus,
        "-1" => Orientation::Minus,
        other => return Err(CliError::Input(format!("orientation must be +1 or -1, got {other:?}"))),
    };
    Ok(Job { algebra, metric, orientation, params })
}

fn json_string<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_string<R: AsRef<[String]>>(header: &[&str], rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Io(std::io::Error::other(e));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r.as_ref()).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn koszul_route(mutate: bool) -> fn(&OrthoFrameAlgebra) -> Connection {
    if mutate {
        koszul_sign_flipped
    } else {
        connection_koszul
    }
}

fn run_curvature(cli: &Cli, a: &AlgebraArgs, mutate: bool) -> Result<(), CliError> {
    let job = load_job(a)?;
    let report = curvature_report(&job.algebra, &job.metric, job.orientation, job.params, koszul_route(mutate))?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_string(&report),
        Format::Csv => {
            let rows = report.csv_records().ok_or_else(|| {
                CliError::Input("CSV output needs a numeric specialization; use --param or --format json".into())
            })?;
            csv_string(&["quantity", "i", "j", "x", "y", "value"], &rows)?
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn run_lee_forms(cli: &Cli, a: &AlgebraArgs) -> Result<(), CliError> {
    let job = load_job(a)?;
    let report = lee_forms_report(&job.algebra, &job.metric, job.orientation, job.params)?;
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_string(&report),
        Format::Csv => {
            let mut rows: Vec<[String; 5]> = Vec::new();
            for f in &report.forms {
                for (i, t) in f.theta.iter().enumerate() {
                    let v = t.constant_value().ok_or_else(|| {
                        CliError::Input("CSV output needs a numeric specialization; use --param or --format json".into())
                    })?;
                    rows.push([f.two_form.clone(), (i + 1).to_string(), v.to_string(), f.d_theta_zero.to_string(), f.integrable.to_string()]);
                }
            }
            csv_string(&["two_form", "component", "theta", "d_theta_zero", "integrable"], &rows)?
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn run_classify(cli: &Cli, family: Option<&str>, budget: Option<u64>, timing: bool) -> Result<(), CliError> {
    if cli.format == Some(Format::Csv) {
        return Err(CliError::Input("classification results are symbolic; only JSON output is available".into()));
    }
    let families = match family {
        Some(f) => vec![f.parse::<Family>().map_err(|e| CliError::Input(e.to_string()))?],
        None => Family::ALL.to_vec(),
    };
    let mut solve = SolveOptions::default();
    if let Some(b) = budget {
        solve.budget = b;
        solve.basis_budget = solve.basis_budget.min(b);
    }
    let opts = ClassifyOptions { solve, timing, ..ClassifyOptions::default() };
    let report = classify(&families, &opts)?;
    emit(cli.out.as_deref(), &json_string(&report))?;
    if report.incomplete() {
        return Err(CliError::Incomplete("solver budget exhausted; partial report written".into()));
    }
    if !report.as_expected() {
        let bad: Vec<String> =
            report.families.iter().filter(|f| !f.as_expected).map(|f| f.family.to_string()).collect();
        return Err(CliError::Verification(format!("unexpected classification for {}", bad.join(", "))));
    }
    Ok(())
}

fn run_catalog(cli: &Cli, algebra: Option<&str>, raw: &[String]) -> Result<(), CliError> {
    if cli.format == Some(Format::Csv) {
        return Err(CliError::Input("catalog output is JSON only".into()));
    }
    let params = parse_params(raw)?;
    let value = match algebra {
        None => {
            let mut list = Vec::new();
            for name in CATALOG_NAMES {
                let p: BTreeMap<String, RatFunc> =
                    if *name == "a_n" { [("n".to_string(), RatFunc::int(4))].into() } else { BTreeMap::new() };
                let l = catalog(name, &p).map_err(|e| CliError::Input(e.to_string()))?;
                let dim = if *name == "a_n" { serde_json::Value::from("n") } else { l.dim().into() };
                let mut declared = l.params().to_vec();
                if *name == "a_n" {
                    declared = vec!["n".into()];
                }
                list.push(serde_json::json!({ "name": name, "dim": dim, "params": declared }));
            }
            serde_json::Value::Array(list)
        }
        Some(name) => {
            let (l, declared) = load_algebra(name, &params)?;
            if let Some(unknown) = params.keys().find(|k| !declared.contains(k)) {
                return Err(CliError::Input(format!("parameter {unknown} is not declared by {name}")));
            }
            let jacobi = l.jacobi_residual().len();
            let series = derived_series(&l).ok().map(|d| d.dims);
            let centre = center(&l).ok().map(|c| c.len());
            serde_json::json!({
                "name": name,
                "algebra": l.to_json(),
                "jacobi_violations": jacobi,
                "is_lie": jacobi == 0,
                "derived_series_dims": series,
                "center_dim": centre,
            })
        }
    };
    emit(cli.out.as_deref(), &json_string(&value))
}

fn run_verify(
    cli: &Cli,
    budget: Option<u64>,
    only: Option<Vec<u8>>,
    verbose: bool,
    timing: bool,
    mutate: bool,
) -> Result<(), CliError> {
    let cfg = SuiteConfig { koszul: koszul_route(mutate), budget, only, ..SuiteConfig::default() };
    let report = run_suite(&cfg);
    let text = match cli.format {
        None => {
            let mut s = String::new();
            for item in &report.items {
                s.push_str(&if timing { item.line() } else { item.summary() });
                s.push('\n');
                if verbose || item.status != CriterionStatus::Pass {
                    for d in &item.details {
                        s.push_str(&format!("       {d}\n"));
                    }
                }
            }
            s
        }
        Some(Format::Json) => json_string(&report),
        Some(Format::Csv) => {
            let rows: Vec<[String; 3]> = report
                .items
                .iter()
                .map(|i| [i.id.to_string(), i.status.to_string(), i.title.to_string()])
                .collect();
            csv_string(&["id", "status", "title"], &rows)?
        }
    };
    emit(cli.out.as_deref(), &text)?;
    let failed = report.failed();
    if !failed.is_empty() {
        return Err(CliError::Verification(format!("criteria {failed:?} failed")));
    }
    let incomplete = report.incomplete();
    if !incomplete.is_empty() {
        return Err(CliError::Incomplete(format!("criteria {incomplete:?} incomplete")));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Curvature { algebra, mutate_koszul_sign } => run_curvature(cli, algebra, *mutate_koszul_sign),
        Command::LeeForms { algebra } => run_lee_forms(cli, algebra),
        Command::ClassifyAsd { family, budget, timing } => run_classify(cli, family.as_deref(), budget.budget, *timing),
        Command::Catalog { algebra, params } => run_catalog(cli, algebra.as_deref(), params),
        Command::Verify { budget, only, verbose, timing, mutate_koszul_sign } => {
            run_verify(cli, budget.budget, only.clone(), *verbose, *timing, *mutate_koszul_sign)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("curvlie: {e}");
            ExitCode::from(e.code())
        }
    }
}
