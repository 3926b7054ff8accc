//! `lieext`: Jacobi checks, second cohomology, cocycle verification and
//! parameter scans for graded Lie algebras.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lieext_core::algebra::{check_jacobi_symbolic, check_jacobi_window};
use lieext_core::cocycle::{find_known, is_coboundary, verify_cocycle, DegreeSystem, VerifyReport};
use lieext_core::dsl::{load_file, PresetRegistry};
use lieext_core::{
    h2, Algebra, AlgebraSpec, CocycleAssignment, CocycleError, H2Report, Parameters, Rational, Window,
};
use rayon::prelude::*;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSTABLE: u8 = 3;

#[derive(Parser)]
#[command(name = "lieext", version, about = "Exact second cohomology of graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity, on a window or symbolically.
    Jacobi(JacobiArgs),
    /// Compute degree-d second cohomology on a window.
    H2(H2Args),
    /// Compare computed and predicted dimensions over a (lambda, mu) grid.
    Scan(ScanArgs),
    /// Verify a named or file-supplied 2-cocycle.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AlgebraArgs {
    /// Preset name or path to a `.lie` file.
    #[arg(long, default_value = "svir")]
    algebra: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<Rational>,
    /// Any other parameter, as NAME=VALUE.
    #[arg(long = "param", value_name = "NAME=VALUE", allow_hyphen_values = true)]
    params: Vec<String>,
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long, default_value_t = 12)]
    window: u32,
    #[arg(long, default_value_t = 3)]
    margin: u32,
}

#[derive(Args)]
struct JacobiArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Check the bracket polynomials for all parameter values.
    #[arg(long)]
    symbolic: bool,
    #[arg(long, default_value_t = 8)]
    window: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct H2Args {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    degree: Rational,
    /// Windows N, N+2, ... compared for stabilization.
    #[arg(long, default_value_t = 3)]
    steps: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
    /// Write the constraint matrix in coordinate text format.
    #[arg(long, value_name = "PATH")]
    export_matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Md,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value = "svir")]
    algebra: String,
    /// Comma-separated lambda values.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    lambdas: Vec<Rational>,
    /// Comma-separated mu values.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    mus: Vec<Rational>,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    degree: Rational,
    #[arg(long, default_value_t = 3)]
    steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// A registry cocycle name.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    cocycle: Option<String>,
    /// A JSON map "F:i,G:j" -> "p/q".
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    window: WindowArgs,
}

/// An error that maps to the usage exit code.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Jacobi(args) => jacobi(args),
        Command::H2(args) => cmd_h2(args),
        Command::Scan(args) => scan(args),
        Command::Verify(args) => verify(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn preset_dirs() -> Vec<PathBuf> {
    std::env::var_os("LIEEXT_PRESET_PATH")
        .map(|v| std::env::split_paths(&v).collect())
        .unwrap_or_default()
}

fn load_spec(reference: &str) -> Result<AlgebraSpec> {
    let path = Path::new(reference);
    if reference.ends_with(".lie") || path.components().count() > 1 {
        return Ok(load_file(path)?);
    }
    Ok(PresetRegistry::with_dirs(preset_dirs()).spec(reference)?)
}

impl AlgebraArgs {
    fn parameters(&self) -> Result<Parameters> {
        let mut params = Parameters::new();
        if let Some(l) = &self.lambda {
            params.insert("lambda", l.clone());
        }
        if let Some(m) = &self.mu {
            params.insert("mu", m.clone());
        }
        for item in &self.params {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| anyhow!("--param expects NAME=VALUE, got `{item}`"))?;
            let value: Rational = value.parse().with_context(|| format!("parameter `{name}`"))?;
            params.insert(name.trim(), value);
        }
        Ok(params)
    }

    fn bind(&self) -> Result<Algebra> {
        Ok(Algebra::new(load_spec(&self.algebra)?, self.parameters()?)?)
    }
}

impl WindowArgs {
    fn window(&self) -> Result<Window> {
        Ok(Window::new(self.window, self.margin)?)
    }
}

fn jacobi(args: JacobiArgs) -> Result<u8, Usage> {
    if args.symbolic {
        let spec = load_spec(&args.algebra.algebra)?;
        let params = args.algebra.parameters()?;
        if !params.values().is_empty() {
            Algebra::new(spec.clone(), params)?;
        }
        let report = check_jacobi_symbolic(&spec);
        if report.passed() {
            println!("pass: {} family triples, symbolic", report.triples_checked);
            return Ok(0);
        }
        println!("fail: {} nonzero residuals", report.residuals.len());
        for r in &report.residuals {
            let [a, b, c] = r.families.map(|f| spec.family(f).name.clone());
            println!("  [{a}, {b}, {c}] -> {}: {}", spec.family(r.output).name, r.residual);
        }
        return Ok(EXIT_FAIL);
    }
    let alg = args.algebra.bind()?;
    let report = check_jacobi_window(&alg, i64::from(args.window));
    match &report.witness {
        None => {
            println!("pass: {} triples on window {}", report.triples_checked, args.window);
            Ok(0)
        }
        Some(w) => {
            let residual = w
                .residual
                .terms()
                .map(|(x, c)| format!("{c}*{}", alg.label(*x)))
                .collect::<Vec<_>>()
                .join(" + ");
            println!("fail: jacobi({}) = {residual}", w.triple.map(|x| alg.label(x)).join(", "));
            Ok(EXIT_FAIL)
        }
    }
}

fn exit_code(reports: &[H2Report]) -> u8 {
    if reports.iter().any(|r| !r.stabilized) {
        EXIT_UNSTABLE
    } else if reports.iter().any(|r| r.agree == Some(false)) {
        EXIT_FAIL
    } else {
        0
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

fn report_text(r: &H2Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra: {} {}", r.algebra, r.parameters);
    let _ = writeln!(out, "window: {} margin: {} degree: {}", r.window, r.margin, r.degree);
    let _ = writeln!(out, "cocycle_dim: {}", r.cocycle_dim);
    let _ = writeln!(out, "coboundary_dim: {}", r.coboundary_dim);
    let _ = writeln!(out, "h2_dim: {}", r.h2_dim);
    let _ = writeln!(out, "core_h2_dim: {}", r.core_h2_dim);
    let widths: Vec<String> = r.stabilization.iter().map(|d| format!("N={}:{}", d.window, d.core_h2_dim)).collect();
    let _ = writeln!(out, "stabilized: {} ({})", r.stabilized, widths.join(" "));
    let matched: Vec<String> =
        r.matched_known.iter().map(|m| format!("{}={}", m.name, if m.matched { "yes" } else { "no" })).collect();
    let _ = writeln!(out, "matched_known: {}", matched.join(" "));
    let _ = writeln!(out, "predicted_dim: {}", opt(&r.predicted_dim));
    let _ = write!(out, "agree: {}", opt(&r.agree));
    out
}

fn disagreement(r: &H2Report) -> Option<String> {
    match (r.agree, r.predicted_dim) {
        (Some(false), Some(p)) => Some(format!(
            "disagreement at {}: computed core_h2_dim {} but predicted {p}",
            r.parameters, r.core_h2_dim
        )),
        _ => None,
    }
}

fn cmd_h2(args: H2Args) -> Result<u8, Usage> {
    let alg = args.algebra.bind()?;
    let window = args.window.window()?;
    let report = h2(&alg, window, &args.degree, args.steps)?;
    if let Some(path) = &args.export_matrix {
        let system = DegreeSystem::build(&alg, window, &args.degree);
        std::fs::write(path, system.constraints.matrix.to_coordinate_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match args.format {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        ReportFormat::Text => println!("{}", report_text(&report)),
    }
    if let Some(msg) = disagreement(&report) {
        eprintln!("{msg}");
    }
    Ok(exit_code(std::slice::from_ref(&report)))
}

fn scan(args: ScanArgs) -> Result<u8, Usage> {
    let spec = load_spec(&args.algebra)?;
    let window = args.window.window()?;
    let points: Vec<(Rational, Rational)> = args
        .lambdas
        .iter()
        .flat_map(|l| args.mus.iter().map(move |m| (l.clone(), m.clone())))
        .collect();
    let mut reports = points
        .par_iter()
        .map(|(l, m)| {
            let alg = Algebra::new(spec.clone(), Parameters::lambda_mu(l.clone(), m.clone()))?;
            Ok(h2(&alg, window, &args.degree, args.steps)?)
        })
        .collect::<Result<Vec<H2Report>>>()?;
    reports.sort_by(|a, b| (&a.lambda, &a.mu).cmp(&(&b.lambda, &b.mu)));
    print!("{}", table(&reports, args.format)?);
    for msg in reports.iter().filter_map(disagreement) {
        eprintln!("{msg}");
    }
    Ok(exit_code(&reports))
}

fn table(reports: &[H2Report], format: TableFormat) -> Result<String> {
    let header = ["lambda", "mu", "window", "core_h2_dim", "predicted_dim", "agree", "matched"];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                opt(&r.lambda),
                opt(&r.mu),
                r.window.to_string(),
                r.core_h2_dim.to_string(),
                opt(&r.predicted_dim),
                opt(&r.agree),
                r.matched_names().join(";"),
            ]
        })
        .collect();
    let mut out = String::new();
    match format {
        TableFormat::Json => out = serde_json::to_string_pretty(reports)? + "\n",
        TableFormat::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for row in &rows {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        TableFormat::Md => {
            writeln!(out, "| {} |", header.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(header.len()))?;
            for row in &rows {
                writeln!(out, "| {} |", row.join(" | "))?;
            }
        }
    }
    Ok(out)
}

fn print_failure(alg: &Algebra, report: &VerifyReport) {
    if let Some(w) = &report.witness {
        println!(
            "fail: cocycle identity on ({}) has residual {}",
            w.triple.map(|x| alg.label(x)).join(", "),
            w.residual
        );
    }
}

fn verify(args: VerifyArgs) -> Result<u8, Usage> {
    let alg = args.algebra.bind()?;
    let window = args.window.window()?;
    let n = window.half_width();
    let psi = match (&args.cocycle, &args.file) {
        (Some(name), _) => {
            let known = find_known(name).ok_or_else(|| anyhow!("unknown cocycle `{name}`"))?;
            known.instantiate(&alg, n)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let json: serde_json::Value = serde_json::from_str(&text)?;
            CocycleAssignment::from_json(alg.spec(), &json)?
        }
        (None, None) => return Err(anyhow!("one of --cocycle or --file is required").into()),
    };
    let report = verify_cocycle(&alg, n, &psi);
    if !report.passed() {
        print_failure(&alg, &report);
        return Ok(EXIT_FAIL);
    }
    let mut nontrivial = false;
    for degree in psi.degrees(&alg) {
        let part = psi.restrict_to_degree(&alg, &degree);
        nontrivial |= !is_coboundary(&alg, &window, &part).map_err(|e: CocycleError| anyhow!(e))?;
    }
    println!("pass: {} triples on window {n}", report.triples_checked);
    println!("nontrivial: {}", if nontrivial { "yes" } else { "no" });
    Ok(0)
}
