//! The `svlie` command line: argument parsing, job validation and dispatch.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (a witness is
//! printed), 2 for usage, parse or input errors.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{bracket, center_in_window, check_jacobi, AlgebraParams, HalfInt, Sector, Window};
use crate::cohomology::{solve_h1, verify_invariants_are_central, verify_skew_image_lemma, Module, SolverConfig};
use crate::derivation::{is_derivation, DerivationTable};
use crate::error::{Result, SvlieError};
use crate::literal::{parse_element, parse_tensor2};
use crate::rational::parse_rational;
use crate::suite::{run_all, run_criterion, SuiteConfig};
use crate::tensor::{check_cojacobi_identity, coboundary, is_skew, mybe_witness, ybe_c, Tensor2};

/// Largest accepted `|dd|` window bound.
pub const WINDOW_GUARD: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "svlie", version, about = "Exact computations in the deformative Schrödinger-Virasoro algebras")]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// Sector offset of the Y generators: 0 or 1/2.
    #[arg(long = "s")]
    pub s: String,
    /// Deformation parameter, an exact rational such as -5/3.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Keep the central element c.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub central: bool,
}

impl AlgebraArgs {
    pub fn params(&self) -> Result<AlgebraParams> {
        let s = Sector::parse(&self.s)?;
        let lambda = parse_rational(&self.lambda)
            .ok_or_else(|| SvlieError::InvalidParams(format!("lambda must be an exact rational, got {:?}", self.lambda)))?;
        Ok(AlgebraParams::new(s, lambda, self.central))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Algebra,
    TensorSquare,
    CenterTensor,
}

impl From<TargetArg> for Module {
    fn from(t: TargetArg) -> Module {
        match t {
            TargetArg::Algebra => Module::Algebra,
            TargetArg::TensorSquare => Module::TensorSquare,
            TargetArg::CenterTensor => Module::CenterTensor,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket of two element literals.
    Bracket {
        #[command(flatten)]
        alg: AlgebraArgs,
        x: String,
        y: String,
    },
    /// Jacobi identity on all generator triples of the window.
    Jacobi {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
    },
    /// Classical Yang-Baxter equation c(r) = 0.
    Cybe {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        r: PathBuf,
    },
    /// Modified Yang-Baxter equation: g.c(r) = 0 for every generator g of the window.
    Mybe {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
        #[arg(long)]
        r: PathBuf,
    },
    /// The cobracket x.r of an element.
    Coboundary {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        r: PathBuf,
        x: String,
    },
    /// Co-Jacobi identity against x.c(r) for every generator of the window.
    Cojacobi {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
        #[arg(long)]
        r: PathBuf,
    },
    /// Derivation identity for a JSON table.
    CheckDerivation {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        derivation: PathBuf,
    },
    /// First cohomology of a fixed degree on a truncated window.
    H1 {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
        /// Degree of the derivations, an integer or half-integer.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        degree: String,
        #[arg(long, value_enum, default_value = "algebra")]
        target: TargetArg,
        /// Also print representatives of the classes.
        #[arg(long)]
        certificates: bool,
    },
    /// Center of the algebra within the window.
    Center {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
    },
    /// Invariant vectors of L or L (x) L against products of the center.
    Invariants {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
        #[arg(long, default_value_t = 2)]
        power: usize,
    },
    /// Tensors moved into the skew tensors by every generator are skew plus central.
    SkewLemma {
        #[command(flatten)]
        alg: AlgebraParamsArgs,
    },
    /// The full regression of numbered checks.
    VerifyPaper {
        #[arg(long, default_value_t = 16)]
        window: i32,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

/// Algebra flags plus a window bound.
#[derive(Debug, Clone, Args)]
pub struct AlgebraParamsArgs {
    #[command(flatten)]
    pub alg: AlgebraArgs,
    /// Bound on doubled degrees: generators with |dd| <= N.
    #[arg(long, default_value_t = 12)]
    pub window: i32,
}

/// A validated job: the parsed command, the algebra and the window.
#[derive(Debug)]
pub struct JobConfig {
    pub command: Command,
    pub params: Option<AlgebraParams>,
    pub window: Option<Window>,
    pub json: bool,
}

impl JobConfig {
    pub fn from_cli(cli: Cli) -> Result<JobConfig> {
        let (params, window) = match &cli.command {
            Command::Bracket { alg, .. }
            | Command::Cybe { alg, .. }
            | Command::Coboundary { alg, .. }
            | Command::CheckDerivation { alg, .. } => (Some(alg.params()?), None),
            Command::Jacobi { alg }
            | Command::Mybe { alg, .. }
            | Command::Cojacobi { alg, .. }
            | Command::H1 { alg, .. }
            | Command::Center { alg }
            | Command::Invariants { alg, .. }
            | Command::SkewLemma { alg } => (Some(alg.alg.params()?), Some(guarded_window(alg.window)?)),
            Command::VerifyPaper { window, .. } => (None, Some(guarded_window(*window)?)),
        };
        Ok(JobConfig { command: cli.command, params, window, json: cli.json })
    }
}

fn guarded_window(n: i32) -> Result<Window> {
    if n <= 0 || n > WINDOW_GUARD {
        return Err(SvlieError::InvalidWindow { lo: -n, hi: n, reason: format!("bound must be in 1..={WINDOW_GUARD}") });
    }
    Ok(Window::symmetric(n))
}

/// What a job printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(passed: bool, stdout: String) -> Outcome {
        Outcome { code: if passed { 0 } else { 1 }, stdout, stderr: String::new() }
    }
}

fn read_tensor(path: &Path) -> Result<Tensor2> {
    let text = std::fs::read_to_string(path).map_err(|e| SvlieError::Malformed(format!("{}: {e}", path.display())))?;
    Ok(parse_tensor2(&text)?)
}

fn emit(json: bool, value: serde_json::Value, text: String) -> String {
    if json {
        let mut v = value;
        v["schema"] = json!(1);
        format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes"))
    } else {
        text
    }
}

/// Runs a validated job.
pub fn run(job: JobConfig) -> Result<Outcome> {
    let json = job.json;
    let p = job.params.clone();
    let p = || p.clone().expect("algebra parameters are validated for this command");
    let w = job.window;
    let w = || w.expect("window is validated for this command");
    let mut warnings = String::new();
    let mut outcome = match job.command {
        Command::Bracket { x, y, .. } => {
            let r = bracket(&parse_element(&x)?, &parse_element(&y)?, &p())?;
            Outcome::new(true, emit(json, json!({"command": "bracket", "result": r.to_string()}), format!("{r}\n")))
        }
        Command::Jacobi { .. } => {
            let report = check_jacobi(&p(), &w());
            let mut text = format!("Jacobi: {} triples, {} violations\n", report.triples_checked, report.violations.len());
            if let Some(v) = report.violations.first() {
                let _ = writeln!(text, "witness: {:?} -> {}", v.triple, v.jacobiator);
            }
            let value = json!({
                "command": "jacobi",
                "triples_checked": report.triples_checked,
                "violations": report.violations.iter().map(|v| json!({
                    "triple": [v.triple[0].to_string(), v.triple[1].to_string(), v.triple[2].to_string()],
                    "jacobiator": v.jacobiator.to_string(),
                })).collect::<Vec<_>>(),
            });
            Outcome::new(report.passed(), emit(json, value, text))
        }
        Command::Cybe { r, .. } => {
            let r = read_tensor(&r)?;
            warn_if_not_skew(&r, &mut warnings);
            let c = ybe_c(&r, &p())?;
            let text = if c.is_zero() { "CYBE: satisfied\n".to_string() } else { format!("CYBE: violated\nc(r) = {c}\n") };
            Outcome::new(c.is_zero(), emit(json, json!({"command": "cybe", "satisfied": c.is_zero(), "c": c.to_string()}), text))
        }
        Command::Mybe { r, .. } => {
            let r = read_tensor(&r)?;
            warn_if_not_skew(&r, &mut warnings);
            let witness = mybe_witness(&r, &p(), &w())?;
            let text = match &witness {
                None => "MYBE: satisfied\n".to_string(),
                Some((g, moved)) => format!("MYBE: violated\n{g} . c(r) = {moved}\n"),
            };
            let value = json!({
                "command": "mybe",
                "satisfied": witness.is_none(),
                "witness": witness.as_ref().map(|(g, m)| json!({"generator": g.to_string(), "image": m.to_string()})),
            });
            Outcome::new(witness.is_none(), emit(json, value, text))
        }
        Command::Coboundary { r, x, .. } => {
            let r = read_tensor(&r)?;
            warn_if_not_skew(&r, &mut warnings);
            let d = coboundary(&r, &parse_element(&x)?, &p())?;
            Outcome::new(true, emit(json, json!({"command": "coboundary", "result": d.to_string()}), format!("{d}\n")))
        }
        Command::Cojacobi { r, .. } => {
            let r = read_tensor(&r)?;
            warn_if_not_skew(&r, &mut warnings);
            let p = p();
            let mut failed = None;
            let gens = w().generators(&p);
            for g in &gens {
                let report = check_cojacobi_identity(&r, &crate::algebra::Element::basis(*g), &p)?;
                if !report.holds() {
                    failed = Some((*g, report));
                    break;
                }
            }
            let text = match &failed {
                None => format!("co-Jacobi identity: holds on {} generators\n", gens.len()),
                Some((g, rep)) => format!("co-Jacobi identity: fails at {g}\nlhs = {}\nrhs = {}\n", rep.lhs, rep.rhs),
            };
            let value = json!({
                "command": "cojacobi",
                "generators": gens.len(),
                "holds": failed.is_none(),
                "witness": failed.as_ref().map(|(g, rep)| json!({"generator": g.to_string(), "lhs": rep.lhs.to_string(), "rhs": rep.rhs.to_string()})),
            });
            Outcome::new(failed.is_none(), emit(json, value, text))
        }
        Command::CheckDerivation { derivation, .. } => {
            let text = std::fs::read_to_string(&derivation)
                .map_err(|e| SvlieError::Malformed(format!("{}: {e}", derivation.display())))?;
            let table = DerivationTable::from_json(&text)?;
            let report = is_derivation(&table, &p())?;
            let mut text = format!("derivation: {} pairs, {} violations\n", report.pairs_checked, report.violations.len());
            if let Some(v) = report.violations.first() {
                let _ = writeln!(text, "witness: ({}, {}) residual {}", v.pair.0, v.pair.1, v.residual);
            }
            let value = json!({
                "command": "check-derivation",
                "pairs_checked": report.pairs_checked,
                "violations": report.violations.iter().map(|v| json!({
                    "pair": [v.pair.0.to_string(), v.pair.1.to_string()],
                    "residual": v.residual.to_string(),
                })).collect::<Vec<_>>(),
            });
            Outcome::new(report.passed(), emit(json, value, text))
        }
        Command::H1 { degree, target, certificates, .. } => {
            let alpha = parse_rational(&degree)
                .and_then(|r| HalfInt::from_rational(&r))
                .ok_or_else(|| SvlieError::Malformed(format!("degree must be an integer or half-integer, got {degree:?}")))?;
            let mut cfg = SolverConfig::new(w().radius());
            cfg.certificates = certificates;
            let report = solve_h1(&p(), target.into(), alpha, &cfg)?;
            let mut text = format!(
                "dim Der = {}, dim Inn = {}, dim H1 = {}  ({} unknowns, {} equations, rank {}, interior {})\n",
                report.dim_der, report.dim_inn, report.dim_h1, report.unknowns, report.equations, report.rank, report.case.interior
            );
            for (i, t) in report.certificates.iter().enumerate() {
                let _ = writeln!(text, "class {}:", i + 1);
                for (g, v) in &t.values {
                    let _ = writeln!(text, "  {g} -> {v}");
                }
            }
            // Solving is a computation, not a check; only a broken inner
            // containment counts as failure.
            Outcome::new(report.inner_contained, emit(json, report.to_json(), text))
        }
        Command::Center { .. } => {
            let center = center_in_window(&p(), &w());
            let items: Vec<String> = center.iter().map(ToString::to_string).collect();
            let text = if items.is_empty() { "center: 0\n".into() } else { format!("center: {}\n", items.join(", ")) };
            Outcome::new(true, emit(json, json!({"command": "center", "basis": items}), text))
        }
        Command::Invariants { power, .. } => {
            if power != 1 && power != 2 {
                return Err(SvlieError::Malformed(format!("--power must be 1 or 2, got {power}")));
            }
            let r = verify_invariants_are_central(&p(), power, &w())?;
            let text = format!(
                "invariants of power {power}: {} found, {} central products; {}\n",
                r.kernel.len(),
                r.expected.len(),
                if r.passed { "equal" } else { "DIFFERENT" }
            );
            let value = json!({
                "command": "invariants",
                "power": power,
                "kernel": r.kernel.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "expected": r.expected.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "passed": r.passed,
            });
            Outcome::new(r.passed, emit(json, value, text))
        }
        Command::SkewLemma { .. } => {
            let r = verify_skew_image_lemma(&p(), &w())?;
            let total: usize = r.dims.values().sum();
            let text = if r.passed() {
                format!("skew-image lemma: holds ({} degrees, total dim {total})\n", r.dims.len())
            } else {
                format!("skew-image lemma: fails in degrees {:?}\n", r.failures)
            };
            let value = json!({"command": "skew-lemma", "dims": r.dims, "failures": r.failures, "passed": r.passed()});
            Outcome::new(r.passed(), emit(json, value, text))
        }
        Command::VerifyPaper { criterion, .. } => {
            let cfg = SuiteConfig { window: w().radius() };
            let results = match criterion {
                Some(id) => vec![run_criterion(id, &cfg)],
                None => run_all(&cfg),
            };
            let mut text = String::new();
            for r in &results {
                let _ = writeln!(text, "[{}] {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail);
            }
            let passed = results.iter().all(|r| r.passed);
            let _ = writeln!(text, "{}/{} passed", results.iter().filter(|r| r.passed).count(), results.len());
            Outcome::new(passed, emit(json, json!({"command": "verify-paper", "criteria": results, "passed": passed}), text))
        }
    };
    outcome.stderr = warnings;
    Ok(outcome)
}

fn warn_if_not_skew(r: &Tensor2, warnings: &mut String) {
    if !is_skew(r) {
        warnings.push_str("warning: r is not skew-symmetric\n");
    }
}

/// Parses arguments, runs the job and returns the exit code. Diagnostics go
/// to `err`, reports to `out`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = JobConfig::from_cli(cli).and_then(run);
    match result {
        Ok(outcome) => {
            let _ = write!(err, "{}", outcome.stderr);
            let _ = write!(out, "{}", outcome.stdout);
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

