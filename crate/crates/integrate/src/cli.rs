//! Command-line interface.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tower_core::decompose::{decompose, validate, Decomposition, Mode};
use tower_core::elementary::{elementary_integrate, ElementaryResult, LogTerm, Verdict};
use tower_core::{Constant, CoreError, Element, Polynomial, Tower};

use crate::frontend::{parse_element, parse_tower, render, render_polynomial, FrontendError, TowerFile};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MODE: i32 = 3;
pub const EXIT_NON_LOG: i32 = 4;

pub const VERIFY_ENV: &str = "TOWER_INTEGRATE_VERIFY";

#[derive(Debug, Parser)]
#[command(name = "tower-integrate", version, about = "Additive decompositions and elementary integration in primitive towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a tower file and print its classification.
    Check { tower: PathBuf },
    /// Decompose f = a' + g + p.
    Decompose {
        tower: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
        /// Skip re-differentiating the result.
        #[arg(long)]
        no_verify: bool,
    },
    /// Decide elementary integrability and print an antiderivative.
    Integrate {
        tower: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        cases: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Straight,
    Flat,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Straight => Mode::Straight,
            ModeArg::Flat => Mode::Flat,
        }
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: impl std::fmt::Display) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DecompositionJson {
    pub input: String,
    pub antiderivative: String,
    pub simple: String,
    pub remainder: String,
    pub integrable: bool,
    pub mode: &'static str,
}

#[derive(Debug, Serialize)]
pub struct LogJson {
    pub residue: String,
    pub argument: String,
}

#[derive(Debug, Serialize)]
pub struct RootSumJson {
    pub polynomial: String,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Serialize)]
pub struct IntegrationJson {
    pub input: String,
    pub verdict: &'static str,
    pub antiderivative: Option<String>,
    pub field_part: String,
    pub logs: Vec<LogJson>,
    pub root_sums: Vec<RootSumJson>,
    pub certified: bool,
}

fn verification_enabled(no_verify: bool) -> bool {
    !no_verify && std::env::var(VERIFY_ENV).map_or(true, |v| v != "0")
}

fn frontend_exit(e: &FrontendError) -> i32 {
    match e {
        FrontendError::Tower(_) => EXIT_NEGATIVE,
        FrontendError::InLine { source, .. } => frontend_exit(source),
        _ => EXIT_PARSE,
    }
}

fn core_exit(e: &CoreError) -> i32 {
    match e {
        CoreError::ModeIncompatible { .. } => EXIT_MODE,
        CoreError::NonLogTower(_) => EXIT_NON_LOG,
        _ => EXIT_NEGATIVE,
    }
}

fn load_tower(path: &PathBuf) -> Result<(TowerFile, Tower), Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let file = parse_tower(&text).map_err(|e| Outcome::error(frontend_exit(&e), e))?;
    let tower = file.build().map_err(|e| Outcome::error(frontend_exit(&e), e))?;
    Ok((file, tower))
}

/// Loads a tower for computation, refusing towers that fail validation.
fn load_valid_tower(path: &PathBuf) -> Result<(TowerFile, Tower), Outcome> {
    let (file, tower) = load_tower(path)?;
    let violations = validate(&tower);
    if let Some(v) = violations.first() {
        let name = &file.names()[v.index];
        return Err(Outcome::error(EXIT_NEGATIVE, format!("invalid tower: {name}: {v}")));
    }
    Ok((file, tower))
}

pub fn cmd_check(path: &PathBuf) -> Outcome {
    let (file, tower) = match load_tower(path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let classification = tower.classification();
    let violations = validate(&tower);
    let mut out = String::new();
    let names = file.names();
    if violations.is_empty() {
        let _ = writeln!(out, "valid, {classification}");
    } else {
        let _ = writeln!(out, "invalid, {classification}");
        for v in &violations {
            let _ = writeln!(out, "  {}: {v}", names[v.index]);
        }
    }
    Outcome {
        code: if violations.is_empty() { EXIT_OK } else { EXIT_NEGATIVE },
        stdout: out,
        stderr: String::new(),
    }
}

fn decomposition_json(d: &Decomposition, names: &[String]) -> DecompositionJson {
    DecompositionJson {
        input: render(&d.input, names),
        antiderivative: render(&d.antiderivative, names),
        simple: render(&d.simple, names),
        remainder: render(&d.remainder, names),
        integrable: d.is_integrable(),
        mode: d.method.as_str(),
    }
}

pub fn cmd_decompose(path: &PathBuf, expr: &str, mode: Mode, json: bool, no_verify: bool) -> Outcome {
    let (file, tower) = match load_valid_tower(path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let f = match parse_element(expr, &file) {
        Ok(f) => f,
        Err(e) => return Outcome::error(frontend_exit(&e), e),
    };
    let d = match decompose(&tower, &f, mode) {
        Ok(d) => d,
        Err(e) => return Outcome::error(core_exit(&e), e),
    };
    if verification_enabled(no_verify) && !matches!(d.verify(&tower), Ok(true)) {
        return Outcome::error(EXIT_NEGATIVE, "verification failed: a' + g + p differs from the input");
    }
    let view = decomposition_json(&d, &file.names());
    let stdout = if json {
        serde_json::to_string_pretty(&view).expect("serializable") + "\n"
    } else {
        format!(
            "input:          {}\nantiderivative: {}\nsimple:         {}\nremainder:      {}\nintegrable:     {}\nmode:           {}\n",
            view.input, view.antiderivative, view.simple, view.remainder, view.integrable, view.mode
        )
    };
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

fn render_constant(c: &Constant) -> String {
    render(&Element::constant(c.clone()), &[])
}

fn z_polynomial(coeffs: &[Constant]) -> String {
    let p = Polynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (tower_core::Monomial::var(0, k as u32), c.clone())),
    );
    render_polynomial(&p, &["z".to_string()])
}

/// `a + c1*log(v1) + ...`, with root sums written `RootSum(P(z), a/b)`.
pub fn antiderivative_text(result: &ElementaryResult, names: &[String]) -> String {
    let mut out = render(&result.field_part, names);
    let mut first = result.field_part.is_zero();
    for term in &result.logs {
        let (negative, body) = match term {
            LogTerm::Rational { residue, argument } => {
                let magnitude = if residue < &Constant::from_integer(0.into()) { -residue } else { residue.clone() };
                let log = format!("log({})", render(argument, names));
                let body = if magnitude == Constant::from_integer(1.into()) {
                    log
                } else {
                    let c = render_constant(&magnitude);
                    if c.contains('/') {
                        format!("({c})*{log}")
                    } else {
                        format!("{c}*{log}")
                    }
                };
                (residue < &Constant::from_integer(0.into()), body)
            }
            LogTerm::RootSum { polynomial, numerator, denominator, .. } => (
                false,
                format!(
                    "RootSum({}, {})",
                    z_polynomial(polynomial),
                    render(&(numerator / denominator), names)
                ),
            ),
        };
        if first {
            out = if negative { format!("-{body}") } else { body };
            first = false;
        } else {
            let sep = if negative { " - " } else { " + " };
            out = format!("{out}{sep}{body}");
        }
    }
    out
}

fn integration_json(result: &ElementaryResult, names: &[String]) -> IntegrationJson {
    let has_antiderivative = result.verdict != Verdict::NotElementary;
    let mut logs = Vec::new();
    let mut root_sums = Vec::new();
    for term in &result.logs {
        match term {
            LogTerm::Rational { residue, argument } => logs.push(LogJson {
                residue: render_constant(residue),
                argument: render(argument, names),
            }),
            LogTerm::RootSum { polynomial, numerator, denominator, .. } => root_sums.push(RootSumJson {
                polynomial: z_polynomial(polynomial),
                numerator: render(numerator, names),
                denominator: render(denominator, names),
            }),
        }
    }
    IntegrationJson {
        input: render(&result.decomposition.input, names),
        verdict: result.verdict.as_str(),
        antiderivative: has_antiderivative.then(|| antiderivative_text(result, names)),
        field_part: render(&result.field_part, names),
        logs,
        root_sums,
        certified: result.certified,
    }
}

pub fn cmd_integrate(path: &PathBuf, expr: &str, json: bool) -> Outcome {
    let (file, tower) = match load_valid_tower(path) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let names = file.names();
    let f = match parse_element(expr, &file) {
        Ok(f) => f,
        Err(e) => return Outcome::error(frontend_exit(&e), e),
    };
    let result = match elementary_integrate(&tower, &f) {
        Ok(r) => r,
        Err(CoreError::NonLogTower(i)) => {
            // the in-field verdict is still available
            let stdout = match decompose(&tower, &f, Mode::Auto) {
                Ok(d) => format!(
                    "in-field: {}\n",
                    if d.is_integrable() { "integrable" } else { "not integrable" }
                ),
                Err(_) => String::new(),
            };
            return Outcome {
                code: EXIT_NON_LOG,
                stdout,
                stderr: format!(
                    "error: {}: {}\n",
                    names[i],
                    CoreError::NonLogTower(i)
                ),
            };
        }
        Err(e) => return Outcome::error(core_exit(&e), e),
    };
    let all_rational = result.logs.iter().all(|t| t.residue().is_some());
    let must_certify = result.verdict == Verdict::InField || (result.verdict == Verdict::Elementary && all_rational);
    if verification_enabled(false) && must_certify && !result.certified {
        return Outcome::error(EXIT_NEGATIVE, "verification failed: antiderivative does not differentiate to the input");
    }
    let view = integration_json(&result, &names);
    let stdout = if json {
        serde_json::to_string_pretty(&view).expect("serializable") + "\n"
    } else {
        let mut s = format!("verdict:        {}\n", view.verdict);
        if let Some(a) = &view.antiderivative {
            let _ = writeln!(s, "antiderivative: {a}");
        }
        s
    };
    Outcome { code: EXIT_OK, stdout, stderr: String::new() }
}

pub fn cmd_selftest(config: selftest::Config) -> Outcome {
    let report = selftest::run(config);
    Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_NEGATIVE },
        stdout: report.to_string(),
        stderr: String::new(),
    }
}

pub fn run_cli(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check { tower } => cmd_check(&tower),
        Command::Decompose { tower, expr, mode, json, no_verify } => {
            cmd_decompose(&tower, &expr, mode.into(), json, no_verify)
        }
        Command::Integrate { tower, expr, json } => cmd_integrate(&tower, &expr, json),
        Command::Selftest { seed, cases, inject_fault } => {
            cmd_selftest(selftest::Config { seed, cases, inject_fault })
        }
    }
}

/// Parses arguments and runs; argument errors become exit code 2.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}
