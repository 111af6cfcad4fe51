//! The `nsopt` command line: `simplify`, `verify` and `telescope`.

mod args;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{fmt_rat, RatFunc};
use crate::dfield::{depth, GenKind, TowerSummary};
use crate::expr::{evaluate_seq, parse, parse_ratfunc, reinterpret, Compiler, ExprError, ParseError, SumExpr};
use crate::telescope::{telescope_depth_optimal_strict, SearchConfig};

pub use args::{Cli, Command, CommonArgs};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Unsupported(String),
    #[error("verification failed at n = {0}")]
    Verification(u64, Box<Report>),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Verification(..) => EXIT_VERIFY,
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse(p) => CliError::Parse(p),
            other => CliError::Unsupported(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub k: u64,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

/// Result of `simplify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input_text: String,
    pub output_text: String,
    pub lambda: u64,
    pub input_depth: usize,
    pub output_depth: usize,
    pub optimality_certified: bool,
    pub tower_summary: TowerSummary,
    pub verification: Vec<VerificationRow>,
}

/// Settings shared by the subcommands.
#[derive(Clone, Debug)]
pub struct Options {
    pub search: SearchConfig,
    /// Product generators `(alpha, lower bound)` registered before compiling.
    pub products: Vec<(RatFunc, Option<u64>)>,
    pub h_sugar: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { search: SearchConfig::default(), products: Vec::new(), h_sugar: false }
    }
}

impl Options {
    fn compiler(&self) -> Result<Compiler, CliError> {
        let mut c = Compiler::new(self.search.clone());
        for (alpha, lower) in &self.products {
            c.with_product(alpha, *lower)?;
        }
        Ok(c)
    }

    fn print(&self, e: &SumExpr) -> String {
        if self.h_sugar {
            e.print_with_h_sugar()
        } else {
            e.print()
        }
    }
}

/// Parses a `--with-product` value `alpha,r` (or just `alpha`).
pub fn parse_product(s: &str) -> Result<(RatFunc, Option<u64>), CliError> {
    if let Some((a, r)) = s.rsplit_once(',') {
        if let Ok(r) = r.trim().parse::<u64>() {
            return Ok((parse_ratfunc(a)?, Some(r)));
        }
    }
    Ok((parse_ratfunc(s)?, None))
}

/// Compiles, reinterprets and verifies on `lambda..=lambda + range`.
pub fn simplify(text: &str, range: u64, opts: &Options) -> Result<Report, CliError> {
    let e = parse(text)?;
    let mut compiler = opts.compiler()?;
    let res = compiler.compile(&e)?;
    let out = reinterpret(&res.tower, &res.spec, &res.a)?;
    let end = res.lambda + range;
    let lhs = evaluate_seq(&e, end);
    let rhs = evaluate_seq(&out, end);
    let verification: Vec<VerificationRow> = (res.lambda..=end)
        .map(|k| {
            let (l, r) = (&lhs[k as usize], &rhs[k as usize]);
            VerificationRow { k, lhs: fmt_rat(l), rhs: fmt_rat(r), equal: l == r }
        })
        .collect();
    let report = Report {
        input_text: text.trim().to_string(),
        output_text: opts.print(&out),
        lambda: res.lambda,
        input_depth: e.depth(),
        output_depth: depth(&res.tower, &res.a),
        optimality_certified: res.optimality_certified,
        tower_summary: res.tower.summary(),
        verification,
    };
    if let Some(bad) = report.verification.iter().find(|r| !r.equal) {
        return Err(CliError::Verification(bad.k, Box::new(report)));
    }
    Ok(report)
}

/// Outcome of `verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checked: u64,
    /// First `(k, lhs, rhs)` with `lhs != rhs`.
    pub counterexample: Option<(u64, String, String)>,
}

/// Exact comparison of two expressions on `0..=range`.
pub fn verify(lhs: &str, rhs: &str, range: u64) -> Result<VerifyOutcome, CliError> {
    let a = evaluate_seq(&parse(lhs)?, range);
    let b = evaluate_seq(&parse(rhs)?, range);
    let counterexample =
        a.iter().zip(&b).position(|(x, y)| x != y).map(|k| (k as u64, fmt_rat(&a[k]), fmt_rat(&b[k])));
    Ok(VerifyOutcome { checked: range + 1, counterexample })
}

/// Outcome of `telescope`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TelescopeOutcome {
    /// `g` with `g(n+1) - g(n) = f(n+1)` and the generators adjoined for it,
    /// rendered as `name: kind shift_part`.
    Solved { g: String, adjoined: Vec<String> },
    NoSolution { trace: String },
}

/// Solves `sigma(g) - g = f` for the summand `f`, allowing only extensions
/// that keep `g` at the depth of `f`.
pub fn telescope(text: &str, opts: &Options) -> Result<TelescopeOutcome, CliError> {
    let e = parse(text)?;
    let mut compiler = opts.compiler()?;
    let res = compiler.compile(&e)?;
    match telescope_depth_optimal_strict(&res.tower, &res.a, &opts.search).map_err(ExprError::from)? {
        Some(r) => {
            let mut spec = res.spec.clone();
            spec.extend_default(&r.tower);
            let g = reinterpret(&r.tower, &spec, &r.g)?;
            let names = r.tower.names();
            let adjoined = r
                .adjoined
                .iter()
                .enumerate()
                .map(|(i, gen)| {
                    let below = &names[..res.tower.len() + i];
                    let (kind, op) = match gen.kind {
                        GenKind::SigmaStar => ("sum", "+"),
                        GenKind::Pi => ("product", "*"),
                    };
                    format!("{}: {kind}, sigma({}) = {} {op} {}", gen.name, gen.name, gen.name, gen.shift_part.render(below))
                })
                .collect();
            Ok(TelescopeOutcome::Solved { g: opts.print(&g), adjoined })
        }
        None => Ok(TelescopeOutcome::NoSolution {
            trace: format!("no telescoper of depth {} over {} generator(s)", e.depth(), res.tower.len()),
        }),
    }
}

fn read_expr(inline: Option<String>, file: Option<std::path::PathBuf>) -> Result<String, CliError> {
    match (inline, file) {
        (Some(s), _) => Ok(s),
        (None, Some(p)) => std::fs::read_to_string(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        (None, None) => Err(CliError::Io("no expression given".into())),
    }
}

fn render_report(r: &Report, emit_tower: bool) -> String {
    let mut s = String::new();
    s.push_str(&format!("input:     {}\n", r.input_text));
    s.push_str(&format!("output:    {}\n", r.output_text));
    s.push_str(&format!("lambda:    {}\n", r.lambda));
    s.push_str(&format!("depth:     {} -> {}\n", r.input_depth, r.output_depth));
    s.push_str(&format!("certified: {}\n", r.optimality_certified));
    if let (Some(a), Some(b)) = (r.verification.first(), r.verification.last()) {
        s.push_str(&format!("verified:  n = {}..{}\n", a.k, b.k));
    }
    if emit_tower {
        s.push_str("tower:\n");
        for g in &r.tower_summary.generators {
            let op = if g.kind == GenKind::SigmaStar { "+" } else { "*" };
            s.push_str(&format!(
                "  {}: sigma({}) = {} {op} {}  (depth {}{})\n",
                g.name,
                g.name,
                g.name,
                g.shift_part,
                g.depth,
                if g.optimality_certified { "" } else { ", not certified" }
            ));
        }
    }
    s
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            if let CliError::Verification(_, report) = &e {
                let _ = write!(out, "{}", render_report(report, false));
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn options(c: &CommonArgs, h_sugar: bool) -> Result<Options, CliError> {
    let products = c.with_product.iter().map(|s| parse_product(s)).collect::<Result<_, _>>()?;
    let search = SearchConfig {
        max_atom_power: c.max_atom_power,
        max_monomial_degree: c.max_monomial_degree,
        ..SearchConfig::default()
    };
    Ok(Options { search, products, h_sugar })
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match cli.command {
        Command::Simplify { expr, file, verify_range, emit_tower, json, h_sugar, common } => {
            let text = read_expr(expr, file)?;
            let report = simplify(&text, verify_range, &options(&common, h_sugar)?)?;
            if json {
                let s = serde_json::to_string_pretty(&report).expect("report serializes");
                writeln!(out, "{s}").map_err(io)?;
            } else {
                write!(out, "{}", render_report(&report, emit_tower)).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { lhs, rhs, range } => {
            let v = verify(&lhs, &rhs, range)?;
            match v.counterexample {
                None => {
                    writeln!(out, "equal on n = 0..{range}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Some((k, a, b)) => {
                    writeln!(out, "differ at n = {k}: {a} != {b}").map_err(io)?;
                    Ok(EXIT_MISMATCH)
                }
            }
        }
        Command::Telescope { expr, h_sugar, common } => {
            match telescope(&expr, &options(&common, h_sugar)?)? {
                TelescopeOutcome::Solved { g, adjoined } => {
                    writeln!(out, "g = {g}").map_err(io)?;
                    for a in adjoined {
                        writeln!(out, "adjoined {a}").map_err(io)?;
                    }
                }
                TelescopeOutcome::NoSolution { trace } => {
                    writeln!(out, "NO_SOLUTION: {trace}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
